#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace amcp {

// Constant-pool-level view of one .class file: the class's own internal
// name and every other class it mentions in the pool. Array descriptors are
// reduced to their element class; primitive elements and the class itself
// are excluded.
struct ClassFileSummary {
    std::string class_name;
    std::vector<std::string> referenced_classes; // sorted, unique
    std::uint16_t major_version = 0;
    std::uint16_t minor_version = 0;
};

// Walks magic, version, the constant pool (long/double entries occupy two
// slots), access flags and this_class. Every read is bounds-checked; bad
// input raises Error("not a class file"), Error("malformed constant pool")
// or Error("unsupported constant tag N"), never an out-of-bounds read.
ClassFileSummary parse_class_file(std::span<const std::uint8_t> bytes);

} // namespace amcp

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace amcp {

struct ZipEntry {
    std::string name;
    std::vector<std::uint8_t> data;
};

bool looks_like_zip(const std::filesystem::path& path);

// Reads all file entries of a ZIP/JAR archive (central directory walk;
// stored and deflate methods, inflated via zlib). Directory entries are
// skipped. Throws Error on a damaged archive.
std::vector<ZipEntry> read_zip(const std::filesystem::path& path);

} // namespace amcp

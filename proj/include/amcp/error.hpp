#pragma once

#include <stdexcept>
#include <string>

namespace amcp {

// Input/contract violations (bad files, bad arguments, malformed bytes).
// Anything else escaping the library is an internal error.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace amcp

#pragma once

#include <stdexcept>
#include <string>

namespace aklt {

// Bad inputs: unknown names, malformed files, out-of-range parameters.
// The CLI maps this to exit code 2.
struct validation_error : std::runtime_error {
    explicit validation_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A computation was refused because it exceeds a resource guard
// (Hilbert-space dimension, vertex count, ...). CLI exit code 3.
struct guard_error : std::runtime_error {
    explicit guard_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace aklt

#pragma once

#include <stdexcept>
#include <string>

namespace jones {

// Thrown when an exact computation would exceed its configured size budget
// (bracket state enumeration, Temperley-Lieb strand count, circuit width).
struct limit_error : std::runtime_error {
    explicit limit_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace jones

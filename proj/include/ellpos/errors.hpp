#pragma once

#include <stdexcept>
#include <string>

namespace ellpos {

// Thrown when a computation would exceed a configured resource guard
// (interval size, concrete group order, enumeration budget).  Callers can
// retry with a larger guard; std::invalid_argument is reserved for inputs
// that are wrong rather than merely expensive.
class resource_error : public std::runtime_error {
public:
    explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace ellpos

#pragma once

#include <stdexcept>
#include <string>

namespace chromathresh {

// Thrown when an enumeration, coloring space or search budget exceeds its
// configured cap. Distinct from invalid arguments: the request is legal,
// just too large. CLI maps this to exit code 3.
class ResourceError : public std::runtime_error {
public:
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

// A broken internal invariant (a bug). CLI maps this to exit code 4.
class InternalError : public std::logic_error {
public:
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

} // namespace chromathresh

#pragma once

#include <stdexcept>
#include <string>

namespace levyflux {

// Base class for everything thrown by the library on top of std::invalid_argument
// (which is reserved for plain precondition violations like lam < 0).
struct error : std::runtime_error {
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// Model fails its invariants, or an operation is asked of a model that cannot
// support it (e.g. a density request on an atom-bearing law).
struct validation_error : error {
    explicit validation_error(const std::string& msg) : error(msg) {}
};

struct no_density_error : validation_error {
    explicit no_density_error(const std::string& msg) : validation_error(msg) {}
};

// Quadrature failed its error estimate, or an iterative solver did not converge.
struct numerical_error : error {
    explicit numerical_error(const std::string& msg) : error(msg) {}
};

} // namespace levyflux

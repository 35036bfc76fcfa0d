#pragma once

#include <stdexcept>
#include <string>

namespace polyslice {

// Input vector is identically zero: no direction can be formed.
struct ZeroVectorError : std::invalid_argument {
    explicit ZeroVectorError(const std::string& what) : std::invalid_argument(what) {}
};

// Input contains NaN or infinity.
struct NonFiniteError : std::invalid_argument {
    explicit NonFiniteError(const std::string& what) : std::invalid_argument(what) {}
};

// Operation called with a direction of the wrong dimension.
struct DimensionMismatchError : std::invalid_argument {
    explicit DimensionMismatchError(const std::string& what) : std::invalid_argument(what) {}
};

// Argument outside the mathematical domain of the operation.
struct DomainError : std::domain_error {
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// Argument is inside the domain but the integral converges too slowly
// to be evaluated honestly at the requested tolerance.
struct SlowConvergenceError : std::domain_error {
    explicit SlowConvergenceError(const std::string& what) : std::domain_error(what) {}
};

// Panel budget exhausted before the rigorous tail bound fell below tolerance.
struct TolNotReachedError : std::runtime_error {
    explicit TolNotReachedError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace polyslice

#pragma once

#include <stdexcept>
#include <string>

namespace fockbridge {

/// Raised when an argument violates a documented precondition or invariant.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Projection of a state onto a symmetry sector produced the null vector,
/// e.g. two fermions placed in the same mode.
class NullProjectionError : public DomainError {
public:
    using DomainError::DomainError;
};

namespace detail {

inline void require(bool condition, const std::string& message) {
    if (!condition) throw DomainError(message);
}

}  // namespace detail
}  // namespace fockbridge

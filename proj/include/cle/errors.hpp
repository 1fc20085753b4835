#pragma once

#include <stdexcept>
#include <string>

namespace cle {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A bracketing search failed to isolate a unique sign change.
class BracketError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Analytic residue disagrees with its numerical limit estimate.
class ResidueMismatch : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Internal consistency check failed.
class InvariantError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace cle

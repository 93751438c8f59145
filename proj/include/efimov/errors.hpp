#pragma once

#include <stdexcept>
#include <string>

namespace efimov {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument is outside the mathematical domain of the operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A root bracket does not straddle a sign change.
class InvalidBracket : public Error {
public:
    using Error::Error;
};

/// The coupling is too weak to support a two-body bound state.
class NoBoundState : public Error {
public:
    using Error::Error;
};

/// No attractive-branch root exists for the requested configuration.
class NoRoot : public Error {
public:
    using Error::Error;
};

/// The mass ratio lies at or below the threshold for Efimov states.
class SubcriticalMassRatio : public Error {
public:
    SubcriticalMassRatio(const std::string& what, double critical_ratio)
        : Error(what), critical_ratio_(critical_ratio) {}

    double critical_ratio() const noexcept { return critical_ratio_; }

private:
    double critical_ratio_;
};

}  // namespace efimov

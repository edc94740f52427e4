#pragma once

#include <stdexcept>
#include <string>

namespace weakwave {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input: dimension mismatches, zero vectors, non-Hermitian
// matrices, invalid grids or configuration values.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

// Inputs are well formed but the requested physical quantity is undefined.
class DomainError : public Error {
public:
    using Error::Error;
};

// |<f|i>|^2 at or below the orthogonality threshold.
class OrthogonalPostselection : public DomainError {
public:
    using DomainError::DomainError;
};

// Pointer amplitude vanishes where a ratio with it is required.
class NodePoint : public DomainError {
public:
    using DomainError::DomainError;
};

class ZeroPostselectedIntensity : public DomainError {
public:
    using DomainError::DomainError;
};

class ZeroDensity : public DomainError {
public:
    using DomainError::DomainError;
};

// The weak-value component that multiplies epsilon is zero.
class DegenerateAmplifier : public DomainError {
public:
    using DomainError::DomainError;
};

class SmallOverlap : public DomainError {
public:
    using DomainError::DomainError;
};

class NonCenteredProfile : public DomainError {
public:
    using DomainError::DomainError;
};

}  // namespace weakwave

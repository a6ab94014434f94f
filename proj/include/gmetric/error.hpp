#pragma once

#include <stdexcept>
#include <string>

namespace gmetric {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Grid functions that do not share a domain length and node count.
class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// An argument outside the mathematical domain of an operation (λ ≤ 0, t < 0, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Invalid configuration: bad quadrature/grid pairing, unknown variant, bad tag.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Operation called without the state it needs (e.g. Cauchy check on a thinned trace).
class PreconditionError : public Error {
public:
    using Error::Error;
};

}  // namespace gmetric

#pragma once

#include <stdexcept>
#include <string>

namespace ppgeo {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid configuration: unknown identifiers, malformed bodies, bad grid sizes.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Operands live on different grids or bodies.
class StructuralError : public Error {
public:
    using Error::Error;
};

/// A +inf sample sits at a node with positive quadrature weight.
class SingularIntegrandError : public Error {
public:
    using Error::Error;
};

/// Operation needs finite duals; truncate first.
class RequiresTruncationError : public Error {
public:
    using Error::Error;
};

/// Discrete Hessian produced more negative mass than rounding can explain.
class NumericalError : public Error {
public:
    using Error::Error;
};

class PolarizationError : public Error {
public:
    using Error::Error;
};

class SymmetryError : public Error {
public:
    using Error::Error;
};

class ConvexityViolation : public Error {
public:
    using Error::Error;
};

class NormalizationError : public Error {
public:
    using Error::Error;
};

} // namespace ppgeo

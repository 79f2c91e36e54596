#pragma once

#include <stdexcept>
#include <string>

namespace pdem {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the open domain of a function (boundary of a potential,
/// negative z for a half-line mass, vanishing hypergeometric denominator).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Polynomial degree above PolyEvalSettings::max_degree.
class DegreeError : public Error {
public:
    using Error::Error;
};

class RangeError : public Error {
public:
    using Error::Error;
};

/// Evaluation at a point where the mass vanishes.
class SingularError : public Error {
public:
    using Error::Error;
};

/// Strict-mode parameter relation violated.
class ConstraintError : public Error {
public:
    using Error::Error;
};

class UnsupportedError : public Error {
public:
    using Error::Error;
};

class QuadratureError : public Error {
public:
    using Error::Error;
};

class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// Malformed or unknown entry in a run configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace pdem

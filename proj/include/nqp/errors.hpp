#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nqp {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input (bad level set, asymmetric Q, ...).
class InvalidInstance : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public InvalidInstance {
public:
    using InvalidInstance::InvalidInstance;
};

/// An assignment component is not a member of the level set.
class NotInLevelSet : public InvalidInstance {
public:
    using InvalidInstance::InvalidInstance;
};

/// Exact-integer coefficients too large to evaluate without overflow.
class OverflowError : public Error {
public:
    using Error::Error;
};

class BudgetExceeded : public Error {
public:
    using Error::Error;
};

/// A reduced-instance optimum contained a level outside {s1, s2}.
class NotBinary : public Error {
public:
    using Error::Error;
};

/// An internal soundness check failed.
class InvariantViolation : public Error {
public:
    using Error::Error;
};

class SingularSystem : public Error {
public:
    using Error::Error;
};

class ParseError : public InvalidInstance {
public:
    ParseError(std::size_t line, const std::string& what)
        : InvalidInstance("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace nqp

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rot4 {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed input text (expression, profile spec, bicomplex literal).
/// Carries the byte offset of the first offending character.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t offset)
        : Error(msg + " (offset " + std::to_string(offset) + ")"), offset_(offset) {}

    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

/// Expression evaluation hit a domain violation (ln of non-positive,
/// division by zero, non-finite result). Carries the parameter value.
class EvalError : public Error {
public:
    EvalError(const std::string& msg, double s)
        : Error(msg + " (at s=" + std::to_string(s) + ")"), s_(s) {}

    double at() const { return s_; }

private:
    double s_;
};

/// A profile family was given parameters violating its constraints.
class FamilyError : public Error {
public:
    using Error::Error;
};

/// Arclength reparametrization failed (degenerate speed).
class ReparamError : public Error {
public:
    using Error::Error;
};

/// Frame fails the orthonormality precondition.
class FrameError : public Error {
public:
    using Error::Error;
};

/// Geometric degeneracy: vanishing radius, singular metric.
class DegenerateError : public Error {
public:
    using Error::Error;
};

/// Parameters outside the declared (s, t) ranges or profile domain.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Bicomplex inversion of a zero divisor.
class ZeroDivisorError : public Error {
public:
    using Error::Error;
};

/// Invalid CLI / analysis configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace rot4

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace unitsecant {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed expression or curve literal.
class ParseError : public Error {
public:
    ParseError(std::size_t offset, std::string expected);

    /// Byte offset into the parsed text where the problem was detected.
    std::size_t offset() const noexcept { return offset_; }
    const std::string& expected() const noexcept { return expected_; }

private:
    std::size_t offset_;
    std::string expected_;
};

/// A function was evaluated outside its real domain, or produced a non-finite value.
class DomainError : public Error {
public:
    DomainError(std::string function, double argument);

    const std::string& function() const noexcept { return function_; }
    double argument() const noexcept { return argument_; }

private:
    std::string function_;
    double argument_;
};

/// Forward-mode derivative requested where a node has no derivative.
class NotDifferentiable : public Error {
public:
    NotDifferentiable(std::string node, double t);

    const std::string& node() const noexcept { return node_; }
    double parameter() const noexcept { return t_; }

private:
    std::string node_;
    double t_;
};

/// The probe point coincides numerically with the anchor point.
class ZeroChord : public Error {
public:
    ZeroChord(double t0, double t);
};

/// All derivative components vanish at the requested parameter.
class ZeroDerivativeVector : public Error {
public:
    explicit ZeroDerivativeVector(double t0);
};

/// A tangent line was requested from a report whose verdict is not Tangent.
class NoTangent : public Error {
public:
    using Error::Error;
};

}  // namespace unitsecant

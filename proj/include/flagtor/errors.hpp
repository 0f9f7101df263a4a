/**
 * @file errors.hpp
 * @brief Exception types raised by the flagtor library.
 *
 * Every failure mode that a caller may want to distinguish has its own type.
 * The CLI maps InputError subclasses to exit code 2 and PreconditionError
 * subclasses to exit code 3.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace flagtor {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or out-of-range user input.
class InputError : public Error {
public:
    using Error::Error;
};

/// A well-formed input that violates an operation's precondition.
class PreconditionError : public Error {
public:
    using Error::Error;
};

class GhostVertex : public InputError {
public:
    explicit GhostVertex(int vertex)
        : InputError("vertex " + std::to_string(vertex) + " is in no facet (ghost vertex)"),
          vertex_(vertex) {}
    int vertex() const noexcept { return vertex_; }

private:
    int vertex_;
};

class VertexOutOfRange : public InputError {
public:
    using InputError::InputError;
};

class UnknownName : public InputError {
public:
    explicit UnknownName(const std::string& name)
        : InputError("unknown corpus name: " + name) {}
};

class NonPrimeModulus : public InputError {
public:
    explicit NonPrimeModulus(unsigned long p)
        : InputError("modulus " + std::to_string(p) + " is not prime") {}
};

class NotAFace : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

class NotFlag : public PreconditionError {
public:
    NotFlag()
        : PreconditionError("operation requires a flag complex (all missing faces are edges)") {}
};

class BoundExceeded : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

class NonUnitConstantTerm : public PreconditionError {
public:
    NonUnitConstantTerm() : PreconditionError("series must have constant term 1") {}
};

/// Raised when a homotopy rank comes out fractional or negative.
class IntegralityViolation : public Error {
public:
    using Error::Error;
};

}  // namespace flagtor

#pragma once

#include <stdexcept>
#include <string>

namespace modal {

/// Process exit codes used by the command line front end.
enum class ExitCode : int {
    success = 0,
    input_error = 2,
    numerical_ambiguity = 3,
    verification_failure = 4,
};

class Error : public std::runtime_error {
public:
    Error(const std::string& what, ExitCode code) : std::runtime_error(what), code_(code) {}

    ExitCode exit_code() const noexcept { return code_; }
    virtual const char* kind() const noexcept { return "error"; }

private:
    ExitCode code_;
};

/// Caller broke a precondition (shape mismatch, index out of range, wrong algebra).
class UsageError : public Error {
public:
    explicit UsageError(const std::string& what) : Error(what, ExitCode::input_error) {}
    const char* kind() const noexcept override { return "usage"; }
};

/// Malformed external input.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error(what, ExitCode::input_error) {}
    const char* kind() const noexcept override { return "parse"; }
};

/// Operation is undefined for the given value (e.g. nil index of zero).
class UndefinedInputError : public Error {
public:
    explicit UndefinedInputError(const std::string& what) : Error(what, ExitCode::input_error) {}
    const char* kind() const noexcept override { return "undefined_input"; }
};

/// Multilinear data does not vanish on the complement summand, so it cannot be lifted.
class AdmissibilityError : public Error {
public:
    explicit AdmissibilityError(const std::string& what) : Error(what, ExitCode::input_error) {}
    const char* kind() const noexcept override { return "admissibility"; }
};

/// Root clusters too close to tell apart, or eigenvalues not exactly representable.
class AmbiguityError : public Error {
public:
    explicit AmbiguityError(const std::string& what) : Error(what, ExitCode::numerical_ambiguity) {}
    const char* kind() const noexcept override { return "ambiguity"; }
};

/// Quadrature failed to reach the requested accuracy.
class AccuracyError : public Error {
public:
    AccuracyError(const std::string& what, double achieved)
        : Error(what, ExitCode::numerical_ambiguity), achieved_(achieved) {}
    double achieved() const noexcept { return achieved_; }
    const char* kind() const noexcept override { return "accuracy"; }

private:
    double achieved_;
};

/// The input is not in the image of the structure operator within the degree bound.
class NotRepresentableError : public Error {
public:
    NotRepresentableError(const std::string& what, double residual)
        : Error(what, ExitCode::verification_failure), residual_(residual) {}
    double residual() const noexcept { return residual_; }
    const char* kind() const noexcept override { return "not_representable"; }

private:
    double residual_;
};

/// v violates the generalized Laplace system, so no w exists.
class IntegrabilityError : public Error {
public:
    IntegrabilityError(const std::string& what, double residual)
        : Error(what, ExitCode::verification_failure), residual_(residual) {}
    double residual() const noexcept { return residual_; }
    const char* kind() const noexcept override { return "integrability"; }

private:
    double residual_;
};

}  // namespace modal

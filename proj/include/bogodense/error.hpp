#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bogodense {

enum class ErrorKind {
    InvalidParameter,
    UnsupportedRegime,
    Convergence,
    DegenerateMode,
    EigenSolver,
    InsufficientModes,
    IntegratorFailure,
    InapplicableLaw,
    ProtocolInapplicable,
    TruncationOverflow,
    Parse,
    Io,
};

// Stable machine-readable name, used as the "category" field of CLI errors.
std::string_view category_name(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }
    std::string_view category() const noexcept { return category_name(kind_); }

private:
    ErrorKind kind_;
};

/// Raised when an iterative solver stops at max_iter; carries the last residual.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& message, double residual, int iterations)
        : Error(ErrorKind::Convergence, message), residual_(residual), iterations_(iterations) {}

    double residual() const noexcept { return residual_; }
    int iterations() const noexcept { return iterations_; }

private:
    double residual_;
    int iterations_;
};

}  // namespace bogodense

#include "bogodense/error.hpp"

namespace bogodense {

std::string_view category_name(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::InvalidParameter: return "invalid_parameter";
        case ErrorKind::UnsupportedRegime: return "unsupported_regime";
        case ErrorKind::Convergence: return "convergence";
        case ErrorKind::DegenerateMode: return "degenerate_mode";
        case ErrorKind::EigenSolver: return "eigensolver";
        case ErrorKind::InsufficientModes: return "insufficient_modes";
        case ErrorKind::IntegratorFailure: return "integrator_failure";
        case ErrorKind::InapplicableLaw: return "inapplicable_law";
        case ErrorKind::ProtocolInapplicable: return "protocol_inapplicable";
        case ErrorKind::TruncationOverflow: return "truncation_overflow";
        case ErrorKind::Parse: return "parse";
        case ErrorKind::Io: return "io";
    }
    return "unknown";
}

}  // namespace bogodense

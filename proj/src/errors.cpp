#include "dsmg/errors.hpp"

namespace dsmg {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::DomainError: return "DomainError";
        case ErrorKind::FactorizationFailure: return "FactorizationFailure";
        case ErrorKind::DegenerateResidual: return "DegenerateResidual";
        case ErrorKind::UnattainableDiscrepancy: return "UnattainableDiscrepancy";
        case ErrorKind::PreconditionViolated: return "PreconditionViolated";
        case ErrorKind::IterationBudgetExceeded: return "IterationBudgetExceeded";
        case ErrorKind::BracketFailure: return "BracketFailure";
        case ErrorKind::UnstableStep: return "UnstableStep";
        case ErrorKind::ComplexResidue: return "ComplexResidue";
        case ErrorKind::MalformedFile: return "MalformedFile";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

void raise(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace dsmg

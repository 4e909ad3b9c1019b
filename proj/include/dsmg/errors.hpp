#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dsmg {

enum class ErrorKind {
    DimensionMismatch,
    DomainError,
    FactorizationFailure,
    DegenerateResidual,
    UnattainableDiscrepancy,
    PreconditionViolated,
    IterationBudgetExceeded,
    BracketFailure,
    UnstableStep,
    ComplexResidue,
    MalformedFile,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries one of the ErrorKind variants.
/// The CLI maps kinds to exit codes and prints the variant name.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what);

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] void raise(ErrorKind kind, const std::string& what);

}  // namespace dsmg

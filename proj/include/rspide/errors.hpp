#pragma once

#include <stdexcept>
#include <string>

namespace rspide {

/// Failure taxonomy shared by all modules. Every throw site carries one of
/// these kinds so callers (CLI, tests, bindings) can react without parsing
/// message text.
enum class ErrorKind {
    NegativeOffDiagonal,
    RowSumNonZero,
    NonFiniteResult,
    DomainError,
    IndexOutOfRange,
    DiagonalQuery,
    QuadratureFailure,
    UnsupportedBasisForMeasure,
    SingularSystem,
    BarrierOutsideDomain,
    InversionNotConverged,
    IllConditioned,
    ParseError,
    ValidationError,
    ZeroReference,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

  private:
    ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& message) {
    throw Error(kind, message);
}

}  // namespace rspide

#include "rspide/errors.hpp"

namespace rspide {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::NegativeOffDiagonal: return "NegativeOffDiagonal";
        case ErrorKind::RowSumNonZero: return "RowSumNonZero";
        case ErrorKind::NonFiniteResult: return "NonFiniteResult";
        case ErrorKind::DomainError: return "DomainError";
        case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorKind::DiagonalQuery: return "DiagonalQuery";
        case ErrorKind::QuadratureFailure: return "QuadratureFailure";
        case ErrorKind::UnsupportedBasisForMeasure: return "UnsupportedBasisForMeasure";
        case ErrorKind::SingularSystem: return "SingularSystem";
        case ErrorKind::BarrierOutsideDomain: return "BarrierOutsideDomain";
        case ErrorKind::InversionNotConverged: return "InversionNotConverged";
        case ErrorKind::IllConditioned: return "IllConditioned";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::ValidationError: return "ValidationError";
        case ErrorKind::ZeroReference: return "ZeroReference";
    }
    return "UnknownError";
}

}  // namespace rspide

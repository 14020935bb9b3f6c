#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace abg {

/// Every failure raised by the library carries one of these codes. The names
/// double as the stable identifiers used in reports.
enum class ErrorCode {
    DegenerateSimplex,
    NotAComplex,
    DuplicateVertexCoordinates,
    InvalidInput,
    SimplexNotInComplex,
    BarycenterCollision,
    NotPure,
    DimensionOutOfRange,
    NotOppositeVertices,
    QuotientNotSimplicial,
    ParamMismatch,
    IndexOutOfRange,
    SkeletonNotFull,
    BoundariesDiffer,
    NotPseudomanifold,
    DegreeOutOfRange,
    AxisOutOfRange,
    NotACocycle,
    RingMismatch,
    DegreeOverflow,
    EndpointsOnSurface,
    PerturbationExhausted,
    AmbiguousLift,
    ParseError,
    FormatVersionUnsupported,
    IoError,
};

constexpr std::string_view to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::DegenerateSimplex: return "DegenerateSimplex";
    case ErrorCode::NotAComplex: return "NotAComplex";
    case ErrorCode::DuplicateVertexCoordinates: return "DuplicateVertexCoordinates";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::SimplexNotInComplex: return "SimplexNotInComplex";
    case ErrorCode::BarycenterCollision: return "BarycenterCollision";
    case ErrorCode::NotPure: return "NotPure";
    case ErrorCode::DimensionOutOfRange: return "DimensionOutOfRange";
    case ErrorCode::NotOppositeVertices: return "NotOppositeVertices";
    case ErrorCode::QuotientNotSimplicial: return "QuotientNotSimplicial";
    case ErrorCode::ParamMismatch: return "ParamMismatch";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::SkeletonNotFull: return "SkeletonNotFull";
    case ErrorCode::BoundariesDiffer: return "BoundariesDiffer";
    case ErrorCode::NotPseudomanifold: return "NotPseudomanifold";
    case ErrorCode::DegreeOutOfRange: return "DegreeOutOfRange";
    case ErrorCode::AxisOutOfRange: return "AxisOutOfRange";
    case ErrorCode::NotACocycle: return "NotACocycle";
    case ErrorCode::RingMismatch: return "RingMismatch";
    case ErrorCode::DegreeOverflow: return "DegreeOverflow";
    case ErrorCode::EndpointsOnSurface: return "EndpointsOnSurface";
    case ErrorCode::PerturbationExhausted: return "PerturbationExhausted";
    case ErrorCode::AmbiguousLift: return "AmbiguousLift";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::FormatVersionUnsupported: return "FormatVersionUnsupported";
    case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
    {
    }

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what)
{
    throw Error(code, what);
}

} // namespace abg

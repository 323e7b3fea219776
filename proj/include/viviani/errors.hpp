#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace viviani {

enum class ErrorCode {
    // geometry_core
    NonFinite,
    ZeroDimension,
    DimensionMismatch,
    ZeroNormal,
    NonUnitNormal,
    EmptySet,
    InvalidTolerance,
    // polytope
    InvalidPolygon,
    ClosureViolation,
    NonPositiveLength,
    UnknownSolid,
    DomainError,
    InvalidPolytope,
    // fermat / duality
    EmptyPointSet,
    CoincidesWithAnchor,
    NotAFermatPoint,
    NotViviani,
    MixedSigns,
    SpokeViolation,
    // io
    SyntaxError,
    SchemaError,
    NormTolerance,
    WrongDocumentKind,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::ZeroDimension: return "ZeroDimension";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ZeroNormal: return "ZeroNormal";
    case ErrorCode::NonUnitNormal: return "NonUnitNormal";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::InvalidTolerance: return "InvalidTolerance";
    case ErrorCode::InvalidPolygon: return "InvalidPolygon";
    case ErrorCode::ClosureViolation: return "ClosureViolation";
    case ErrorCode::NonPositiveLength: return "NonPositiveLength";
    case ErrorCode::UnknownSolid: return "UnknownSolid";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::InvalidPolytope: return "InvalidPolytope";
    case ErrorCode::EmptyPointSet: return "EmptyPointSet";
    case ErrorCode::CoincidesWithAnchor: return "CoincidesWithAnchor";
    case ErrorCode::NotAFermatPoint: return "NotAFermatPoint";
    case ErrorCode::NotViviani: return "NotViviani";
    case ErrorCode::MixedSigns: return "MixedSigns";
    case ErrorCode::SpokeViolation: return "SpokeViolation";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::NormTolerance: return "NormTolerance";
    case ErrorCode::WrongDocumentKind: return "WrongDocumentKind";
    }
    return "Unknown";
}

// Single exception type for the library; callers branch on code().
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace viviani

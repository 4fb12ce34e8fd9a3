#pragma once

#include <stdexcept>
#include <string>

namespace toric {

enum class ErrorKind {
    ZeroVector,
    DimensionMismatch,
    NotSurjective,
    InvalidFan,
    NotInSupport,
    NotPrimitive,
    NotUnimodular,
    NotQCartier,
    NotBasePointFree,
    CoefficientOutOfRange,
    NotSimplicial,
    AlphaOutOfRange,
    ConeNotMapped,
    FinitePart,
    NotDominant,
    RayNotCovered,
    NotATargetRay,
    DirectionOutsideImage,
    NotRelativelyTrivial,
    InfiniteIndex,
    WrongRayCount,
    NonPositiveRelation,
    NotMFS,
    UnknownFamily,
    InvalidConfig,
    Parse,
};

const char* error_kind_name(ErrorKind kind);

/// Base of every error raised by the library.  Mathematical failures and
/// malformed documents share the type; `kind()` tells them apart.
class ToricError : public std::runtime_error
{
public:
    ToricError(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message), kind_(kind)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace toric

#include "toric/numeric.hpp"

#include "toric/error.hpp"

#include <cctype>

namespace toric {

namespace {

Integer parse_integer(std::string_view text, std::string_view whole)
{
    std::size_t pos = 0;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+'))
        ++pos;
    if (pos == text.size())
        throw ToricError(ErrorKind::Parse, "malformed rational '" + std::string(whole) + "'");
    for (std::size_t i = pos; i < text.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(text[i])))
            throw ToricError(ErrorKind::Parse, "malformed rational '" + std::string(whole) + "'");
    std::string digits(text);
    if (digits.front() == '+')
        digits.erase(0, 1);
    return Integer(digits);
}

}  // namespace

Rational parse_rational(std::string_view text)
{
    auto slash = text.find('/');
    if (slash == std::string_view::npos)
        return Rational(parse_integer(text, text));
    Integer num = parse_integer(text.substr(0, slash), text);
    Integer den = parse_integer(text.substr(slash + 1), text);
    if (den == 0)
        throw ToricError(ErrorKind::Parse, "zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
}

std::string format_rational(const Rational& value)
{
    if (is_integral(value))
        return numerator_of(value).str();
    return numerator_of(value).str() + "/" + denominator_of(value).str();
}

Integer floor_of(const Rational& q)
{
    Integer n = numerator_of(q), d = denominator_of(q);
    Integer f = n / d;
    if (f * d != n && n < 0)
        f -= 1;
    return f;
}

Integer ceil_of(const Rational& q)
{
    return -floor_of(-q);
}

Integer gcd(const Integer& a, const Integer& b)
{
    return boost::multiprecision::gcd(a, b);
}

Integer lcm(const Integer& a, const Integer& b)
{
    if (a == 0 || b == 0)
        return 0;
    return abs_value(a / gcd(a, b) * b);
}

const char* error_kind_name(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotSurjective: return "NotSurjective";
    case ErrorKind::InvalidFan: return "InvalidFan";
    case ErrorKind::NotInSupport: return "NotInSupport";
    case ErrorKind::NotPrimitive: return "NotPrimitive";
    case ErrorKind::NotUnimodular: return "NotUnimodular";
    case ErrorKind::NotQCartier: return "NotQCartier";
    case ErrorKind::NotBasePointFree: return "NotBasePointFree";
    case ErrorKind::CoefficientOutOfRange: return "CoefficientOutOfRange";
    case ErrorKind::NotSimplicial: return "NotSimplicial";
    case ErrorKind::AlphaOutOfRange: return "AlphaOutOfRange";
    case ErrorKind::ConeNotMapped: return "ConeNotMapped";
    case ErrorKind::FinitePart: return "FinitePart";
    case ErrorKind::NotDominant: return "NotDominant";
    case ErrorKind::RayNotCovered: return "RayNotCovered";
    case ErrorKind::NotATargetRay: return "NotATargetRay";
    case ErrorKind::DirectionOutsideImage: return "DirectionOutsideImage";
    case ErrorKind::NotRelativelyTrivial: return "NotRelativelyTrivial";
    case ErrorKind::InfiniteIndex: return "InfiniteIndex";
    case ErrorKind::WrongRayCount: return "WrongRayCount";
    case ErrorKind::NonPositiveRelation: return "NonPositiveRelation";
    case ErrorKind::NotMFS: return "NotMFS";
    case ErrorKind::UnknownFamily: return "UnknownFamily";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::Parse: return "Parse";
    }
    return "Unknown";
}

}  // namespace toric

#pragma once

#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "toric/catalog.hpp"
#include "toric/cover.hpp"
#include "toric/fibration.hpp"
#include "toric/pair.hpp"

namespace toric::io {

using Json = nlohmann::json;

/// Reads and parses a JSON file.  I/O and syntax problems raise Parse errors.
Json read_json_file(const std::string& path);
Json parse_json(const std::string& text);

Json to_json(const LatticeVector& v);
Json to_json(const IntegerMatrix& m);  ///< list of rows
Json to_json(const Rational& q);       ///< "p/q" string
Json to_json(const RationalVector& v);

LatticeVector vector_from_json(const Json& j);
IntegerMatrix matrix_from_json(const Json& j);
Rational rational_from_json(const Json& j);

/// {"rank", "rays", "max_cones"}.  The fan is not validated.
Json fan_to_json(const Fan& f);
Fan fan_from_json(const Json& j);

/// {"coeffs": {"ray index": "p/q"}}, zero entries omitted.
Json divisor_to_json(const InvariantDivisor& d);
InvariantDivisor divisor_from_json(const Json& j, std::size_t rays);

/// {"fan": ..., "boundary": {"coeffs": ..., "generic": [{"b", "class"}]}}.
Json pair_to_json(const ToricPair& p);
/// Accepts a pair document or a bare fan document (then B = 0).  Validates.
ToricPair pair_from_json(const Json& j);

/// {"source", "target", "pi"}.
Json contraction_to_json(const ToricContraction& f);
/// `source` may be omitted when a fan is supplied.
ToricContraction contraction_from_json(const Json& j, const std::optional<Fan>& source = std::nullopt);

/// Pair document with an embedded "contraction" entry, or a contraction
/// document (then B = 0).
struct PairWithContraction
{
    ToricPair pair;
    ToricContraction contraction;
};
Json instance_to_json(const ToricPair& p, const ToricContraction& f);
PairWithContraction instance_from_json(const Json& j);

Json to_json(const FanValidation& v);
Json to_json(const FanFlags& f);
Json to_json(const MldReport& r);
Json to_json(const LctResult& r);
Json to_json(const AdjunctionData& a);
Json to_json(const BaseInfimum& b);
Json to_json(const FiberData& d);
Json to_json(const PrCoverReport& r);
Json to_json(const CoverData& c);
Json to_json(const MultiplicityTable& t);
Json to_json(const DeltaTable& t);

}  // namespace toric::io

#include "toric/io.hpp"

#include <fstream>
#include <sstream>

namespace toric::io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw ToricError(ErrorKind::Parse, what); }

const Json& field(const Json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key))
        bad(std::string("missing field '") + key + "'");
    return j.at(key);
}

Integer integer_from_json(const Json& j)
{
    if (j.is_number_integer())
        return Integer(j.get<long long>());
    if (j.is_string()) {
        try {
            return Integer(j.get<std::string>());
        } catch (const std::exception&) {
        }
    }
    bad("expected an integer, got " + j.dump());
}

Json integer_to_json(const Integer& x)
{
    if (x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max())
        return x.convert_to<long long>();
    return x.str();
}

}  // namespace

Json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        bad("cannot open '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_json(buffer.str());
}

Json parse_json(const std::string& text)
{
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        bad(std::string("invalid JSON: ") + e.what());
    }
}

Json to_json(const LatticeVector& v)
{
    Json out = Json::array();
    for (const auto& x : v)
        out.push_back(integer_to_json(x));
    return out;
}

Json to_json(const IntegerMatrix& m)
{
    Json out = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r)
        out.push_back(to_json(m.row(r)));
    return out;
}

Json to_json(const Rational& q) { return format_rational(q); }

Json to_json(const RationalVector& v)
{
    Json out = Json::array();
    for (const auto& x : v)
        out.push_back(to_json(x));
    return out;
}

LatticeVector vector_from_json(const Json& j)
{
    if (!j.is_array())
        bad("expected an integer list, got " + j.dump());
    std::vector<Integer> coords;
    for (const auto& x : j)
        coords.push_back(integer_from_json(x));
    return LatticeVector(std::move(coords));
}

IntegerMatrix matrix_from_json(const Json& j)
{
    if (!j.is_array())
        bad("expected a list of rows, got " + j.dump());
    std::vector<LatticeVector> rows;
    for (const auto& r : j)
        rows.push_back(vector_from_json(r));
    std::size_t cols = rows.empty() ? 0 : rows.front().rank();
    for (const auto& r : rows)
        if (r.rank() != cols)
            bad("matrix rows have different lengths");
    return IntegerMatrix::from_rows(rows, cols);
}

Rational rational_from_json(const Json& j)
{
    if (j.is_number_integer())
        return Rational(j.get<long long>());
    if (j.is_string())
        return parse_rational(j.get<std::string>());
    bad("expected a rational \"p/q\", got " + j.dump());
}

// ---------------------------------------------------------------- documents

Json fan_to_json(const Fan& f)
{
    Json rays = Json::array();
    for (const auto& r : f.rays())
        rays.push_back(to_json(r));
    Json cones = Json::array();
    for (const auto& c : f.max_cones())
        cones.push_back(c);
    return {{"rank", f.rank()}, {"rays", rays}, {"max_cones", cones}};
}

Fan fan_from_json(const Json& j)
{
    const Json& rank = field(j, "rank");
    if (!rank.is_number_integer() || rank.get<long long>() < 0)
        bad("rank must be a non-negative integer");
    std::size_t d = rank.get<std::size_t>();
    std::vector<LatticeVector> rays;
    for (const auto& r : field(j, "rays")) {
        rays.push_back(vector_from_json(r));
        if (rays.back().rank() != d)
            bad("ray " + r.dump() + " does not have rank " + std::to_string(d));
    }
    std::vector<RayIndexSet> cones;
    for (const auto& c : field(j, "max_cones")) {
        if (!c.is_array())
            bad("cones are lists of ray indices");
        RayIndexSet cone;
        for (const auto& i : c) {
            if (!i.is_number_integer() || i.get<long long>() < 0)
                bad("ray index " + i.dump() + " is not a non-negative integer");
            cone.push_back(i.get<std::size_t>());
        }
        cones.push_back(std::move(cone));
    }
    return Fan(d, std::move(rays), std::move(cones));
}

Json divisor_to_json(const InvariantDivisor& d)
{
    Json coeffs = Json::object();
    for (std::size_t i = 0; i < d.size(); ++i)
        if (d[i] != 0)
            coeffs[std::to_string(i)] = to_json(d[i]);
    return {{"coeffs", coeffs}};
}

InvariantDivisor divisor_from_json(const Json& j, std::size_t rays)
{
    InvariantDivisor d = InvariantDivisor::zero(rays);
    const Json& coeffs = field(j, "coeffs");
    if (!coeffs.is_object())
        bad("coeffs must map ray indices to rationals");
    for (const auto& [key, value] : coeffs.items()) {
        std::size_t idx = 0;
        try {
            std::size_t used = 0;
            idx = std::stoul(key, &used);
            if (used != key.size())
                throw std::invalid_argument(key);
        } catch (const std::exception&) {
            bad("bad ray index '" + key + "'");
        }
        if (idx >= rays)
            bad("ray index " + key + " out of range");
        d.coeffs[idx] = rational_from_json(value);
    }
    return d;
}

Json pair_to_json(const ToricPair& p)
{
    Json boundary = divisor_to_json(p.boundary().invariant);
    Json generic = Json::array();
    for (const auto& g : p.boundary().generic)
        generic.push_back({{"b", to_json(g.b)}, {"class", divisor_to_json(g.divisor_class)}});
    boundary["generic"] = generic;
    return {{"fan", fan_to_json(p.fan())}, {"boundary", boundary}};
}

ToricPair pair_from_json(const Json& j)
{
    if (j.is_object() && j.contains("rank"))
        return build_pair(require_valid(fan_from_json(j)));
    Fan f = require_valid(fan_from_json(field(j, "fan")));
    BoundaryData b{InvariantDivisor::zero(f.ray_count()), {}};
    if (j.contains("boundary")) {
        const Json& bj = j.at("boundary");
        if (bj.contains("coeffs"))
            b.invariant = divisor_from_json(bj, f.ray_count());
        if (bj.contains("generic"))
            for (const auto& g : bj.at("generic"))
                b.generic.push_back({rational_from_json(field(g, "b")), divisor_from_json(field(g, "class"), f.ray_count())});
    }
    return build_pair(f, b);
}

Json contraction_to_json(const ToricContraction& f)
{
    return {{"source", fan_to_json(f.source())}, {"target", fan_to_json(f.target())}, {"pi", to_json(f.pi())}};
}

ToricContraction contraction_from_json(const Json& j, const std::optional<Fan>& source)
{
    Fan src = j.contains("source") ? fan_from_json(j.at("source")) : source ? *source : (bad("contraction has no source"), Fan());
    Fan tgt = fan_from_json(field(j, "target"));
    IntegerMatrix pi = matrix_from_json(field(j, "pi"));
    // A map to the point has no rows; its width is the source rank.
    if (pi.rows() == 0)
        pi = IntegerMatrix(0, src.rank());
    return validate_contraction(src, tgt, pi);
}

Json instance_to_json(const ToricPair& p, const ToricContraction& f)
{
    Json doc = pair_to_json(p);
    Json c = contraction_to_json(f);
    c.erase("source");
    doc["contraction"] = c;
    return doc;
}

PairWithContraction instance_from_json(const Json& j)
{
    if (j.is_object() && j.contains("contraction")) {
        ToricPair p = pair_from_json(j);
        return {p, contraction_from_json(j.at("contraction"), p.fan())};
    }
    if (j.is_object() && j.contains("source") && j.contains("pi")) {
        ToricContraction f = contraction_from_json(j);
        return {build_pair(f.source()), f};
    }
    bad("expected a pair document with a \"contraction\" entry or a contraction document");
}

// ---------------------------------------------------------------- reports

Json to_json(const FanValidation& v)
{
    Json out = {{"valid", v.valid}};
    if (!v.valid) {
        out["axiom"] = v.axiom;
        out["message"] = v.message;
        if (v.cones)
            out["cones"] = {v.cones->first, v.cones->second};
    }
    return out;
}

Json to_json(const FanFlags& f)
{
    return {{"simplicial", f.simplicial}, {"smooth", f.smooth}, {"complete", f.complete}};
}

Json to_json(const MldReport& r)
{
    Json out = {{"mld_toric", to_json(r.mld_toric)}, {"witness", to_json(r.witness)}, {"klt", r.klt},
                {"epsilon", to_json(r.epsilon)}, {"eps_lc", r.eps_lc}, {"equivariant_only", r.equivariant_only}};
    if (r.generic_bound)
        out["generic_bound"] = to_json(*r.generic_bound);
    return out;
}

Json to_json(const LctResult& r)
{
    return {{"direction", to_json(r.direction)}, {"threshold", to_json(r.threshold)}, {"witness", to_json(r.witness)},
            {"multiplicity", integer_to_json(r.multiplicity)}};
}

Json to_json(const AdjunctionData& a)
{
    Json witnesses = Json::array();
    for (const auto& w : a.witnesses)
        witnesses.push_back(to_json(w));
    Json out = {{"discriminant", to_json(a.discriminant.coeffs)},
                {"moduli_class", to_json(a.moduli_class)},
                {"descended_class", to_json(a.descended_class)},
                {"witnesses", witnesses}};
    if (a.moduli_degree)
        out["moduli_degree"] = to_json(*a.moduli_degree);
    return out;
}

Json to_json(const BaseInfimum& b)
{
    return {{"delta", to_json(b.delta)}, {"witness", to_json(b.witness)},
            {"oracle_delta", to_json(b.oracle_delta)}, {"oracle_witness", to_json(b.oracle_witness)},
            {"exact_agrees_with_oracle", b.exact_agrees_with_oracle}};
}

Json to_json(const FiberData& d)
{
    Json out = {{"kernel", to_json(d.kernel)}, {"fiber", fan_to_json(d.fiber)}, {"source_rays", d.source_rays}};
    if (d.split)
        out["split"] = {{"section", to_json(d.split->section)}, {"basis", to_json(d.split->basis)}};
    return out;
}

Json to_json(const CoverData& c)
{
    Json sub = Json::array();
    for (const auto& b : c.sublattice.basis())
        sub.push_back(to_json(b));
    Json rays = Json::array();
    for (const auto& r : c.ambient_rays)
        rays.push_back(to_json(r));
    Json lengths = Json::array();
    for (const auto& k : c.ray_lengths)
        lengths.push_back(integer_to_json(k));
    return {{"degree", integer_to_json(c.degree)}, {"sublattice", sub}, {"fan", fan_to_json(c.fan)},
            {"ambient_rays", rays}, {"ray_lengths", lengths}};
}

Json to_json(const PrCoverReport& r)
{
    Json q = Json::array();
    for (const auto& x : r.q)
        q.push_back(integer_to_json(x));
    Json sub = Json::array();
    for (const auto& b : r.cover.sublattice.basis())
        sub.push_back(to_json(b));
    return {{"degree", integer_to_json(r.cover.degree)},
            {"sublattice", sub},
            {"fiber_is_projective_space", r.fiber_is_projective_space},
            {"q", q},
            {"psi_isomorphism", r.psi_isomorphism},
            {"cover_simplicial", r.cover_simplicial},
            {"fiber_index", integer_to_json(r.fiber_index)}};
}

Json to_json(const MultiplicityTable& t)
{
    Json rows = Json::array();
    for (const auto& r : t.rows)
        rows.push_back({{"instance", r.name}, {"mld", to_json(r.mld)},
                        {"max_multiplicity", integer_to_json(r.max_multiplicity)}, {"qualifies", r.qualifies}});
    Json out = {{"rows", rows}};
    out["max_qualifying"] = t.max_qualifying ? integer_to_json(*t.max_qualifying) : Json(nullptr);
    return out;
}

Json to_json(const DeltaTable& t)
{
    Json rows = Json::array();
    for (const auto& r : t.rows)
        rows.push_back({{"instance", r.name}, {"alpha", to_json(r.alpha)},
                        {"delta", r.delta ? to_json(*r.delta) : Json(nullptr)}, {"eps_lc", r.eps_lc},
                        {"oracle_agrees", r.oracle_agrees}});
    Json out = {{"rows", rows}};
    out["min_delta"] = t.min_delta ? to_json(*t.min_delta) : Json(nullptr);
    return out;
}

}  // namespace toric::io

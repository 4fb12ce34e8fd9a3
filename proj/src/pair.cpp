#include "toric/pair.hpp"

#include <algorithm>

#include "enumerate.hpp"
#include "toric/fibration.hpp"

namespace toric {

InvariantDivisor InvariantDivisor::scaled(const Rational& s) const
{
    InvariantDivisor out = *this;
    for (auto& c : out.coeffs)
        c *= s;
    return out;
}

Rational SupportFunction::operator()(const Fan& fan, const LatticeVector& x) const
{
    auto cone = fan.cone_containing(x);
    if (!cone)
        throw ToricError(ErrorKind::NotInSupport, x.str() + " is not in the support of the fan");
    return on_cone(*cone, x);
}

namespace {

linalg::Matrix cone_rows(const Fan& fan, std::size_t cone)
{
    linalg::Matrix rows;
    for (auto r : fan.max_cones()[cone])
        rows.push_back(fan.ray(r).to_rational());
    return rows;
}

RationalVector cone_values(const Fan& fan, std::size_t cone, const RationalVector& ray_values)
{
    RationalVector out;
    for (auto r : fan.max_cones()[cone])
        out.push_back(ray_values.at(r));
    return out;
}

// Smallest m >= 1 such that m * values admits an integral covector on the
// cone; nullopt when no rational covector exists.
std::optional<Integer> cone_cartier_multiplier(const Fan& fan, std::size_t cone, const RationalVector& ray_values)
{
    const auto& idx = fan.max_cones()[cone];
    if (idx.empty())
        return Integer(1);
    std::vector<LatticeVector> rows;
    for (auto r : idx)
        rows.push_back(fan.ray(r));
    IntegerMatrix g = IntegerMatrix::from_rows(rows, fan.rank());
    SmithForm snf = snf_decompose(g);
    RationalVector b = cone_values(fan, cone, ray_values);
    RationalVector ub(b.size());
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            ub[i] += snf.U(i, j) * b[j];
    auto diag = snf.diagonal();
    Integer m = 1;
    for (std::size_t i = 0; i < ub.size(); ++i) {
        if (i < diag.size() && diag[i] != 0)
            m = lcm(m, denominator_of(ub[i] / diag[i]));
        else if (ub[i] != 0)
            return std::nullopt;
    }
    return m;
}

RationalVector negated(const RationalVector& v)
{
    RationalVector out = v;
    for (auto& x : out)
        x = -x;
    return out;
}

// Every bend across the given walls is >= 0 (or > 0 when strict).
bool bends_positive(const Fan& fan, const SupportFunction& sf, const RationalVector& values,
                    const std::vector<Wall>& tested, bool strict)
{
    for (const auto& w : tested) {
        for (auto [from, to] : {std::pair{w.left, w.right}, std::pair{w.right, w.left}}) {
            for (auto r : fan.max_cones()[to]) {
                if (std::binary_search(w.rays.begin(), w.rays.end(), r))
                    continue;
                Rational bend = sf.on_cone(from, fan.ray(r)) - values[r];
                if (bend < 0 || (strict && bend == 0))
                    return false;
            }
        }
    }
    return true;
}

void require_simplicial(const Fan& fan)
{
    for (std::size_t i = 0; i < fan.cone_count(); ++i)
        if (!fan.cone(i).is_simplicial())
            throw ToricError(ErrorKind::NotSimplicial, "cone " + std::to_string(i) + " is not simplicial");
}

}  // namespace

SupportFunction support_function_from_values(const Fan& fan, const RationalVector& ray_values)
{
    if (ray_values.size() != fan.ray_count())
        throw ToricError(ErrorKind::DimensionMismatch, "one value per ray expected");
    std::vector<RationalVector> covectors;
    for (std::size_t i = 0; i < fan.cone_count(); ++i) {
        auto sol = linalg::solve(cone_rows(fan, i), cone_values(fan, i, ray_values), fan.rank());
        if (!sol) {
            std::string gens;
            for (auto r : fan.max_cones()[i])
                gens += fan.ray(r).str();
            throw ToricError(ErrorKind::NotQCartier, "no linear function on cone " + std::to_string(i) + " " + gens +
                                                         " matches the ray values");
        }
        covectors.push_back(std::move(*sol));
    }
    return SupportFunction(std::move(covectors));
}

SupportFunction support_function(const Fan& fan, const InvariantDivisor& d)
{
    return support_function_from_values(fan, negated(d.coeffs));
}

bool is_cartier(const Fan& fan, const InvariantDivisor& d)
{
    auto m = cartier_index(fan, d);
    return m && *m == 1;
}

std::optional<Integer> cartier_index(const Fan& fan, const InvariantDivisor& d)
{
    if (d.size() != fan.ray_count())
        throw ToricError(ErrorKind::DimensionMismatch, "one coefficient per ray expected");
    Integer m = 1;
    for (std::size_t i = 0; i < fan.cone_count(); ++i) {
        auto mi = cone_cartier_multiplier(fan, i, d.coeffs);
        if (!mi)
            return std::nullopt;
        m = lcm(m, *mi);
    }
    return m;
}

RationalVector ToricPair::log_canonical_class() const
{
    RationalVector out(fan_.ray_count());
    for (std::size_t v = 0; v < out.size(); ++v)
        out[v] = boundary_.invariant[v] - 1;
    for (const auto& g : boundary_.generic)
        for (std::size_t v = 0; v < out.size(); ++v)
            out[v] += g.b * g.divisor_class[v];
    return out;
}

ToricPair build_pair(const Fan& f, const BoundaryData& b)
{
    if (b.invariant.size() != f.ray_count())
        throw ToricError(ErrorKind::DimensionMismatch, "boundary needs one coefficient per ray");
    for (std::size_t v = 0; v < f.ray_count(); ++v)
        if (b.invariant[v] > 1)
            throw ToricError(ErrorKind::CoefficientOutOfRange,
                             "coefficient " + format_rational(b.invariant[v]) + " at ray " + f.ray(v).str() + " exceeds 1");
    for (const auto& g : b.generic) {
        if (g.b < 0 || g.b > 1)
            throw ToricError(ErrorKind::CoefficientOutOfRange,
                             "generic member coefficient " + format_rational(g.b) + " outside [0,1]");
        if (g.divisor_class.size() != f.ray_count())
            throw ToricError(ErrorKind::DimensionMismatch, "generic member class needs one coefficient per ray");
        if (!is_cartier(f, g.divisor_class))
            throw ToricError(ErrorKind::NotBasePointFree, "generic member class is not Cartier");
        SupportFunction sf = support_function(f, g.divisor_class);
        if (!bends_positive(f, sf, negated(g.divisor_class.coeffs), walls(f), false))
            throw ToricError(ErrorKind::NotBasePointFree, "generic member class is not nef");
    }

    ToricPair p;
    p.fan_ = f;
    p.boundary_ = b;
    RationalVector values(f.ray_count());
    for (std::size_t v = 0; v < values.size(); ++v) {
        values[v] = 1 - b.invariant[v];
        if (b.invariant[v] < 0)
            p.sub_pair_ = true;
    }
    p.a_ = support_function_from_values(f, values);
    return p;
}

Rational log_discrepancy_at(const ToricPair& p, const LatticeVector& u)
{
    if (u.rank() != p.fan().rank())
        throw ToricError(ErrorKind::DimensionMismatch, "valuation vector has the wrong rank");
    return p.a(u);
}

// ---------------------------------------------------------------- mld

MldReport mld_and_eps_check(const ToricPair& p, const Rational& eps)
{
    const Fan& fan = p.fan();
    MldReport report;
    report.epsilon = eps;
    report.equivariant_only = p.has_generic_members();
    for (const auto& g : p.boundary().generic) {
        Rational bound = 1 - g.b;
        if (!report.generic_bound || bound < *report.generic_bound)
            report.generic_bound = bound;
    }
    if (fan.ray_count() == 0)
        throw ToricError(ErrorKind::NotInSupport, "fan has no nonzero lattice points");

    std::vector<Rational> ray_a(fan.ray_count());
    Rational level = 0;
    for (std::size_t v = 0; v < fan.ray_count(); ++v) {
        ray_a[v] = 1 - p.boundary().invariant[v];
        if (v == 0 || ray_a[v] < level)
            level = ray_a[v];
    }

    if (level == 0) {
        report.klt = false;
        report.mld_toric = 0;
        std::optional<LatticeVector> best;
        for (std::size_t v = 0; v < fan.ray_count(); ++v)
            if (ray_a[v] == 0 && (!best || fan.ray(v) < *best))
                best = fan.ray(v);
        report.witness = *best;
    } else {
        std::optional<Rational> best;
        LatticeVector witness;
        for (std::size_t c = 0; c < fan.cone_count(); ++c) {
            const Cone& cone = fan.cone(c);
            if (cone.is_trivial())
                continue;
            // The sublevel polytope {a <= level} of the cone has vertices 0 and level/a(v) * v.
            std::vector<RationalVector> vertices;
            for (auto r : fan.max_cones()[c]) {
                RationalVector v = fan.ray(r).to_rational();
                for (auto& x : v)
                    x *= level / ray_a[r];
                vertices.push_back(std::move(v));
            }
            std::vector<Integer> lo, hi;
            detail::bounding_box(vertices, fan.rank(), lo, hi);
            detail::for_each_lattice_point(lo, hi, [&](const LatticeVector& x) {
                if (x.is_zero() || !cone.contains(x))
                    return;
                Rational value = p.a_on_cone(c, x);
                if (value > level)
                    return;
                if (!best || value < *best || (value == *best && x < witness)) {
                    best = value;
                    witness = x;
                }
            });
        }
        report.mld_toric = *best;
        report.witness = witness;
    }

    Rational overall = report.mld_toric;
    if (report.generic_bound && *report.generic_bound < overall)
        overall = *report.generic_bound;
    report.eps_lc = overall >= eps;
    return report;
}

std::optional<LatticeVector> exceptional_point_below(const ToricPair& p, const Rational& level)
{
    const Fan& fan = p.fan();
    std::optional<LatticeVector> best;
    auto offer = [&](const LatticeVector& x) {
        if (!best || x < *best)
            best = x;
    };
    for (std::size_t c = 0; c < fan.cone_count(); ++c) {
        const Cone& cone = fan.cone(c);
        if (cone.is_trivial())
            continue;
        std::vector<RationalVector> vertices;
        bool bounded = true;
        for (auto r : fan.max_cones()[c]) {
            Rational ar = p.a_on_cone(c, fan.ray(r));
            if (ar == 0) {
                offer(fan.ray(r) * Integer(2));
                bounded = false;
                continue;
            }
            RationalVector v = fan.ray(r).to_rational();
            for (auto& x : v)
                x *= level / ar;
            vertices.push_back(std::move(v));
        }
        if (!bounded)
            continue;
        std::vector<Integer> lo, hi;
        detail::bounding_box(vertices, fan.rank(), lo, hi);
        detail::for_each_lattice_point(lo, hi, [&](const LatticeVector& x) {
            if (x.is_zero() || !cone.contains(x) || fan.ray_index(x))
                return;
            if (p.a_on_cone(c, x) <= level)
                offer(x);
        });
    }
    return best;
}

bool is_terminal(const ToricPair& p)
{
    return !exceptional_point_below(p, Rational(1)).has_value();
}

// ---------------------------------------------------------------- positivity

std::vector<Wall> contracted_walls(const Fan& fan, const ToricContraction& f)
{
    std::vector<Wall> out;
    for (const auto& w : walls(fan)) {
        std::vector<LatticeVector> points;
        for (auto side : {w.left, w.right})
            for (auto r : fan.max_cones()[side])
                points.push_back(fan.ray(r));
        if (f.target_cone_of(points))
            out.push_back(w);
    }
    return out;
}

bool positivity_check(const ToricPair& p, const InvariantDivisor& d, Positivity mode, const ToricContraction* relative_to)
{
    const Fan& fan = p.fan();
    require_simplicial(fan);
    SupportFunction sf = support_function(fan, d);
    std::vector<Wall> tested = relative_to ? contracted_walls(fan, *relative_to) : walls(fan);
    return bends_positive(fan, sf, negated(d.coeffs), tested, mode == Positivity::ample);
}

bool relative_picard_rank_one(const ToricPair& p, const ToricContraction& f)
{
    const Fan& fan = p.fan();
    require_simplicial(fan);
    linalg::Matrix classes;
    for (const auto& w : contracted_walls(fan, f)) {
        RayIndexSet involved = fan.max_cones()[w.left];
        for (auto r : fan.max_cones()[w.right])
            if (!std::binary_search(involved.begin(), involved.end(), r))
                involved.push_back(r);
        linalg::Matrix columns(fan.rank(), RationalVector(involved.size()));
        for (std::size_t j = 0; j < involved.size(); ++j)
            for (std::size_t i = 0; i < fan.rank(); ++i)
                columns[i][j] = fan.ray(involved[j])[i];
        auto relation = linalg::nullspace(columns, involved.size());
        if (relation.size() != 1)
            continue;
        RationalVector curve(fan.ray_count());
        for (std::size_t j = 0; j < involved.size(); ++j)
            curve[involved[j]] = relation[0][j];
        classes.push_back(std::move(curve));
    }
    return linalg::rank(classes, fan.ray_count()) == 1;
}

BoundaryData average_boundary(const BoundaryData& b, const Fan& delta_fan, const Rational& alpha)
{
    if (alpha < 0 || alpha > 1)
        throw ToricError(ErrorKind::AlphaOutOfRange, "alpha " + format_rational(alpha) + " outside [0,1]");
    if (b.invariant.size() != delta_fan.ray_count())
        throw ToricError(ErrorKind::DimensionMismatch, "boundary does not match the fan");
    BoundaryData out;
    out.invariant.coeffs.resize(delta_fan.ray_count());
    for (std::size_t v = 0; v < delta_fan.ray_count(); ++v)
        out.invariant.coeffs[v] = alpha * b.invariant[v] + (1 - alpha);
    for (const auto& g : b.generic)
        if (alpha * g.b != 0)
            out.generic.push_back({alpha * g.b, g.divisor_class});
    return out;
}

// ---------------------------------------------------------------- class group

ClassGroup::ClassGroup(const Fan& fan) : rays_(fan.ray_count())
{
    linalg::Matrix principal(fan.rank(), RationalVector(fan.ray_count()));
    for (std::size_t i = 0; i < fan.rank(); ++i)
        for (std::size_t v = 0; v < fan.ray_count(); ++v)
            principal[i][v] = fan.ray(v)[i];
    principal_ = linalg::rref(std::move(principal), fan.ray_count());
}

RationalVector ClassGroup::reduce(const RationalVector& divisor) const
{
    if (divisor.size() != rays_)
        throw ToricError(ErrorKind::DimensionMismatch, "class vector needs one entry per ray");
    return linalg::reduce_modulo(principal_, divisor);
}

}  // namespace toric

#include "toric/fan.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "toric/linalg.hpp"

namespace toric {

Fan::Fan(std::size_t rank, std::vector<LatticeVector> rays, std::vector<RayIndexSet> max_cones)
    : rank_(rank), rays_(std::move(rays)), cones_(std::move(max_cones))
{
    for (const auto& r : rays_)
        if (r.rank() != rank_)
            throw ToricError(ErrorKind::DimensionMismatch, "ray " + r.str() + " does not have rank " + std::to_string(rank_));
    for (auto& c : cones_) {
        std::sort(c.begin(), c.end());
        c.erase(std::unique(c.begin(), c.end()), c.end());
        std::vector<LatticeVector> gens;
        for (auto i : c) {
            if (i >= rays_.size())
                throw ToricError(ErrorKind::InvalidFan, "cone refers to missing ray " + std::to_string(i));
            gens.push_back(rays_[i]);
        }
        for (const auto& g : gens)
            if (g.is_zero())
                throw ToricError(ErrorKind::InvalidFan, "zero ray in a cone");
        cone_objects_.emplace_back(rank_, gens);
    }
}

std::optional<std::size_t> Fan::ray_index(const LatticeVector& v) const
{
    auto it = std::find(rays_.begin(), rays_.end(), v);
    if (it == rays_.end())
        return std::nullopt;
    return static_cast<std::size_t>(it - rays_.begin());
}

RayIndexSet Fan::face_rays(std::size_t cone_index, const std::vector<std::size_t>& face) const
{
    const Cone& c = cone_objects_.at(cone_index);
    RayIndexSet out;
    for (auto g : face) {
        const auto& gen = c.generators().at(g);
        for (auto r : cones_.at(cone_index))
            if (primitive_part(rays_[r]).primitive == gen) {
                out.push_back(r);
                break;
            }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<RayIndexSet> Fan::all_cones() const
{
    std::set<RayIndexSet> found;
    for (std::size_t i = 0; i < cones_.size(); ++i)
        for (const auto& face : cone_objects_[i].faces())
            found.insert(face_rays(i, face));
    return {found.begin(), found.end()};
}

std::optional<std::size_t> Fan::cone_containing(const LatticeVector& x) const
{
    for (std::size_t i = 0; i < cone_objects_.size(); ++i)
        if (cone_objects_[i].contains(x))
            return i;
    return std::nullopt;
}

std::optional<std::size_t> Fan::cone_containing(const RationalVector& x) const
{
    for (std::size_t i = 0; i < cone_objects_.size(); ++i)
        if (cone_objects_[i].contains(x))
            return i;
    return std::nullopt;
}

// ---------------------------------------------------------------- validation

FanValidation validate_fan(const Fan& f)
{
    auto fail = [](std::string axiom, std::string message, std::optional<std::pair<std::size_t, std::size_t>> pair = {}) {
        return FanValidation{false, std::move(axiom), std::move(message), pair};
    };

    std::set<LatticeVector> seen;
    for (std::size_t i = 0; i < f.ray_count(); ++i) {
        const auto& r = f.ray(i);
        if (!r.is_primitive())
            return fail("primitive rays", "ray " + std::to_string(i) + " " + r.str() + " is not primitive");
        if (!seen.insert(r).second)
            return fail("distinct rays", "ray " + std::to_string(i) + " " + r.str() + " is listed twice");
    }
    std::vector<bool> used(f.ray_count(), false);
    for (const auto& c : f.max_cones())
        for (auto i : c)
            used[i] = true;
    for (std::size_t i = 0; i < used.size(); ++i)
        if (!used[i])
            return fail("rays are cones", "ray " + std::to_string(i) + " " + f.ray(i).str() + " lies in no cone");

    for (std::size_t i = 0; i < f.cone_count(); ++i) {
        const Cone& c = f.cone(i);
        if (!c.is_pointed())
            return fail("strong convexity", "cone " + std::to_string(i) + " contains a line", std::make_pair(i, i));
        for (std::size_t g = 0; g < c.generators().size(); ++g)
            if (!c.is_extremal(g))
                return fail("extremal generators",
                            "generator " + c.generators()[g].str() + " of cone " + std::to_string(i) + " is not extremal",
                            std::make_pair(i, i));
    }

    for (std::size_t i = 0; i < f.cone_count(); ++i)
        for (std::size_t j = i + 1; j < f.cone_count(); ++j) {
            Cone meet = f.cone(i).intersect(f.cone(j));
            if (!f.cone(i).has_face(meet) || !f.cone(j).has_face(meet))
                return fail("face intersection",
                            "cones " + std::to_string(i) + " and " + std::to_string(j) +
                                " meet in a cone that is not a face of both",
                            std::make_pair(i, j));
        }
    return {};
}

const Fan& require_valid(const Fan& f)
{
    FanValidation v = validate_fan(f);
    if (!v.valid)
        throw ToricError(ErrorKind::InvalidFan, v.axiom + ": " + v.message);
    return f;
}

// ---------------------------------------------------------------- classification

namespace {

std::map<RayIndexSet, std::vector<std::size_t>> facet_incidence(const Fan& f)
{
    std::map<RayIndexSet, std::vector<std::size_t>> incidence;
    for (std::size_t i = 0; i < f.cone_count(); ++i) {
        const Cone& c = f.cone(i);
        if (c.dim() != f.rank())
            continue;
        for (std::size_t k = 0; k < c.facet_normals().size(); ++k)
            incidence[f.face_rays(i, c.facet_generators(k))].push_back(i);
    }
    return incidence;
}

}  // namespace

std::vector<Wall> walls(const Fan& f)
{
    std::vector<Wall> out;
    for (const auto& [rays, cones] : facet_incidence(f))
        if (cones.size() == 2)
            out.push_back({rays, cones[0], cones[1]});
    return out;
}

FanFlags classify_fan(const Fan& f)
{
    FanFlags flags;
    flags.simplicial = true;
    for (std::size_t i = 0; i < f.cone_count(); ++i)
        if (!f.cone(i).is_simplicial())
            flags.simplicial = false;

    flags.smooth = flags.simplicial;
    for (std::size_t i = 0; i < f.cone_count() && flags.smooth; ++i) {
        const auto& gens = f.cone(i).generators();
        if (gens.empty())
            continue;
        SmithForm snf = snf_decompose(IntegerMatrix::from_columns(gens, f.rank()));
        for (const auto& d : snf.diagonal())
            if (d != 1)
                flags.smooth = false;
    }

    bool pure = f.cone_count() > 0;
    for (std::size_t i = 0; i < f.cone_count(); ++i)
        if (f.cone(i).dim() != f.rank())
            pure = false;
    if (!pure)
        return flags;

    auto incidence = facet_incidence(f);
    for (const auto& [rays, cones] : incidence)
        if (cones.size() != 2)
            return flags;

    // Wall-connectivity of the maximal cones.
    std::vector<std::size_t> parent(f.cone_count());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& [rays, cones] : incidence)
        parent[find(cones[0])] = find(cones[1]);
    std::size_t root = find(0);
    for (std::size_t i = 1; i < f.cone_count(); ++i)
        if (find(i) != root)
            return flags;
    flags.complete = true;
    return flags;
}

// ---------------------------------------------------------------- star subdivision

Fan star_subdivide(const Fan& f, const LatticeVector& u)
{
    if (u.rank() != f.rank())
        throw ToricError(ErrorKind::DimensionMismatch, "subdivision vector has the wrong rank");
    if (u.is_zero() || !u.is_primitive())
        throw ToricError(ErrorKind::NotPrimitive, u.str() + " is not a primitive vector");
    if (!f.in_support(u))
        throw ToricError(ErrorKind::NotInSupport, u.str() + " is not in the support of the fan");
    if (f.ray_index(u))
        return f;

    std::vector<LatticeVector> rays = f.rays();
    rays.push_back(u);
    const std::size_t fresh = rays.size() - 1;

    std::set<RayIndexSet> cones;
    for (std::size_t i = 0; i < f.cone_count(); ++i) {
        const Cone& c = f.cone(i);
        if (!c.contains(u)) {
            cones.insert(f.max_cones()[i]);
            continue;
        }
        for (std::size_t k = 0; k < c.facet_normals().size(); ++k) {
            if (c.facet_normals()[k].dot(u) == 0)
                continue;
            RayIndexSet joined = f.face_rays(i, c.facet_generators(k));
            joined.push_back(fresh);
            cones.insert(joined);
        }
    }
    Fan out(f.rank(), std::move(rays), {cones.begin(), cones.end()});
    return require_valid(out);
}

// ---------------------------------------------------------------- preimage sections

Cone cone_preimage_section(const Cone& c, const IntegerMatrix& pi, const Cone& target)
{
    if (pi.cols() != c.ambient_rank() || pi.rows() != target.ambient_rank())
        throw ToricError(ErrorKind::DimensionMismatch, "map does not fit the cones");
    auto pulled = [&](const LatticeVector& covector) {
        RationalVector row(pi.cols());
        for (std::size_t j = 0; j < pi.cols(); ++j)
            for (std::size_t i = 0; i < pi.rows(); ++i)
                row[j] += covector[i] * pi(i, j);
        return row;
    };
    std::vector<RationalVector> ineq, eq;
    for (const auto& f : c.facet_normals())
        ineq.push_back(f.to_rational());
    for (const auto& e : c.equations())
        eq.push_back(e.to_rational());
    for (const auto& f : target.facet_normals())
        ineq.push_back(pulled(f));
    for (const auto& e : target.equations())
        eq.push_back(pulled(e));
    DoubleDescription dd = double_description(ineq, eq, c.ambient_rank());
    std::vector<LatticeVector> gens = dd.rays;
    for (const auto& l : dd.lineality) {
        gens.push_back(primitive_on_ray(l));
        gens.push_back(-primitive_on_ray(l));
    }
    return Cone(c.ambient_rank(), gens);
}

// ---------------------------------------------------------------- isomorphism

bool fans_isomorphic_under(const IntegerMatrix& map, const Fan& f1, const Fan& f2,
                           const std::optional<Sublattice>& lattice)
{
    if (map.rows() != f2.rank() || map.cols() != f1.rank() || f1.rank() != f2.rank())
        throw ToricError(ErrorKind::NotUnimodular, "map is not square between the fan lattices");
    Sublattice target = lattice ? *lattice : Sublattice::full(f2.rank());
    auto index = target.index();
    if (!index)
        throw ToricError(ErrorKind::NotUnimodular, "target lattice is not of full rank");
    for (const auto& col : map.columns())
        if (!target.contains(col))
            throw ToricError(ErrorKind::NotUnimodular, "map leaves the target lattice");
    if (abs_value(map.determinant()) != *index)
        throw ToricError(ErrorKind::NotUnimodular, "map is not onto the target lattice");

    if (f1.cone_count() != f2.cone_count())
        return false;
    std::set<std::vector<LatticeVector>> image, expected;
    for (std::size_t i = 0; i < f1.cone_count(); ++i) {
        std::vector<LatticeVector> gens;
        for (const auto& g : f1.cone(i).generators())
            gens.push_back(primitive_part(map * g).primitive);
        image.insert(Cone(f2.rank(), gens).generators());
    }
    for (std::size_t i = 0; i < f2.cone_count(); ++i)
        expected.insert(f2.cone(i).generators());
    return image.size() == f1.cone_count() && image == expected;
}

std::optional<IntegerMatrix> find_fan_isomorphism(const Fan& f1, const Fan& f2)
{
    const std::size_t d = f1.rank();
    if (f2.rank() != d || f1.ray_count() != f2.ray_count() || f1.cone_count() != f2.cone_count())
        return std::nullopt;
    if (d == 0)
        return IntegerMatrix(0, 0);

    // d independent rays of f1, taken from a full-dimensional cone when possible.
    std::vector<LatticeVector> source;
    auto try_pick = [&](const std::vector<LatticeVector>& pool) {
        source.clear();
        for (const auto& v : pool) {
            auto candidate = source;
            candidate.push_back(v);
            if (linalg::rank(linalg::rows_of(candidate), d) == candidate.size())
                source = std::move(candidate);
            if (source.size() == d)
                return true;
        }
        return false;
    };
    bool picked = false;
    for (std::size_t i = 0; i < f1.cone_count() && !picked; ++i)
        picked = try_pick(f1.cone(i).generators());
    if (!picked && !try_pick(f1.rays()))
        return std::nullopt;

    linalg::Matrix system = linalg::rows_of(source);
    std::vector<std::size_t> choice(d, 0);
    const std::size_t n = f2.ray_count();
    // Odometer over ordered d-tuples of distinct rays of f2.
    for (;;) {
        std::set<std::size_t> distinct(choice.begin(), choice.end());
        if (distinct.size() == d) {
            IntegerMatrix m(d, d);
            bool integral = true;
            for (std::size_t row = 0; row < d && integral; ++row) {
                RationalVector rhs(d);
                for (std::size_t k = 0; k < d; ++k)
                    rhs[k] = Rational(f2.ray(choice[k])[row]);
                auto sol = linalg::solve(system, rhs, d);
                if (!sol) {
                    integral = false;
                    break;
                }
                for (std::size_t c = 0; c < d; ++c) {
                    if (!is_integral((*sol)[c])) {
                        integral = false;
                        break;
                    }
                    m(row, c) = numerator_of((*sol)[c]);
                }
            }
            if (integral && m.is_unimodular() && fans_isomorphic_under(m, f1, f2))
                return m;
        }
        std::size_t pos = 0;
        while (pos < d && ++choice[pos] == n) {
            choice[pos] = 0;
            ++pos;
        }
        if (pos == d)
            break;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------- constructions

Fan product_fan(const Fan& a, const Fan& b)
{
    const std::size_t rank = a.rank() + b.rank();
    std::vector<LatticeVector> rays;
    for (const auto& v : a.rays()) {
        LatticeVector r(rank);
        for (std::size_t i = 0; i < a.rank(); ++i)
            r[i] = v[i];
        rays.push_back(r);
    }
    for (const auto& w : b.rays()) {
        LatticeVector r(rank);
        for (std::size_t i = 0; i < b.rank(); ++i)
            r[a.rank() + i] = w[i];
        rays.push_back(r);
    }
    std::vector<RayIndexSet> cones;
    for (const auto& ca : a.max_cones())
        for (const auto& cb : b.max_cones()) {
            RayIndexSet c = ca;
            for (auto j : cb)
                c.push_back(a.ray_count() + j);
            cones.push_back(c);
        }
    return Fan(rank, std::move(rays), std::move(cones));
}

Fan projective_space_fan(std::size_t r)
{
    if (r == 0)
        throw ToricError(ErrorKind::DimensionMismatch, "projective space of dimension 0 has no rays");
    std::vector<LatticeVector> rays;
    LatticeVector last(r);
    for (std::size_t i = 0; i < r; ++i) {
        LatticeVector e(r);
        e[i] = 1;
        last[i] = -1;
        rays.push_back(e);
    }
    rays.push_back(last);
    std::vector<RayIndexSet> cones;
    for (std::size_t skip = 0; skip <= r; ++skip) {
        RayIndexSet c;
        for (std::size_t i = 0; i <= r; ++i)
            if (i != skip)
                c.push_back(i);
        cones.push_back(c);
    }
    return Fan(r, std::move(rays), std::move(cones));
}

Fan torus_fan(std::size_t rank)
{
    return Fan(rank, {}, {RayIndexSet{}});
}

}  // namespace toric

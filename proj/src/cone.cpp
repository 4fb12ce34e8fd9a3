#include "toric/cone.hpp"

#include <algorithm>
#include <set>

#include "toric/linalg.hpp"

namespace toric {

namespace {

RationalVector scaled_primitive(const RationalVector& v)
{
    return primitive_on_ray(v).to_rational();
}

// Rank of the constraints in `rows` that vanish at `point`.
std::size_t tight_rank(const std::vector<RationalVector>& rows, const RationalVector& point, std::size_t dim)
{
    linalg::Matrix tight;
    for (const auto& r : rows)
        if (linalg::dot(r, point) == 0)
            tight.push_back(r);
    return linalg::rank(tight, dim);
}

}  // namespace

DoubleDescription double_description(const std::vector<RationalVector>& inequalities,
                                     const std::vector<RationalVector>& equations,
                                     std::size_t dim)
{
    // Parametrize the solution space of the equations: x = basis * z.
    std::vector<RationalVector> basis;
    if (equations.empty()) {
        for (std::size_t i = 0; i < dim; ++i) {
            RationalVector e(dim);
            e[i] = 1;
            basis.push_back(std::move(e));
        }
    } else {
        basis = linalg::nullspace(equations, dim);
    }
    const std::size_t k = basis.size();

    std::vector<RationalVector> reduced;  // inequalities in z coordinates
    for (const auto& a : inequalities) {
        RationalVector r(k);
        for (std::size_t j = 0; j < k; ++j)
            r[j] = linalg::dot(a, basis[j]);
        if (!linalg::is_zero(r))
            reduced.push_back(std::move(r));
    }

    std::vector<RationalVector> lineality;
    for (std::size_t i = 0; i < k; ++i) {
        RationalVector e(k);
        e[i] = 1;
        lineality.push_back(std::move(e));
    }
    std::vector<RationalVector> rays;
    std::vector<RationalVector> processed;

    for (const auto& a : reduced) {
        auto lead = std::find_if(lineality.begin(), lineality.end(),
                                 [&](const RationalVector& l) { return linalg::dot(a, l) != 0; });
        processed.push_back(a);
        if (lead != lineality.end()) {
            RationalVector l0 = *lead;
            lineality.erase(lead);
            Rational s0 = linalg::dot(a, l0);
            if (s0 < 0) {
                for (auto& x : l0)
                    x = -x;
                s0 = -s0;
            }
            auto project = [&](RationalVector& v) {
                Rational f = linalg::dot(a, v) / s0;
                if (f != 0)
                    for (std::size_t i = 0; i < k; ++i)
                        v[i] -= f * l0[i];
            };
            for (auto& l : lineality)
                project(l);
            for (auto& r : rays) {
                project(r);
                r = scaled_primitive(r);
            }
            rays.push_back(scaled_primitive(l0));
            continue;
        }

        std::vector<RationalVector> pos, zero, neg;
        for (auto& r : rays) {
            Rational s = linalg::dot(a, r);
            (s > 0 ? pos : s < 0 ? neg : zero).push_back(r);
        }
        std::vector<RationalVector> next = pos;
        next.insert(next.end(), zero.begin(), zero.end());
        for (const auto& p : pos)
            for (const auto& n : neg) {
                Rational sp = linalg::dot(a, p);
                Rational sn = linalg::dot(a, n);
                RationalVector c(k);
                for (std::size_t i = 0; i < k; ++i)
                    c[i] = sp * n[i] - sn * p[i];
                if (!linalg::is_zero(c))
                    next.push_back(scaled_primitive(c));
            }

        // Keep only extremal rays: tight constraints must have rank one below the full rank.
        const std::size_t full = linalg::rank(processed, k);
        std::set<RationalVector> seen;
        rays.clear();
        for (auto& r : next) {
            if (seen.contains(r))
                continue;
            seen.insert(r);
            if (full == 0 || tight_rank(processed, r, k) + 1 == full)
                rays.push_back(r);
        }
    }

    DoubleDescription out;
    auto lift = [&](const RationalVector& z) {
        RationalVector x(dim);
        for (std::size_t j = 0; j < k; ++j)
            for (std::size_t i = 0; i < dim; ++i)
                x[i] += z[j] * basis[j][i];
        return x;
    };
    for (const auto& l : lineality)
        out.lineality.push_back(lift(l));
    std::set<LatticeVector> unique;
    for (const auto& r : rays)
        unique.insert(primitive_on_ray(lift(r)));
    out.rays.assign(unique.begin(), unique.end());
    return out;
}

// ---------------------------------------------------------------- Cone

Cone::Cone(std::size_t rank, const std::vector<LatticeVector>& generators) : rank_(rank)
{
    std::set<LatticeVector> unique;
    for (const auto& g : generators) {
        if (g.rank() != rank)
            throw ToricError(ErrorKind::DimensionMismatch, "cone generator " + g.str() + " has the wrong rank");
        if (!g.is_zero())
            unique.insert(primitive_part(g).primitive);
    }
    gens_.assign(unique.begin(), unique.end());
    compute_inequalities();
}

Cone Cone::generated_by(std::size_t rank, const std::vector<LatticeVector>& generators)
{
    Cone all(rank, generators);
    if (!all.is_pointed())
        return all;
    std::vector<LatticeVector> extremal;
    for (std::size_t i = 0; i < all.gens_.size(); ++i)
        if (all.is_extremal(i))
            extremal.push_back(all.gens_[i]);
    return Cone(rank, extremal);
}

void Cone::compute_inequalities()
{
    std::vector<RationalVector> rows;
    for (const auto& g : gens_)
        rows.push_back(g.to_rational());
    DoubleDescription dual = double_description(rows, {}, rank_);

    linalg::Echelon span = linalg::rref(dual.lineality, rank_);
    equations_.clear();
    for (const auto& row : span.reduced)
        equations_.push_back(primitive_on_ray(row));

    std::set<LatticeVector> normals;
    for (const auto& r : dual.rays) {
        RationalVector reduced = linalg::reduce_modulo(span, r.to_rational());
        if (!linalg::is_zero(reduced))
            normals.insert(primitive_on_ray(reduced));
    }
    facets_.assign(normals.begin(), normals.end());
}

bool Cone::is_pointed() const
{
    linalg::Matrix rows = linalg::rows_of(equations_);
    for (const auto& f : facets_)
        rows.push_back(f.to_rational());
    return linalg::rank(rows, rank_) == rank_;
}

bool Cone::is_extremal(std::size_t generator) const
{
    const auto& g = gens_.at(generator);
    linalg::Matrix rows = linalg::rows_of(equations_);
    for (const auto& f : facets_)
        if (f.dot(g) == 0)
            rows.push_back(f.to_rational());
    return linalg::rank(rows, rank_) + 1 == rank_;
}

bool Cone::contains(const LatticeVector& x) const
{
    if (x.rank() != rank_)
        throw ToricError(ErrorKind::DimensionMismatch, "point " + x.str() + " has the wrong rank");
    for (const auto& e : equations_)
        if (e.dot(x) != 0)
            return false;
    for (const auto& f : facets_)
        if (f.dot(x) < 0)
            return false;
    return true;
}

bool Cone::contains(const RationalVector& x) const
{
    if (x.size() != rank_)
        throw ToricError(ErrorKind::DimensionMismatch, "point has the wrong rank");
    for (const auto& e : equations_)
        if (e.dot(x) != 0)
            return false;
    for (const auto& f : facets_)
        if (f.dot(x) < 0)
            return false;
    return true;
}

bool Cone::contains(const Cone& other) const
{
    return std::all_of(other.gens_.begin(), other.gens_.end(), [&](const LatticeVector& g) { return contains(g); });
}

bool Cone::in_relative_interior(const LatticeVector& x) const
{
    if (!contains(x))
        return false;
    return std::all_of(facets_.begin(), facets_.end(), [&](const LatticeVector& f) { return f.dot(x) > 0; });
}

std::vector<std::size_t> Cone::facet_generators(std::size_t facet) const
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < gens_.size(); ++i)
        if (facets_.at(facet).dot(gens_[i]) == 0)
            out.push_back(i);
    return out;
}

std::vector<std::vector<std::size_t>> Cone::faces() const
{
    std::vector<std::size_t> all(gens_.size());
    for (std::size_t i = 0; i < all.size(); ++i)
        all[i] = i;
    std::set<std::vector<std::size_t>> found{all};
    std::vector<std::vector<std::size_t>> frontier{all};
    std::vector<std::vector<std::size_t>> facet_sets;
    for (std::size_t f = 0; f < facets_.size(); ++f)
        facet_sets.push_back(facet_generators(f));
    // Faces are the intersections of facet generator sets.
    while (!frontier.empty()) {
        std::vector<std::vector<std::size_t>> next;
        for (const auto& face : frontier)
            for (const auto& fs : facet_sets) {
                std::vector<std::size_t> meet;
                std::set_intersection(face.begin(), face.end(), fs.begin(), fs.end(), std::back_inserter(meet));
                if (found.insert(meet).second)
                    next.push_back(std::move(meet));
            }
        frontier = std::move(next);
    }
    if (is_pointed())
        found.insert({});
    std::vector<std::vector<std::size_t>> out(found.begin(), found.end());
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
    return out;
}

std::vector<std::size_t> Cone::minimal_face_of(const LatticeVector& x) const
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < gens_.size(); ++i) {
        bool on_all = true;
        for (const auto& f : facets_)
            if (f.dot(x) == 0 && f.dot(gens_[i]) != 0) {
                on_all = false;
                break;
            }
        if (on_all)
            out.push_back(i);
    }
    return out;
}

Cone Cone::face(const std::vector<std::size_t>& generator_indices) const
{
    std::vector<LatticeVector> gs;
    for (auto i : generator_indices)
        gs.push_back(gens_.at(i));
    return Cone(rank_, gs);
}

Cone Cone::intersect(const Cone& other) const
{
    if (other.rank_ != rank_)
        throw ToricError(ErrorKind::DimensionMismatch, "intersecting cones of different rank");
    std::vector<RationalVector> ineq, eq;
    for (const auto* c : {this, &other}) {
        for (const auto& f : c->facets_)
            ineq.push_back(f.to_rational());
        for (const auto& e : c->equations_)
            eq.push_back(e.to_rational());
    }
    DoubleDescription dd = double_description(ineq, eq, rank_);
    std::vector<LatticeVector> gens = dd.rays;
    for (const auto& l : dd.lineality) {
        gens.push_back(primitive_on_ray(l));
        gens.push_back(-primitive_on_ray(l));
    }
    return Cone(rank_, gens);
}

bool Cone::has_face(const Cone& candidate) const
{
    if (candidate.rank_ != rank_)
        return false;
    std::vector<std::size_t> inside;
    for (std::size_t i = 0; i < gens_.size(); ++i)
        if (candidate.contains(gens_[i]))
            inside.push_back(i);
    auto all_faces = faces();
    if (std::find(all_faces.begin(), all_faces.end(), inside) == all_faces.end())
        return false;
    return face(inside) == candidate;
}

}  // namespace toric

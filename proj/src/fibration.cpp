#include "toric/fibration.hpp"

#include <algorithm>
#include <set>

#include "enumerate.hpp"

namespace toric {

std::optional<std::size_t> ToricContraction::target_cone_of(const std::vector<LatticeVector>& source_points) const
{
    std::vector<LatticeVector> images;
    for (const auto& x : source_points)
        images.push_back(pi_ * x);
    for (std::size_t t = 0; t < target_.cone_count(); ++t) {
        const Cone& c = target_.cone(t);
        if (std::all_of(images.begin(), images.end(), [&](const LatticeVector& y) { return c.contains(y); }))
            return t;
    }
    return std::nullopt;
}

ToricContraction validate_contraction(const Fan& src, const Fan& tgt, const IntegerMatrix& pi)
{
    if (pi.rows() != tgt.rank() || pi.cols() != src.rank())
        throw ToricError(ErrorKind::DimensionMismatch, "map must be " + std::to_string(tgt.rank()) + " x " +
                                                           std::to_string(src.rank()));
    require_valid(src);
    require_valid(tgt);

    SmithForm snf = snf_decompose(pi);
    if (snf.rank() < tgt.rank())
        throw NotSurjectiveError(ErrorKind::NotDominant, Sublattice(tgt.rank(), pi), std::nullopt,
                                 "map has rank " + std::to_string(snf.rank()) + " below the target rank");
    Integer index = 1;
    for (const auto& d : snf.diagonal())
        index *= d;
    if (index != 1)
        throw NotSurjectiveError(ErrorKind::FinitePart, Sublattice(tgt.rank(), pi), index,
                                 "image lattice has index " + index.str() + "; the map factors through a finite cover");

    ToricContraction f;
    f.source_ = src;
    f.target_ = tgt;
    f.pi_ = pi;

    for (std::size_t i = 0; i < src.cone_count(); ++i)
        if (!f.target_cone_of(src.cone(i).generators())) {
            std::string gens;
            for (const auto& g : src.cone(i).generators())
                gens += g.str();
            throw ToricError(ErrorKind::ConeNotMapped, "source cone " + std::to_string(i) + " " + gens +
                                                           " lies in no target cone");
        }

    for (const auto& w : tgt.rays()) {
        bool covered = false;
        for (const auto& v : src.rays()) {
            LatticeVector image = pi * v;
            if (!image.is_zero() && primitive_part(image).primitive == w) {
                covered = true;
                break;
            }
        }
        if (!covered)
            throw ToricError(ErrorKind::RayNotCovered, "no source ray maps onto target ray " + w.str());
    }
    return f;
}

ToricContraction compose(const ToricContraction& g, const ToricContraction& h)
{
    return validate_contraction(g.source(), h.target(), h.pi() * g.pi());
}

// ---------------------------------------------------------------- fibres

FiberData general_fiber_and_split(const ToricContraction& f)
{
    const Fan& src = f.source();
    const std::size_t d = src.rank();
    auto kernel = kernel_basis(f.pi());
    const std::size_t r = kernel.size();

    FiberData out;
    out.kernel = IntegerMatrix::from_columns(kernel, d);

    // Cones lying in the kernel, maximal among themselves.
    std::vector<RayIndexSet> vertical;
    for (const auto& c : src.all_cones())
        if (std::all_of(c.begin(), c.end(), [&](std::size_t v) { return (f.pi() * src.ray(v)).is_zero(); }))
            vertical.push_back(c);
    std::vector<RayIndexSet> maximal;
    for (const auto& c : vertical) {
        bool dominated = false;
        for (const auto& o : vertical)
            if (o.size() > c.size() && std::includes(o.begin(), o.end(), c.begin(), c.end())) {
                dominated = true;
                break;
            }
        if (!dominated)
            maximal.push_back(c);
    }

    std::set<std::size_t> used;
    for (const auto& c : maximal)
        used.insert(c.begin(), c.end());
    linalg::Matrix kernel_columns(d, RationalVector(r));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < r; ++j)
            kernel_columns[i][j] = kernel[j][i];
    std::vector<std::pair<LatticeVector, std::size_t>> fiber_rays;
    for (auto v : used) {
        auto coords = linalg::solve(kernel_columns, src.ray(v).to_rational(), r);
        std::vector<Integer> ints;
        for (const auto& x : *coords)
            ints.push_back(numerator_of(x));
        fiber_rays.emplace_back(LatticeVector(std::move(ints)), v);
    }
    std::sort(fiber_rays.begin(), fiber_rays.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

    std::vector<LatticeVector> rays;
    std::vector<std::size_t> position(src.ray_count(), 0);
    for (std::size_t i = 0; i < fiber_rays.size(); ++i) {
        rays.push_back(fiber_rays[i].first);
        out.source_rays.push_back(fiber_rays[i].second);
        position[fiber_rays[i].second] = i;
    }
    std::vector<RayIndexSet> cones;
    for (const auto& c : maximal) {
        RayIndexSet mapped;
        for (auto v : c)
            mapped.push_back(position[v]);
        cones.push_back(mapped);
    }
    out.fiber = Fan(r, std::move(rays), std::move(cones));

    if (f.target().ray_count() == 0) {
        IntegerMatrix section = split_extension(f.pi());
        std::vector<LatticeVector> columns = kernel;
        for (const auto& s : section.columns())
            columns.push_back(s);
        out.split = SplitData{section, IntegerMatrix::from_columns(columns, d)};
    }
    return out;
}

std::vector<FiberComponent> fiber_multiplicities_over(const ToricContraction& f, const LatticeVector& w)
{
    if (!f.target().ray_index(w))
        throw ToricError(ErrorKind::NotATargetRay, w.str() + " is not a ray of the target fan");
    std::vector<FiberComponent> out;
    for (std::size_t v = 0; v < f.source().ray_count(); ++v) {
        LatticeVector image = f.pi() * f.source().ray(v);
        if (image.is_zero())
            continue;
        auto part = primitive_part(image);
        if (part.primitive == w)
            out.push_back({v, f.source().ray(v), part.length});
    }
    return out;
}

// ---------------------------------------------------------------- thresholds

namespace {

void require_matching(const ToricPair& p, const ToricContraction& f)
{
    if (!(p.fan() == f.source()))
        throw ToricError(ErrorKind::DimensionMismatch, "pair and contraction have different source fans");
}

// Scalar m with image = m * w, for image on the ray of w.
Rational ratio_along(const LatticeVector& image, const LatticeVector& w)
{
    for (std::size_t i = 0; i < w.rank(); ++i)
        if (w[i] != 0)
            return Rational(image[i], w[i]);
    return 0;
}

// Coefficients of f^*D_w at the source ray v, for every target ray w.
RationalVector pullback_row(const ToricContraction& f, const LatticeVector& v)
{
    const Fan& tgt = f.target();
    RationalVector row(tgt.ray_count());
    LatticeVector x = f.pi() * v;
    if (x.is_zero())
        return row;
    auto cone = tgt.cone_containing(x);
    if (!cone)
        throw ToricError(ErrorKind::ConeNotMapped, "image " + x.str() + " lies outside the target fan");
    auto face = tgt.cone(*cone).minimal_face_of(x);
    RayIndexSet rays = tgt.face_rays(*cone, face);
    linalg::Matrix columns(tgt.rank(), RationalVector(rays.size()));
    for (std::size_t j = 0; j < rays.size(); ++j)
        for (std::size_t i = 0; i < tgt.rank(); ++i)
            columns[i][j] = tgt.ray(rays[j])[i];
    if (linalg::rank(columns, rays.size()) != rays.size())
        throw ToricError(ErrorKind::NotSimplicial, "image " + x.str() + " lies in a non-simplicial target cone");
    auto lambda = linalg::solve(columns, x.to_rational(), rays.size());
    for (std::size_t j = 0; j < rays.size(); ++j)
        row[rays[j]] = (*lambda)[j];
    return row;
}

}  // namespace

namespace {

// Images of the maximal source cones; a direction outside pi(c) gets nothing
// from c, which saves a section computation.
std::vector<Cone> image_cones(const ToricContraction& f)
{
    std::vector<Cone> out;
    for (std::size_t c = 0; c < f.source().cone_count(); ++c) {
        std::vector<LatticeVector> gens;
        for (const auto& g : f.source().cone(c).generators())
            gens.push_back(f.pi() * g);
        out.emplace_back(f.target().rank(), gens);
    }
    return out;
}

LctResult lct_with_images(const ToricPair& p, const ToricContraction& f, const LatticeVector& w,
                          const std::vector<Cone>* images)
{
    const Fan& src = f.source();
    Cone direction(w.rank(), {w});
    std::optional<LctResult> best;
    for (std::size_t c = 0; c < src.cone_count(); ++c) {
        if (images && !(*images)[c].contains(w))
            continue;
        Cone section = cone_preimage_section(src.cone(c), f.pi(), direction);
        for (const auto& r : section.generators()) {
            LatticeVector image = f.pi() * r;
            if (image.is_zero())
                continue;
            Rational m = ratio_along(image, w);
            Rational t = p.a_on_cone(c, r) / m;
            if (!best || t < best->threshold || (t == best->threshold && r < best->witness))
                best = LctResult{w, t, r, numerator_of(m)};
        }
    }
    if (!best)
        throw ToricError(ErrorKind::DirectionOutsideImage, w.str() + " meets no image of a source cone");
    return *best;
}

}  // namespace

LctResult lct_over_direction(const ToricPair& p, const ToricContraction& f, const LatticeVector& w)
{
    require_matching(p, f);
    if (w.rank() != f.target().rank())
        throw ToricError(ErrorKind::DimensionMismatch, "direction has the wrong rank");
    if (w.is_zero() || !w.is_primitive())
        throw ToricError(ErrorKind::NotPrimitive, w.str() + " is not a primitive direction");
    return lct_with_images(p, f, w, nullptr);
}

std::vector<LctResult> discriminant_thresholds(const ToricPair& p, const ToricContraction& f)
{
    std::vector<LctResult> out;
    for (const auto& w : f.target().rays())
        out.push_back(lct_over_direction(p, f, w));
    return out;
}

RationalVector pullback_divisor(const ToricContraction& f, const RationalVector& target_divisor)
{
    if (target_divisor.size() != f.target().ray_count())
        throw ToricError(ErrorKind::DimensionMismatch, "target divisor needs one entry per target ray");
    RationalVector out;
    for (const auto& v : f.source().rays())
        out.push_back(linalg::dot(pullback_row(f, v), target_divisor));
    return out;
}

std::optional<RationalVector> relative_triviality(const ToricPair& p, const ToricContraction& f)
{
    require_matching(p, f);
    const Fan& src = f.source();
    const std::size_t nz = f.target().ray_count();
    const std::size_t d = src.rank();
    // Unknowns: target divisor D_Z (nz entries), then a character m (d entries):
    // K_X + B = f^*D_Z + div(chi^m).
    linalg::Matrix system;
    for (const auto& v : src.rays()) {
        RationalVector row = pullback_row(f, v);
        for (std::size_t i = 0; i < d; ++i)
            row.push_back(Rational(v[i]));
        system.push_back(std::move(row));
    }
    auto sol = linalg::solve(system, p.log_canonical_class(), nz + d);
    if (!sol)
        return std::nullopt;
    RationalVector descended(sol->begin(), sol->begin() + static_cast<std::ptrdiff_t>(nz));
    return ClassGroup(f.target()).reduce(descended);
}

AdjunctionData discriminant_divisor(const ToricPair& p, const ToricContraction& f)
{
    auto descended = relative_triviality(p, f);
    if (!descended)
        throw ToricError(ErrorKind::NotRelativelyTrivial, "K_X + B is not a pullback from the base");
    AdjunctionData out;
    out.descended_class = *descended;
    out.witnesses = discriminant_thresholds(p, f);
    const std::size_t nz = f.target().ray_count();
    out.discriminant.coeffs.resize(nz);
    RationalVector moduli(nz);
    for (std::size_t w = 0; w < nz; ++w) {
        out.discriminant.coeffs[w] = 1 - out.witnesses[w].threshold;
        moduli[w] = (*descended)[w] + 1 - out.discriminant.coeffs[w];
    }
    out.moduli_class = ClassGroup(f.target()).reduce(moduli);
    if (f.target().rank() == 1) {
        Rational degree = 0;
        for (const auto& x : out.moduli_class)
            degree += x;
        out.moduli_degree = degree;
    }
    return out;
}

// ---------------------------------------------------------------- base infimum

BaseInfimum base_lct_infimum(const ToricPair& p, const ToricContraction& f, int box)
{
    require_matching(p, f);
    if (!relative_triviality(p, f))
        throw ToricError(ErrorKind::NotRelativelyTrivial, "K_X + B is not a pullback from the base");
    const Fan& src = f.source();
    const std::size_t e = f.target().rank();
    if (e == 0)
        throw ToricError(ErrorKind::DirectionOutsideImage, "the base is a point");

    std::optional<Rational> best;
    LatticeVector witness;
    auto offer = [&](const Rational& value, const LatticeVector& w) {
        if (!best || value < *best || (value == *best && w < witness)) {
            best = value;
            witness = w;
        }
    };

    // On a face F where pi is injective, lct restricted to pi(F) is the linear
    // function g_F = a o (pi|F)^-1; the infimum is the least value of some g_F
    // at a nonzero lattice point of pi(F).
    for (std::size_t c = 0; c < src.cone_count(); ++c) {
        const Cone& cone = src.cone(c);
        for (const auto& face : cone.faces()) {
            if (face.empty())
                continue;
            linalg::Matrix images;
            RationalVector values;
            std::vector<LatticeVector> image_gens;
            for (auto g : face) {
                const auto& gen = cone.generators()[g];
                LatticeVector y = f.pi() * gen;
                images.push_back(y.to_rational());
                values.push_back(p.a_on_cone(c, gen));
                image_gens.push_back(y);
            }
            if (linalg::rank(images, e) != cone.face(face).dim())
                continue;
            auto ell = linalg::solve(images, values, e);
            Cone image(e, image_gens);

            bool vanishes = false;
            Rational face_min = 0;
            bool first = true;
            for (const auto& cg : image.generators()) {
                Rational value = cg.dot(*ell);
                if (value == 0) {
                    offer(value, cg);
                    vanishes = true;
                }
                if (first || value < face_min)
                    face_min = value;
                first = false;
            }
            if (vanishes)
                continue;
            Rational level = best && *best < face_min ? *best : face_min;
            std::vector<RationalVector> vertices;
            for (const auto& cg : image.generators()) {
                RationalVector v = cg.to_rational();
                Rational scale = level / cg.dot(*ell);
                for (auto& x : v)
                    x *= scale;
                vertices.push_back(std::move(v));
            }
            std::vector<Integer> lo, hi;
            detail::bounding_box(vertices, e, lo, hi);
            detail::for_each_lattice_point(lo, hi, [&](const LatticeVector& w) {
                if (w.is_zero() || !image.contains(w))
                    return;
                Rational value = w.dot(*ell);
                if (value <= level)
                    offer(value, w);
            });
        }
    }
    if (!best)
        throw ToricError(ErrorKind::DirectionOutsideImage, "no direction of the base meets the image");

    BaseInfimum out;
    out.delta = *best;
    out.witness = witness;

    // Independent check: lct over every primitive direction in the box.
    std::optional<Rational> oracle;
    LatticeVector oracle_witness;
    const std::vector<Cone> images = image_cones(f);
    std::vector<Integer> lo(e, Integer(-box)), hi(e, Integer(box));
    detail::for_each_lattice_point(lo, hi, [&](const LatticeVector& w) {
        if (w.is_zero() || !w.is_primitive())
            return;
        try {
            LctResult r = lct_with_images(p, f, w, &images);
            if (!oracle || r.threshold < *oracle || (r.threshold == *oracle && w < oracle_witness)) {
                oracle = r.threshold;
                oracle_witness = w;
            }
        } catch (const ToricError& err) {
            if (err.kind() != ErrorKind::DirectionOutsideImage)
                throw;
        }
    });
    if (oracle) {
        out.oracle_delta = *oracle;
        out.oracle_witness = oracle_witness;
        out.exact_agrees_with_oracle = *oracle == out.delta;
    }
    return out;
}

// ---------------------------------------------------------------- Mori fibre spaces

bool is_fano_contraction(const ToricPair& p, const ToricContraction& f)
{
    require_matching(p, f);
    return positivity_check(p, InvariantDivisor::boundary(p.fan().ray_count()), Positivity::ample, &f);
}

bool is_mori_fiber_space(const ToricPair& p, const ToricContraction& f)
{
    return f.relative_dimension() > 0 && is_fano_contraction(p, f) && relative_picard_rank_one(p, f);
}

TowerReport tower_consistency_check(const ToricPair& p, const ToricContraction& g, const ToricContraction& h)
{
    ToricContraction composite = compose(g, h);
    auto thresholds = discriminant_thresholds(p, g);
    InvariantDivisor on_v = InvariantDivisor::zero(g.target().ray_count());
    for (std::size_t w = 0; w < thresholds.size(); ++w)
        on_v.coeffs[w] = 1 - thresholds[w].threshold;
    ToricPair pv = build_pair(g.target(), {on_v, {}});

    TowerReport report;
    for (const auto& w : h.target().rays()) {
        TowerRow row;
        row.direction = w;
        row.composite = lct_over_direction(p, composite, w).threshold;
        row.via_intermediate = lct_over_direction(pv, h, w).threshold;
        row.equal = row.composite == row.via_intermediate;
        report.consistent = report.consistent && row.equal;
        report.rows.push_back(std::move(row));
    }
    return report;
}

}  // namespace toric

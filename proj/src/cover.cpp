#include "toric/cover.hpp"

namespace toric {

CoverData quotient_by_sublattice(const Fan& f, const Sublattice& sub)
{
    if (sub.ambient_rank() != f.rank())
        throw ToricError(ErrorKind::DimensionMismatch, "sublattice lives in the wrong lattice");
    auto index = sub.index();
    if (!index)
        throw ToricError(ErrorKind::InfiniteIndex, "sublattice has rank " + std::to_string(sub.rank()) +
                                                        " in a lattice of rank " + std::to_string(f.rank()));
    CoverData c;
    c.sublattice = sub;
    c.degree = *index;
    c.inclusion = sub.basis_matrix();
    std::vector<LatticeVector> rays;
    for (const auto& v : f.rays()) {
        Integer k = *sub.lattice_length(v);
        LatticeVector lifted = v * k;
        c.ray_lengths.push_back(k);
        c.ambient_rays.push_back(lifted);
        rays.push_back(*sub.coordinates(lifted));
    }
    c.fan = Fan(f.rank(), std::move(rays), f.max_cones());
    return c;
}

ToricPair crepant_pullback_pair(const ToricPair& p, const CoverData& c)
{
    const auto& old = p.boundary();
    BoundaryData b;
    b.invariant = InvariantDivisor::zero(c.fan.ray_count());
    for (std::size_t r = 0; r < c.fan.ray_count(); ++r)
        b.invariant.coeffs[r] = 1 - Rational(c.ray_lengths[r]) * (1 - old.invariant[r]);
    for (const auto& g : old.generic) {
        GenericMember pulled{g.b, InvariantDivisor::zero(c.fan.ray_count())};
        for (std::size_t r = 0; r < c.fan.ray_count(); ++r)
            pulled.divisor_class.coeffs[r] = Rational(c.ray_lengths[r]) * g.divisor_class[r];
        b.generic.push_back(std::move(pulled));
    }
    return build_pair(c.fan, b);
}

std::vector<Integer> fiber_relation_vector(const Fan& fiber)
{
    const std::size_t r = fiber.rank();
    if (fiber.ray_count() != r + 1)
        throw ToricError(ErrorKind::WrongRayCount, "fibre has " + std::to_string(fiber.ray_count()) +
                                                        " rays, expected " + std::to_string(r + 1));
    linalg::Matrix m(r, RationalVector(r + 1));
    for (std::size_t j = 0; j <= r; ++j)
        for (std::size_t i = 0; i < r; ++i)
            m[i][j] = fiber.ray(j)[i];
    auto null = linalg::nullspace(m, r + 1);
    if (null.size() != 1)
        throw ToricError(ErrorKind::NonPositiveRelation, "rays satisfy " + std::to_string(null.size()) +
                                                              " independent relations");
    LatticeVector q = primitive_on_ray(null[0]);
    if (q[0] < 0)
        q = -q;
    for (const auto& x : q)
        if (x <= 0)
            throw ToricError(ErrorKind::NonPositiveRelation, "relation " + q.str() + " is not positive");
    return q.coords();
}

PrCoverReport pr_cover(const ToricContraction& f, const ToricPair& p)
{
    if (!is_mori_fiber_space(p, f))
        throw ToricError(ErrorKind::NotMFS, "contraction is not a Mori fibre space for the pair");
    const std::size_t d = f.source().rank();
    const std::size_t e = f.target().rank();
    FiberData fd = general_fiber_and_split(f);
    const std::size_t r = fd.fiber.rank();

    PrCoverReport out;
    out.q = fiber_relation_vector(fd.fiber);
    out.fiber_rays = fd.fiber.rays();

    std::vector<LatticeVector> psi_columns;
    std::vector<LatticeVector> first_rays;
    for (std::size_t i = 0; i < r; ++i) {
        psi_columns.push_back(fd.fiber.ray(i) * out.q[i]);
        first_rays.push_back(fd.fiber.ray(i));
    }
    out.psi = IntegerMatrix::from_columns(psi_columns, r);
    out.fiber_index = *Sublattice::spanned_by(first_rays, r).index();

    // N' = <K q_i v_i, i < r> + section of the base.
    std::vector<LatticeVector> gens;
    for (const auto& c : psi_columns)
        gens.push_back(fd.kernel * c);
    IntegerMatrix section = split_extension(f.pi());
    for (std::size_t j = 0; j < e; ++j)
        gens.push_back(section.column(j));
    out.cover = quotient_by_sublattice(f.source(), Sublattice::spanned_by(gens, d));

    out.psi_isomorphism =
        fans_isomorphic_under(out.psi, projective_space_fan(r), fd.fiber, Sublattice(r, out.psi));

    ToricContraction lifted = validate_contraction(out.cover.fan, f.target(), f.pi() * out.cover.inclusion);
    Fan cover_fiber = general_fiber_and_split(lifted).fiber;
    out.fiber_is_projective_space = find_fan_isomorphism(cover_fiber, projective_space_fan(r)).has_value();
    out.cover_simplicial = classify_fan(out.cover.fan).simplicial;
    return out;
}

}  // namespace toric

namespace toric {

ToricPair crepant_subdivision(const ToricPair& p, const LatticeVector& u)
{
    Fan up = star_subdivide(p.fan(), u);
    if (up.ray_count() == p.fan().ray_count())
        return p;
    // The new ray is appended after the old ones.
    const auto& old = p.boundary();
    BoundaryData b = old;
    b.invariant.coeffs.push_back(1 - p.a(u));
    for (auto& g : b.generic) {
        Rational value = support_function(p.fan(), g.divisor_class)(p.fan(), u);
        g.divisor_class.coeffs.push_back(-value);
    }
    return build_pair(up, b);
}

}  // namespace toric

#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "toric/catalog.hpp"
#include "toric/fibration.hpp"

using namespace toric;

namespace {

Fan p1() { return projective_space_fan(1); }
Fan p1p1() { return product_fan(p1(), p1()); }
Fan x2p1() { return product_fan(ladder_fan(2), p1()); }

BoundaryData invariant(const RationalVector& coeffs) { return {InvariantDivisor{coeffs}, {}}; }

BoundaryData toric_boundary(const Fan& f) { return {InvariantDivisor::boundary(f.ray_count()), {}}; }

BoundaryData generic_anticanonical(const Fan& f, long m)
{
    return {InvariantDivisor::zero(f.ray_count()), {{Rational(1, m), InvariantDivisor::boundary(f.ray_count()).scaled(m)}}};
}

ErrorKind kind_of(const std::function<void()>& fn)
{
    try {
        fn();
    } catch (const ToricError& e) {
        return e.kind();
    }
    FAIL("no error raised");
    return ErrorKind::Parse;
}

ToricContraction x2p1_to_p1p1()
{
    return validate_contraction(x2p1(), p1p1(), IntegerMatrix{{1, 0, 0}, {0, 0, 1}});
}

}  // namespace

TEST_CASE("contraction validation examples")
{
    ToricContraction f = validate_contraction(ladder_fan(2), p1(), IntegerMatrix{{1, 0}});
    CHECK(f.relative_dimension() == 1);

    try {
        validate_contraction(p1(), p1(), IntegerMatrix{{2}});
        FAIL("expected FinitePart");
    } catch (const NotSurjectiveError& e) {
        CHECK(e.kind() == ErrorKind::FinitePart);
        REQUIRE(e.index());
        CHECK(*e.index() == 2);
        CHECK(e.image().contains(LatticeVector{2}));
    }

    CHECK(validate_contraction(p1p1(), p1(), IntegerMatrix{{1, 0}}).relative_dimension() == 1);
}

TEST_CASE("contraction validation failures")
{
    CHECK(kind_of([] { validate_contraction(projective_space_fan(2), p1(), IntegerMatrix{{1, 0}}); }) ==
          ErrorKind::ConeNotMapped);
    CHECK(kind_of([] { validate_contraction(ladder_fan(2), p1(), IntegerMatrix{{0, 0}}); }) == ErrorKind::NotDominant);
    Fan half(2, {{1, 0}, {0, 1}, {0, -1}}, {{0, 1}, {0, 2}});
    CHECK(kind_of([&] { validate_contraction(half, p1(), IntegerMatrix{{1, 0}}); }) == ErrorKind::RayNotCovered);
    CHECK(kind_of([] { validate_contraction(ladder_fan(2), p1(), IntegerMatrix{{1, 0, 0}}); }) ==
          ErrorKind::DimensionMismatch);
}

TEST_CASE("general fibre examples")
{
    FiberData a = general_fiber_and_split(project_to_p1(ladder_fan(2)));
    CHECK(a.kernel == IntegerMatrix{{0}, {1}});
    CHECK(a.fiber.rays() == std::vector<LatticeVector>{{-1}, {1}});
    CHECK(find_fan_isomorphism(a.fiber, p1()).has_value());
    CHECK_FALSE(a.split);

    // Two opposite rays over the torus of Z: X = P1 x C*.
    Fan line(2, {{1, 0}, {-1, 0}}, {{0}, {1}});
    FiberData b = general_fiber_and_split(validate_contraction(line, torus_fan(1), IntegerMatrix{{0, 1}}));
    CHECK(find_fan_isomorphism(b.fiber, p1()).has_value());
    REQUIRE(b.split);
    CHECK(IntegerMatrix{{0, 1}} * b.split->section == IntegerMatrix::identity(1));
    CHECK(b.split->basis.is_unimodular());

    FiberData c = general_fiber_and_split(project_to_p1(p1p1()));
    CHECK(find_fan_isomorphism(c.fiber, p1()).has_value());

    FiberData d = general_fiber_and_split(contract_to_point(projective_space_fan(2)));
    CHECK(find_fan_isomorphism(d.fiber, projective_space_fan(2)).has_value());
    REQUIRE(d.split);
}

TEST_CASE("fibre multiplicities")
{
    auto a = fiber_multiplicities_over(project_to_p1(ladder_fan(2)), {1});
    REQUIRE(a.size() == 1);
    CHECK(a[0].generator == LatticeVector{2, 1});
    CHECK(a[0].multiplicity == 2);

    auto b = fiber_multiplicities_over(project_to_p1(ladder_fan(3)), {1});
    REQUIRE(b.size() == 1);
    CHECK(b[0].generator == LatticeVector{3, 1});
    CHECK(b[0].multiplicity == 3);

    auto c = fiber_multiplicities_over(project_to_p1(hirzebruch_fan(2)), {1});
    REQUIRE(c.size() == 1);
    CHECK(c[0].generator == LatticeVector{1, 0});
    CHECK(c[0].multiplicity == 1);

    CHECK(kind_of([] { fiber_multiplicities_over(project_to_p1(ladder_fan(2)), {2}); }) == ErrorKind::NotATargetRay);
}

TEST_CASE("lct over a direction")
{
    ToricContraction f2 = project_to_p1(ladder_fan(2));
    LctResult a = lct_over_direction(build_pair(ladder_fan(2), toric_boundary(ladder_fan(2))), f2, {1});
    CHECK(a.threshold == 0);
    CHECK(a.witness == LatticeVector{2, 1});

    LctResult b = lct_over_direction(build_pair(ladder_fan(3)), project_to_p1(ladder_fan(3)), {1});
    CHECK(b.threshold == Rational(1, 3));
    CHECK(b.witness == LatticeVector{3, 1});
    CHECK(b.multiplicity == 3);

    for (Rational alpha : {Rational(1, 4), Rational(1, 2), Rational(2, 3)}) {
        BoundaryData avg = average_boundary(invariant(RationalVector(4, 0)), ladder_fan(2), alpha);
        CHECK(lct_over_direction(build_pair(ladder_fan(2), avg), f2, {1}).threshold == alpha / 2);
    }

    // Upper half plane over the affine line: nothing lies over the direction -1.
    Fan half(2, {{1, 0}, {0, 1}, {-1, 0}}, {{0, 1}, {1, 2}});
    Fan line(1, {{1}}, {{0}});
    ToricContraction g = validate_contraction(half, line, IntegerMatrix{{0, 1}});
    CHECK(lct_over_direction(build_pair(half), g, {1}).threshold == 1);
    CHECK(kind_of([&] { lct_over_direction(build_pair(half), g, {-1}); }) == ErrorKind::DirectionOutsideImage);
    CHECK(kind_of([&] { lct_over_direction(build_pair(ladder_fan(2)), f2, {2}); }) == ErrorKind::NotPrimitive);
}

TEST_CASE("discriminant divisor examples")
{
    ToricContraction f2 = project_to_p1(ladder_fan(2));
    AdjunctionData a = discriminant_divisor(build_pair(ladder_fan(2), toric_boundary(ladder_fan(2))), f2);
    CHECK(a.discriminant.coeffs == RationalVector{1, 1});
    CHECK(linalg::is_zero(a.moduli_class));

    AdjunctionData b = discriminant_divisor(build_pair(ladder_fan(2), generic_anticanonical(ladder_fan(2), 2)), f2);
    CHECK(b.discriminant.coeffs == RationalVector{Rational(1, 2), 0});
    REQUIRE(b.moduli_degree);
    CHECK(*b.moduli_degree == Rational(3, 2));
    CHECK(b.witnesses[0].witness == LatticeVector{2, 1});

    AdjunctionData c =
        discriminant_divisor(build_pair(ladder_fan(3), generic_anticanonical(ladder_fan(3), 3)), project_to_p1(ladder_fan(3)));
    CHECK(c.discriminant.coeffs == RationalVector{Rational(2, 3), 0});
    CHECK(*c.moduli_degree == Rational(4, 3));

    CHECK(kind_of([&] { discriminant_divisor(build_pair(ladder_fan(2)), f2); }) == ErrorKind::NotRelativelyTrivial);
}

TEST_CASE("relative triviality")
{
    ToricContraction f2 = project_to_p1(ladder_fan(2));
    auto a = relative_triviality(build_pair(ladder_fan(2), toric_boundary(ladder_fan(2))), f2);
    REQUIRE(a);
    CHECK(linalg::is_zero(*a));
    CHECK_FALSE(relative_triviality(build_pair(ladder_fan(2)), f2));
    auto c = relative_triviality(build_pair(ladder_fan(2), generic_anticanonical(ladder_fan(2), 2)), f2);
    REQUIRE(c);
    CHECK(linalg::is_zero(*c));

    // B = Delta - f^*(1/2 {0}) descends to -1/2 {0}, which is not zero in Cl(P1).
    BoundaryData b = toric_boundary(ladder_fan(2));
    b.invariant.coeffs[0] = 0;
    auto d = relative_triviality(build_pair(ladder_fan(2), b), f2);
    REQUIRE(d);
    CHECK_FALSE(ClassGroup(p1()).is_zero(*d));
    RationalVector shifted = *d;
    shifted[0] += Rational(1, 2);
    CHECK(ClassGroup(p1()).is_zero(shifted));
}

TEST_CASE("pullback of target divisors")
{
    ToricContraction f = x2p1_to_p1p1();
    RationalVector up = pullback_divisor(f, {1, 0, 0, 0});
    // Rays of X2 x P1: (2,1,0) (0,1,0) (-1,0,0) (0,-1,0) (0,0,1) (0,0,-1).
    CHECK(up == RationalVector{2, 0, 0, 0, 0, 0});
}

TEST_CASE("infimum of base thresholds")
{
    ToricPair x3 = build_pair(ladder_fan(3), generic_anticanonical(ladder_fan(3), 3));
    BaseInfimum a = base_lct_infimum(x3, project_to_p1(ladder_fan(3)), 12);
    CHECK(a.delta == Rational(1, 3));
    CHECK(a.witness == LatticeVector{1});
    CHECK(a.exact_agrees_with_oracle);

    ToricContraction f = x2p1_to_p1p1();
    BaseInfimum b = base_lct_infimum(build_pair(x2p1(), toric_boundary(x2p1())), f, 12);
    CHECK(b.delta == 0);
    CHECK(b.exact_agrees_with_oracle);

    ToricPair half = build_pair(x2p1(), generic_anticanonical(x2p1(), 2));
    BaseInfimum c = base_lct_infimum(half, f, 12);
    CHECK(c.delta == Rational(1, 2));
    CHECK(c.witness == LatticeVector{1, 0});
    CHECK(c.exact_agrees_with_oracle);
    LctResult diag = lct_over_direction(half, f, {1, 1});
    CHECK(diag.threshold == Rational(3, 2));
    CHECK(diag.witness == LatticeVector{2, 1, 2});

    CHECK(kind_of([&] { base_lct_infimum(build_pair(x2p1()), f, 12); }) == ErrorKind::NotRelativelyTrivial);
}

TEST_CASE("Fano contractions and Mori fibre spaces")
{
    ToricContraction f2 = project_to_p1(ladder_fan(2));
    CHECK(is_fano_contraction(build_pair(ladder_fan(2)), f2));
    CHECK(is_mori_fiber_space(build_pair(ladder_fan(2)), f2));

    ToricContraction g = project_to_p1(hirzebruch_fan(2));
    CHECK(is_fano_contraction(build_pair(hirzebruch_fan(2)), g));
    CHECK(is_mori_fiber_space(build_pair(hirzebruch_fan(2)), g));

    ToricContraction h = contract_to_point(hirzebruch_fan(1));
    CHECK(is_fano_contraction(build_pair(hirzebruch_fan(1)), h));
    CHECK_FALSE(is_mori_fiber_space(build_pair(hirzebruch_fan(1)), h));

    ToricContraction iso = validate_contraction(ladder_fan(2), ladder_fan(2), IntegerMatrix::identity(2));
    CHECK_FALSE(is_mori_fiber_space(build_pair(ladder_fan(2)), iso));
}

TEST_CASE("adjunction towers")
{
    ToricContraction g = validate_contraction(x2p1(), ladder_fan(2), IntegerMatrix{{1, 0, 0}, {0, 1, 0}});
    ToricContraction h = project_to_p1(ladder_fan(2));

    TowerReport a = tower_consistency_check(build_pair(x2p1(), toric_boundary(x2p1())), g, h);
    CHECK(a.consistent);
    REQUIRE(a.rows.size() == 2);
    for (const auto& row : a.rows)
        CHECK(1 - row.composite == 1);

    BoundaryData half{toric_boundary(x2p1()).invariant.scaled(Rational(1, 2)), {}};
    TowerReport b = tower_consistency_check(build_pair(x2p1(), half), g, h);
    CHECK(b.consistent);
    for (const auto& row : b.rows)
        CHECK(row.composite == row.via_intermediate);

    ToricContraction id = validate_contraction(ladder_fan(2), ladder_fan(2), IntegerMatrix::identity(2));
    ToricPair x2 = build_pair(ladder_fan(2), invariant({Rational(1, 3), 0, Rational(1, 2), 0}));
    CHECK(tower_consistency_check(x2, id, h).consistent);
}

TEST_CASE("lct matches brute force on fixtures")
{
    for (const auto& name : fixture_names()) {
        Fixture fx = fixture(name);
        if (!fx.contraction || fx.contraction->target().rank() == 0)
            continue;
        for (const auto& w : fx.contraction->target().rays()) {
            LctResult r = lct_over_direction(fx.pair, *fx.contraction, w);
            auto brute = oracle::brute_lct(fx.pair, *fx.contraction, w, 6);
            REQUIRE(brute);
            CHECK(r.threshold == *brute);
            // Homogeneity: multiples of the witness give the same ratio.
            LatticeVector twice = r.witness * 2;
            CHECK(fx.pair.a(twice) / Rational(2 * r.multiplicity) == r.threshold);
        }
    }
}

TEST_CASE("discriminant monotonicity and range")
{
    std::mt19937_64 rng(31);
    auto coeff = [&] { return Rational(long(rng() % 4), 3); };
    for (int trial = 0; trial < 30; ++trial) {
        Instance inst = generate_family(FamilySpec{"random", 0, 0, rng(), 1}).front();
        const Fan& f = inst.pair.fan();
        RationalVector b1(f.ray_count()), b2(f.ray_count());
        for (std::size_t v = 0; v < f.ray_count(); ++v) {
            b1[v] = coeff();
            b2[v] = std::max(b1[v], coeff());
        }
        ToricPair p1_ = build_pair(f, invariant(b1));
        ToricPair p2_ = build_pair(f, invariant(b2));
        auto t1 = discriminant_thresholds(p1_, inst.contraction);
        auto t2 = discriminant_thresholds(p2_, inst.contraction);
        for (std::size_t w = 0; w < t1.size(); ++w) {
            CHECK(t2[w].threshold <= t1[w].threshold);
            CHECK(1 - t1[w].threshold <= 1 - t2[w].threshold);
            CHECK(1 - t2[w].threshold >= 0);
            CHECK(1 - t2[w].threshold <= 1);
        }
    }
}

TEST_CASE("averaging scales the moduli class")
{
    for (long k = 2; k <= 6; ++k) {
        Fan f = ladder_fan(k);
        ToricContraction c = project_to_p1(f);
        BoundaryData b = generic_anticanonical(f, k);
        AdjunctionData base = discriminant_divisor(build_pair(f, b), c);
        for (Rational alpha : {Rational(1, 3), Rational(3, 4)}) {
            AdjunctionData avg = discriminant_divisor(build_pair(f, average_boundary(b, f, alpha)), c);
            for (std::size_t i = 0; i < avg.moduli_class.size(); ++i)
                CHECK(avg.moduli_class[i] == alpha * base.moduli_class[i]);
            CHECK(avg.discriminant[0] == 1 - alpha * Rational(1, k));
        }
    }
}

TEST_CASE("delta bounds every ray threshold")
{
    for (const auto& inst : generate_family(FamilySpec{"fixtures"})) {
        if (inst.contraction.target().rank() == 0)
            continue;
        BaseInfimum b = base_lct_infimum(inst.pair, inst.contraction, 6);
        for (const auto& r : discriminant_thresholds(inst.pair, inst.contraction))
            CHECK(b.delta <= r.threshold);
        CHECK(b.exact_agrees_with_oracle);
    }
}

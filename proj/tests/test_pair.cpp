#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "toric/catalog.hpp"
#include "toric/pair.hpp"

using namespace toric;

namespace {

Fan p1() { return projective_space_fan(1); }
Fan p2() { return projective_space_fan(2); }
Fan p112() { return Fan(2, {{1, 0}, {0, 1}, {-1, -2}}, {{0, 1}, {1, 2}, {2, 0}}); }
Fan qc3() { return Fan(3, {{1, 0, 1}, {0, 1, 1}, {-1, 0, 1}, {0, -1, 1}}, {{0, 1, 2, 3}}); }

InvariantDivisor boundary_of(const Fan& f) { return InvariantDivisor::boundary(f.ray_count()); }

BoundaryData invariant(const RationalVector& coeffs) { return {InvariantDivisor{coeffs}, {}}; }

BoundaryData generic_anticanonical(const Fan& f, long m)
{
    return {InvariantDivisor::zero(f.ray_count()), {{Rational(1, m), boundary_of(f).scaled(m)}}};
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

}  // namespace

TEST_CASE("build pair examples")
{
    ToricPair p = build_pair(p2());
    for (std::size_t c = 0; c < p.fan().cone_count(); ++c)
        for (auto v : p.fan().max_cones()[c])
            CHECK(p.a_on_cone(c, p.fan().ray(v)) == 1);

    BoundaryData qc{InvariantDivisor{{0, 1, 1, 1}}, {}};
    CHECK(kind_of([&] { build_pair(qc3(), qc); }) == ErrorKind::NotQCartier);
    try {
        build_pair(qc3(), qc);
    } catch (const ToricError& e) {
        CHECK(std::string(e.what()).find("cone 0") != std::string::npos);
    }

    // P(1,1,2) is Gorenstein: the a-function of (P112, 0) is integral, while
    // the single divisor of the ray (-1,-2) is only Q-Cartier.
    ToricPair q = build_pair(p112());
    auto cone = q.fan().cone_containing(LatticeVector{1, -1});
    REQUIRE(cone);
    CHECK(q.a_function().covector(*cone) == RationalVector{1, -1});
    CHECK(is_cartier(p112(), boundary_of(p112())));
    CHECK_FALSE(is_cartier(p112(), InvariantDivisor{{0, 0, 1}}));
    CHECK(*cartier_index(p112(), InvariantDivisor{{0, 0, 1}}) == 2);
}

TEST_CASE("boundary coefficient checks")
{
    CHECK(kind_of([&] { build_pair(p2(), invariant({Rational(3, 2), 0, 0})); }) == ErrorKind::CoefficientOutOfRange);
    BoundaryData g{InvariantDivisor::zero(3), {{Rational(3, 2), boundary_of(p2())}}};
    CHECK(kind_of([&] { build_pair(p2(), g); }) == ErrorKind::CoefficientOutOfRange);
    // -K on F3 is not nef, so it is not base point free.
    BoundaryData f3{InvariantDivisor::zero(4), {{Rational(1, 2), boundary_of(hirzebruch_fan(3))}}};
    CHECK(kind_of([&] { build_pair(hirzebruch_fan(3), f3); }) == ErrorKind::NotBasePointFree);
    ToricPair sub = build_pair(p1(), invariant({-1, -1}));
    CHECK(sub.is_sub_pair());
    CHECK_FALSE(build_pair(p1()).is_sub_pair());
}

TEST_CASE("log discrepancy examples")
{
    CHECK(log_discrepancy_at(build_pair(p2()), {1, 1}) == 2);
    CHECK(log_discrepancy_at(build_pair(p112()), {0, -1}) == 1);
    CHECK(log_discrepancy_at(build_pair(p2(), invariant({1, 1, 1})), {1, 1}) == 0);
    Fan half(2, {{1, 0}, {0, 1}}, {{0, 1}});
    CHECK(kind_of([&] { log_discrepancy_at(build_pair(half), {-1, 0}); }) == ErrorKind::NotInSupport);
}

TEST_CASE("mld examples")
{
    MldReport a = mld_and_eps_check(build_pair(p2()), 1);
    CHECK(a.mld_toric == 1);
    CHECK(a.eps_lc);

    MldReport b = mld_and_eps_check(build_pair(ladder_fan(3)), Rational(1, 2));
    CHECK(b.mld_toric == Rational(2, 3));
    CHECK(b.witness == LatticeVector{1, 0});

    MldReport c = mld_and_eps_check(build_pair(ladder_fan(2), generic_anticanonical(ladder_fan(2), 2)), Rational(1, 2));
    CHECK(c.mld_toric == 1);
    CHECK(c.eps_lc);
    REQUIRE(c.generic_bound);
    CHECK(*c.generic_bound == Rational(1, 2));
    CHECK(c.equivariant_only);
    CHECK_FALSE(mld_and_eps_check(build_pair(ladder_fan(2), generic_anticanonical(ladder_fan(2), 2)), 1).eps_lc);

    MldReport d = mld_and_eps_check(build_pair(p2(), invariant({1, 0, 0})), Rational(1, 10));
    CHECK(d.mld_toric == 0);
    CHECK_FALSE(d.klt);
    CHECK(d.witness == LatticeVector{1, 0});
    CHECK_FALSE(d.eps_lc);
}

TEST_CASE("ladder mld closed form")
{
    for (long k = 2; k <= 12; ++k) {
        Rational expected = std::min(Rational(1), Rational(2, k));
        CHECK(mld_and_eps_check(build_pair(ladder_fan(k)), expected).mld_toric == expected);
    }
}

TEST_CASE("mld agrees with brute force enumeration")
{
    std::vector<ToricPair> pairs = {build_pair(p2()), build_pair(p112()), build_pair(ladder_fan(5)),
                                    build_pair(hirzebruch_fan(2)),
                                    build_pair(ladder_fan(4), invariant({Rational(1, 2), 0, Rational(1, 3), 0})),
                                    build_pair(weighted_projective_fan({1, 2, 5})),
                                    build_pair(weighted_projective_fan({2, 3, 5}))};
    for (const auto& p : pairs) {
        MldReport r = mld_and_eps_check(p, Rational(1, 100));
        auto brute = oracle::brute_mld(p, 12);
        REQUIRE(brute);
        CHECK(r.mld_toric == *brute);
        CHECK(log_discrepancy_at(p, r.witness) == r.mld_toric);
        Rational ray_min = 1;
        for (const auto& b : p.boundary().invariant.coeffs)
            ray_min = std::min(ray_min, Rational(1 - b));
        CHECK(r.mld_toric <= ray_min);
    }
}

TEST_CASE("a-function is linear on cones")
{
    std::mt19937_64 rng(12);
    std::uniform_int_distribution<long> dist(0, 4);
    for (const Fan& f : {ladder_fan(3), p112(), hirzebruch_fan(1), weighted_projective_fan({1, 2, 3})}) {
        ToricPair p = build_pair(f, invariant(RationalVector(f.ray_count(), Rational(1, 3))));
        for (std::size_t c = 0; c < f.cone_count(); ++c) {
            const auto& gens = f.cone(c).generators();
            for (int trial = 0; trial < 10; ++trial) {
                LatticeVector u(f.rank()), w(f.rank());
                for (const auto& g : gens) {
                    u = u + g * dist(rng);
                    w = w + g * dist(rng);
                }
                if (u.is_zero() || w.is_zero())
                    continue;
                CHECK(p.a(u + w) == p.a(u) + p.a(w));
            }
        }
    }
}

TEST_CASE("averaged a-function scales")
{
    for (long k = 2; k <= 6; ++k) {
        Fan f = ladder_fan(k);
        ToricPair base = build_pair(f);
        for (Rational alpha : {Rational(1, 3), Rational(1, 2), Rational(5, 7)}) {
            ToricPair avg = build_pair(f, average_boundary(generic_anticanonical(f, k), f, alpha));
            oracle::for_each_point(2, 4, [&](const LatticeVector& u) {
                if (!u.is_zero())
                    CHECK(avg.a(u) == alpha * base.a(u));
            });
        }
    }
}

TEST_CASE("generic members have multiplicity zero along toric valuations")
{
    // For a Cartier nef class c the polytope P_c = {m : <m,v> >= -c_v} has
    // min <u, m> over its lattice points equal to the support function at u.
    std::vector<std::pair<Fan, InvariantDivisor>> cases = {
        {p2(), boundary_of(p2())},
        {ladder_fan(2), boundary_of(ladder_fan(2))},
        {ladder_fan(3), boundary_of(ladder_fan(3)).scaled(3)},
        {hirzebruch_fan(2), boundary_of(hirzebruch_fan(2))},
        {p112(), boundary_of(p112())},
        {hirzebruch_fan(1), InvariantDivisor{{1, 0, 0, 0}}},
    };
    for (const auto& [f, c] : cases) {
        REQUIRE(is_cartier(f, c));
        REQUIRE(positivity_check(build_pair(f), c, Positivity::nef));
        SupportFunction psi = support_function(f, c);
        std::vector<LatticeVector> polytope;
        oracle::for_each_point(2, 8, [&](const LatticeVector& m) {
            for (std::size_t v = 0; v < f.ray_count(); ++v)
                if (Rational(m.dot(f.ray(v))) < -c[v])
                    return;
            polytope.push_back(m);
        });
        REQUIRE_FALSE(polytope.empty());
        oracle::for_each_point(2, 3, [&](const LatticeVector& u) {
            if (u.is_zero() || !u.is_primitive())
                return;
            Integer best = polytope.front().dot(u);
            for (const auto& m : polytope)
                best = std::min(best, m.dot(u));
            CHECK(Rational(best) == psi(f, u));
        });
    }
}

TEST_CASE("positivity examples")
{
    CHECK(positivity_check(build_pair(p2()), boundary_of(p2()), Positivity::ample));
    CHECK(positivity_check(build_pair(ladder_fan(2)), boundary_of(ladder_fan(2)), Positivity::ample));

    ToricContraction f = project_to_p1(ladder_fan(2));
    CHECK(positivity_check(build_pair(ladder_fan(2)), boundary_of(ladder_fan(2)), Positivity::ample, &f));
    std::vector<LatticeVector> contracted;
    for (const auto& w : contracted_walls(ladder_fan(2), f))
        for (auto v : w.rays)
            contracted.push_back(ladder_fan(2).ray(v));
    std::sort(contracted.begin(), contracted.end());
    CHECK(contracted == std::vector<LatticeVector>{{-1, 0}, {2, 1}});

    CHECK(positivity_check(build_pair(hirzebruch_fan(2)), boundary_of(hirzebruch_fan(2)), Positivity::nef));
    CHECK_FALSE(positivity_check(build_pair(hirzebruch_fan(2)), boundary_of(hirzebruch_fan(2)), Positivity::ample));
    CHECK_FALSE(positivity_check(build_pair(hirzebruch_fan(3)), boundary_of(hirzebruch_fan(3)), Positivity::nef));

    Fan nonsimplicial = qc3();
    CHECK(kind_of([&] {
              positivity_check(build_pair(nonsimplicial), boundary_of(nonsimplicial), Positivity::nef);
          }) == ErrorKind::NotSimplicial);
}

TEST_CASE("ample implies nef")
{
    std::mt19937_64 rng(6);
    std::uniform_int_distribution<long> dist(-2, 3);
    for (const Fan& f : {p2(), ladder_fan(3), hirzebruch_fan(1), hirzebruch_fan(2), p112()}) {
        for (int trial = 0; trial < 25; ++trial) {
            InvariantDivisor d = InvariantDivisor::zero(f.ray_count());
            for (auto& x : d.coeffs)
                x = dist(rng);
            ToricPair p = build_pair(f);
            if (positivity_check(p, d, Positivity::ample))
                CHECK(positivity_check(p, d, Positivity::nef));
        }
    }
}

TEST_CASE("relative Picard rank")
{
    CHECK(relative_picard_rank_one(build_pair(ladder_fan(2)), project_to_p1(ladder_fan(2))));
    Fan pp = product_fan(p1(), p1());
    CHECK(relative_picard_rank_one(build_pair(pp), project_to_p1(pp)));
    CHECK(relative_picard_rank_one(build_pair(hirzebruch_fan(1)), project_to_p1(hirzebruch_fan(1))));
    CHECK_FALSE(relative_picard_rank_one(build_pair(hirzebruch_fan(1)), contract_to_point(hirzebruch_fan(1))));
    CHECK(relative_picard_rank_one(build_pair(p2()), contract_to_point(p2())));
}

TEST_CASE("averaging boundaries")
{
    Fan f = ladder_fan(2);
    BoundaryData b = generic_anticanonical(f, 2);
    b.invariant.coeffs[1] = Rational(1, 3);
    CHECK(average_boundary(b, f, 1) == b);

    BoundaryData zero = average_boundary(b, f, 0);
    CHECK(zero.invariant == boundary_of(f));
    CHECK(zero.generic.empty());

    BoundaryData half = average_boundary(BoundaryData{InvariantDivisor::zero(4), {}}, f, Rational(1, 2));
    CHECK(half.invariant.coeffs == RationalVector(4, Rational(1, 2)));

    BoundaryData mixed = average_boundary(b, f, Rational(1, 4));
    CHECK(mixed.invariant[1] == Rational(1, 4) * Rational(1, 3) + Rational(3, 4));
    REQUIRE(mixed.generic.size() == 1);
    CHECK(mixed.generic[0].b == Rational(1, 8));

    CHECK(kind_of([&] { average_boundary(b, f, Rational(3, 2)); }) == ErrorKind::AlphaOutOfRange);
    CHECK(kind_of([&] { average_boundary(b, f, -1); }) == ErrorKind::AlphaOutOfRange);
}

TEST_CASE("class group presentation")
{
    ClassGroup cl(p1());
    CHECK(cl.rank() == 1);
    CHECK(cl.is_zero({1, -1}));
    CHECK_FALSE(cl.is_zero({1, 1}));
    ClassGroup f1(hirzebruch_fan(1));
    CHECK(f1.rank() == 2);
    ClassGroup point(torus_fan(0));
    CHECK(point.rank() == 0);
}

TEST_CASE("terminal checks")
{
    CHECK(is_terminal(build_pair(p2())));
    CHECK_FALSE(is_terminal(build_pair(ladder_fan(2))));
    CHECK_FALSE(is_terminal(build_pair(p112())));
    CHECK(is_terminal(build_pair(projective_space_fan(3))));
    auto e = exceptional_point_below(build_pair(p112()), 1);
    REQUIRE(e);
    CHECK(log_discrepancy_at(build_pair(p112()), *e) <= 1);
}

TEST_CASE("cartier index")
{
    for (long k = 2; k <= 9; ++k) {
        auto m = cartier_index(ladder_fan(k), boundary_of(ladder_fan(k)));
        REQUIRE(m);
        CHECK(*m == k / std::gcd(k, 2L));
    }
    CHECK_FALSE(cartier_index(qc3(), InvariantDivisor{{0, 1, 1, 1}}));
}

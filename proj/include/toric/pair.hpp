#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "toric/fan.hpp"
#include "toric/linalg.hpp"
#include "toric/numeric.hpp"

namespace toric {

class ToricContraction;

/// Torus-invariant Q-divisor: one coefficient per ray of a fan.
struct InvariantDivisor
{
    RationalVector coeffs;

    static InvariantDivisor zero(std::size_t rays) { return {RationalVector(rays, Rational(0))}; }
    /// The toric boundary: coefficient one on every ray.
    static InvariantDivisor boundary(std::size_t rays) { return {RationalVector(rays, Rational(1))}; }

    const Rational& operator[](std::size_t ray) const { return coeffs.at(ray); }
    std::size_t size() const noexcept { return coeffs.size(); }
    InvariantDivisor scaled(const Rational& s) const;

    friend bool operator==(const InvariantDivisor&, const InvariantDivisor&) = default;
};

/// Piecewise-linear function given by one covector per maximal cone.
/// The value at the ray v of a divisor D is -(coefficient of v in D).
class SupportFunction
{
public:
    SupportFunction() = default;
    explicit SupportFunction(std::vector<RationalVector> covectors) : covectors_(std::move(covectors)) {}

    const std::vector<RationalVector>& covectors() const noexcept { return covectors_; }
    const RationalVector& covector(std::size_t cone) const { return covectors_.at(cone); }

    Rational on_cone(std::size_t cone, const LatticeVector& x) const { return x.dot(covectors_.at(cone)); }
    Rational on_cone(std::size_t cone, const RationalVector& x) const { return linalg::dot(covectors_.at(cone), x); }
    /// Throws NotInSupport outside the fan.
    Rational operator()(const Fan& fan, const LatticeVector& x) const;

private:
    std::vector<RationalVector> covectors_;
};

/// Solves, cone by cone, for covectors taking the given values on the rays.
/// Throws NotQCartier naming the first cone where no covector exists.
SupportFunction support_function_from_values(const Fan& fan, const RationalVector& ray_values);
SupportFunction support_function(const Fan& fan, const InvariantDivisor& d);

/// True when integral covectors exist on every maximal cone.
bool is_cartier(const Fan& fan, const InvariantDivisor& d);
/// Smallest m >= 1 with m*d Cartier; nullopt when d is not Q-Cartier.
std::optional<Integer> cartier_index(const Fan& fan, const InvariantDivisor& d);

/// General member of the linear system |class|; stands in for a non-invariant
/// boundary component with multiplicity zero along every toric valuation.
struct GenericMember
{
    Rational b;
    InvariantDivisor divisor_class;

    friend bool operator==(const GenericMember&, const GenericMember&) = default;
};

struct BoundaryData
{
    InvariantDivisor invariant;
    std::vector<GenericMember> generic;

    friend bool operator==(const BoundaryData&, const BoundaryData&) = default;
};

/// Toric pair (X, B): fan, boundary and the log-discrepancy function a with
/// a(v) = 1 - b_v on rays, linear on each maximal cone.
class ToricPair
{
public:
    const Fan& fan() const noexcept { return fan_; }
    const BoundaryData& boundary() const noexcept { return boundary_; }
    const SupportFunction& a_function() const noexcept { return a_; }
    /// Some invariant coefficient is negative.
    bool is_sub_pair() const noexcept { return sub_pair_; }
    bool has_generic_members() const noexcept { return !boundary_.generic.empty(); }

    Rational a(const LatticeVector& x) const { return a_(fan_, x); }
    Rational a_on_cone(std::size_t cone, const LatticeVector& x) const { return a_.on_cone(cone, x); }

    /// Coefficients of K_X + B in the ray basis, generic members by their class.
    RationalVector log_canonical_class() const;

private:
    friend ToricPair build_pair(const Fan&, const BoundaryData&);

    Fan fan_;
    BoundaryData boundary_;
    SupportFunction a_;
    bool sub_pair_ = false;
};

ToricPair build_pair(const Fan& f, const BoundaryData& b);
inline ToricPair build_pair(const Fan& f) { return build_pair(f, {InvariantDivisor::zero(f.ray_count()), {}}); }

/// Value of the a-function at a lattice point of the support.
Rational log_discrepancy_at(const ToricPair& p, const LatticeVector& u);

struct MldReport
{
    Rational mld_toric;
    LatticeVector witness;       ///< lexicographically smallest minimizer
    bool klt = true;             ///< false when a vanishes on a ray (then mld_toric = 0)
    std::optional<Rational> generic_bound;  ///< min over generic members of 1 - b
    Rational epsilon;
    bool eps_lc = false;
    bool equivariant_only = false;  ///< generic members present: value is the equivariant bound
};

MldReport mld_and_eps_check(const ToricPair& p, const Rational& eps);

/// Lexicographically smallest lattice point of the support that is not a ray
/// generator and has a <= level.  Terminal (B = 0) means none at level 1.
std::optional<LatticeVector> exceptional_point_below(const ToricPair& p, const Rational& level);
bool is_terminal(const ToricPair& p);

enum class Positivity { nef, ample };

/// Walls whose two maximal cones map into one cone of the contraction target.
std::vector<Wall> contracted_walls(const Fan& fan, const ToricContraction& f);

bool positivity_check(const ToricPair& p, const InvariantDivisor& d, Positivity mode,
                      const ToricContraction* relative_to = nullptr);

bool relative_picard_rank_one(const ToricPair& p, const ToricContraction& f);

BoundaryData average_boundary(const BoundaryData& b, const Fan& delta_fan, const Rational& alpha);

/// Class group Cl(X) (x) Q presented as Q^rays modulo principal divisors.
class ClassGroup
{
public:
    explicit ClassGroup(const Fan& fan);
    /// Canonical representative: zero at the pivot columns of the principal span.
    RationalVector reduce(const RationalVector& divisor) const;
    bool is_zero(const RationalVector& divisor) const { return linalg::is_zero(reduce(divisor)); }
    std::size_t rank() const noexcept { return rays_ - principal_.pivots.size(); }

private:
    std::size_t rays_;
    linalg::Echelon principal_;
};

}  // namespace toric

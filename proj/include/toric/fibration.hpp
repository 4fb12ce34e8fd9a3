#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "toric/fan.hpp"
#include "toric/lattice.hpp"
#include "toric/pair.hpp"

namespace toric {

/// Toric contraction X -> Z: a surjective lattice map pi sending every source
/// cone into a target cone and covering every invariant divisor of Z.
class ToricContraction
{
public:
    const Fan& source() const noexcept { return source_; }
    const Fan& target() const noexcept { return target_; }
    const IntegerMatrix& pi() const noexcept { return pi_; }
    std::size_t relative_dimension() const noexcept { return source_.rank() - target_.rank(); }

    /// Index of a target maximal cone containing pi(x), if any.
    std::optional<std::size_t> target_cone_of(const std::vector<LatticeVector>& source_points) const;

private:
    friend ToricContraction validate_contraction(const Fan&, const Fan&, const IntegerMatrix&);

    Fan source_;
    Fan target_;
    IntegerMatrix pi_;
};

/// Throws ConeNotMapped, RayNotCovered, NotDominant, or a NotSurjectiveError of
/// kind FinitePart carrying the image lattice and its index.
ToricContraction validate_contraction(const Fan& src, const Fan& tgt, const IntegerMatrix& pi);

struct SplitData
{
    IntegerMatrix section;  ///< d x e, pi * section = identity
    IntegerMatrix basis;    ///< d x d unimodular: kernel basis then section columns
};

struct FiberData
{
    IntegerMatrix kernel;  ///< d x r, columns a basis of the saturated kernel
    Fan fiber;             ///< fan of the general fibre in kernel coordinates, rays sorted
    std::vector<std::size_t> source_rays;  ///< source ray index of each fibre ray
    std::optional<SplitData> split;        ///< present when the target is a torus
};

FiberData general_fiber_and_split(const ToricContraction& f);

struct FiberComponent
{
    std::size_t ray;
    LatticeVector generator;
    Integer multiplicity;
};

std::vector<FiberComponent> fiber_multiplicities_over(const ToricContraction& f, const LatticeVector& w);

struct LctResult
{
    LatticeVector direction;
    Rational threshold;
    LatticeVector witness;   ///< extremal section ray attaining the threshold
    Integer multiplicity;    ///< pi(witness) = multiplicity * direction
};

/// lc threshold of f^*D_w over the generic point of the divisor of w.
LctResult lct_over_direction(const ToricPair& p, const ToricContraction& f, const LatticeVector& w);

/// Threshold per target ray, in target ray order.  No triviality requirement.
std::vector<LctResult> discriminant_thresholds(const ToricPair& p, const ToricContraction& f);

/// Class D_Z in Cl(Z) (x) Q (canonical representative) with K_X + B ~_Q f^*D_Z.
std::optional<RationalVector> relative_triviality(const ToricPair& p, const ToricContraction& f);

/// Pullback of an invariant Q-Cartier divisor on the target, in source ray coordinates.
RationalVector pullback_divisor(const ToricContraction& f, const RationalVector& target_divisor);

struct AdjunctionData
{
    InvariantDivisor discriminant;      ///< on the target fan
    RationalVector moduli_class;        ///< canonical representative in Cl(Z) (x) Q
    RationalVector descended_class;     ///< D_Z with K_X + B ~ f^*D_Z
    std::vector<LctResult> witnesses;   ///< per target ray
    std::optional<Rational> moduli_degree;  ///< for rank-one targets
};

AdjunctionData discriminant_divisor(const ToricPair& p, const ToricContraction& f);

struct BaseInfimum
{
    Rational delta;
    LatticeVector witness;
    bool exact_agrees_with_oracle = false;
    Rational oracle_delta;
    LatticeVector oracle_witness;
};

/// Infimum of lct over all primitive directions of the target lattice.
BaseInfimum base_lct_infimum(const ToricPair& p, const ToricContraction& f, int box);

bool is_fano_contraction(const ToricPair& p, const ToricContraction& f);
bool is_mori_fiber_space(const ToricPair& p, const ToricContraction& f);

struct TowerRow
{
    LatticeVector direction;
    Rational composite;
    Rational via_intermediate;
    bool equal = false;
};

struct TowerReport
{
    std::vector<TowerRow> rows;
    bool consistent = true;
};

/// Compares lct over each ray of Z computed on X -> Z with the one computed on
/// V -> Z for the pair (V, discriminant of X -> V).
TowerReport tower_consistency_check(const ToricPair& p, const ToricContraction& g, const ToricContraction& h);

ToricContraction compose(const ToricContraction& g, const ToricContraction& h);

}  // namespace toric

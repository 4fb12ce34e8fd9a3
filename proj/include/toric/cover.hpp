#pragma once

#include <vector>

#include "toric/fan.hpp"
#include "toric/fibration.hpp"
#include "toric/lattice.hpp"
#include "toric/pair.hpp"

namespace toric {

/// Finite cover X' -> X given by a finite-index sublattice N' of N with the
/// same cones.
struct CoverData
{
    Sublattice sublattice;
    Integer degree;                        ///< |N / N'|
    IntegerMatrix inclusion;               ///< columns: basis of N' in N coordinates
    Fan fan;                               ///< covering fan in N' coordinates
    std::vector<LatticeVector> ambient_rays;  ///< primitive generators in N', written in N
    std::vector<Integer> ray_lengths;      ///< k_r with ambient_rays[r] = k_r * v_r
};

/// Throws InfiniteIndex when the sublattice has lower rank.
CoverData quotient_by_sublattice(const Fan& f, const Sublattice& sub);

/// Pair on the cover with the same a-function: b' = 1 - k(1 - b).  Generic
/// member classes are pulled back.  Negative coefficients give a sub-pair.
ToricPair crepant_pullback_pair(const ToricPair& p, const CoverData& c);

/// Positive primitive relation sum q_i v_i = 0 among the rays of a complete
/// fan with rank + 1 rays.  Throws WrongRayCount or NonPositiveRelation.
std::vector<Integer> fiber_relation_vector(const Fan& fiber);

struct PrCoverReport
{
    CoverData cover;
    std::vector<Integer> q;                 ///< relation of the lex-sorted fibre rays
    std::vector<LatticeVector> fiber_rays;  ///< in kernel coordinates
    IntegerMatrix psi;                      ///< r x r map e_i -> q_i v_i in kernel coordinates
    bool psi_isomorphism = false;           ///< psi carries the P^r fan onto the fibre fan
    bool fiber_is_projective_space = false; ///< recomputed fibre of the cover is P^r
    bool cover_simplicial = false;
    Integer fiber_index;                    ///< [N_F : <v_1..v_r>]
};

/// Cover of the source of a Mori fibre space whose general fibre becomes P^r.
/// Throws NotMFS.
PrCoverReport pr_cover(const ToricContraction& f, const ToricPair& p);

}  // namespace toric

namespace toric {

/// Star subdivision at u with the crepant boundary: the new ray gets
/// coefficient 1 - a(u), generic member classes are pulled back.
ToricPair crepant_subdivision(const ToricPair& p, const LatticeVector& u);

}  // namespace toric

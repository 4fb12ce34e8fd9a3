#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "toric/cone.hpp"
#include "toric/lattice.hpp"

namespace toric {

using RayIndexSet = std::vector<std::size_t>;  ///< sorted ray indices

/// Rational polyhedral fan: a ray list and maximal cones given by ray indices.
/// Construction checks only shapes and index ranges; `validate_fan` checks
/// the fan axioms.
class Fan
{
public:
    Fan() = default;
    Fan(std::size_t rank, std::vector<LatticeVector> rays, std::vector<RayIndexSet> max_cones);

    std::size_t rank() const noexcept { return rank_; }
    const std::vector<LatticeVector>& rays() const noexcept { return rays_; }
    const LatticeVector& ray(std::size_t i) const { return rays_.at(i); }
    std::size_t ray_count() const noexcept { return rays_.size(); }
    const std::vector<RayIndexSet>& max_cones() const noexcept { return cones_; }
    const Cone& cone(std::size_t i) const { return cone_objects_.at(i); }
    std::size_t cone_count() const noexcept { return cones_.size(); }

    std::optional<std::size_t> ray_index(const LatticeVector& v) const;
    /// Fan ray indices of the generators of face `face` of maximal cone `cone`.
    RayIndexSet face_rays(std::size_t cone, const std::vector<std::size_t>& face) const;
    /// Every cone of the fan (faces of maximal cones), deduplicated.
    std::vector<RayIndexSet> all_cones() const;

    /// First maximal cone (in list order) containing x.
    std::optional<std::size_t> cone_containing(const LatticeVector& x) const;
    std::optional<std::size_t> cone_containing(const RationalVector& x) const;
    bool in_support(const LatticeVector& x) const { return cone_containing(x).has_value(); }

    friend bool operator==(const Fan& a, const Fan& b)
    {
        return a.rank_ == b.rank_ && a.rays_ == b.rays_ && a.cones_ == b.cones_;
    }

private:
    std::size_t rank_ = 0;
    std::vector<LatticeVector> rays_;
    std::vector<RayIndexSet> cones_;
    std::vector<Cone> cone_objects_;
};

struct FanValidation
{
    bool valid = true;
    std::string axiom;    ///< name of the first violated axiom
    std::string message;
    std::optional<std::pair<std::size_t, std::size_t>> cones;  ///< offending maximal cones
};

FanValidation validate_fan(const Fan& f);
/// Throws InvalidFan carrying the validation message when `f` is not a fan.
const Fan& require_valid(const Fan& f);

struct FanFlags
{
    bool simplicial = false;
    bool smooth = false;
    bool complete = false;
};

FanFlags classify_fan(const Fan& f);

/// A codimension-one cone shared by two full-dimensional maximal cones.
struct Wall
{
    RayIndexSet rays;
    std::size_t left;
    std::size_t right;
};

std::vector<Wall> walls(const Fan& f);

Fan star_subdivide(const Fan& f, const LatticeVector& u);

/// c intersected with the preimage of `target` under pi, by double description.
Cone cone_preimage_section(const Cone& c, const IntegerMatrix& pi, const Cone& target);

/// True iff `map` carries the cones of f1 bijectively onto the cones of f2.
/// `map` must send Z^rank(f1) isomorphically onto `lattice` (default: all of
/// Z^rank(f2)); f2 is read as a fan in that lattice.
bool fans_isomorphic_under(const IntegerMatrix& map, const Fan& f1, const Fan& f2,
                           const std::optional<Sublattice>& lattice = std::nullopt);

/// Searches for a unimodular map carrying f1 onto f2.
std::optional<IntegerMatrix> find_fan_isomorphism(const Fan& f1, const Fan& f2);

Fan product_fan(const Fan& a, const Fan& b);
/// Fan of P^r: rays e_1..e_r and -(e_1+...+e_r).
Fan projective_space_fan(std::size_t r);
/// Fan of a point: rank 0, one zero cone.  Torus fans use `torus_fan`.
Fan torus_fan(std::size_t rank);

}  // namespace toric

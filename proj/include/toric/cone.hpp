#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "toric/lattice.hpp"
#include "toric/numeric.hpp"

namespace toric {

/// Output of the double description method: the cone equals
/// span(lineality) + cone(rays), rays extremal modulo the lineality space.
struct DoubleDescription
{
    std::vector<RationalVector> lineality;
    std::vector<LatticeVector> rays;  ///< primitive, sorted
};

/// Generators of {x in Q^dim : a.x >= 0 for a in inequalities, e.x = 0 for e in equations}.
DoubleDescription double_description(const std::vector<RationalVector>& inequalities,
                                     const std::vector<RationalVector>& equations,
                                     std::size_t dim);

/// Rational polyhedral cone given by primitive generators.  The inequality
/// description (equations of the linear span plus facet normals) is computed
/// once at construction.
class Cone
{
public:
    Cone() = default;
    /// Zero vectors are dropped; the rest are made primitive, deduplicated and sorted.
    Cone(std::size_t rank, const std::vector<LatticeVector>& generators);
    /// Like the constructor but keeps only the extremal generators.
    static Cone generated_by(std::size_t rank, const std::vector<LatticeVector>& generators);
    static Cone zero(std::size_t rank) { return Cone(rank, {}); }

    std::size_t ambient_rank() const noexcept { return rank_; }
    const std::vector<LatticeVector>& generators() const noexcept { return gens_; }
    /// Integral covectors cutting out the linear span.
    const std::vector<LatticeVector>& equations() const noexcept { return equations_; }
    /// Primitive inward facet normals, canonical modulo the equations.
    const std::vector<LatticeVector>& facet_normals() const noexcept { return facets_; }

    std::size_t dim() const noexcept { return rank_ - equations_.size(); }
    bool is_trivial() const noexcept { return gens_.empty(); }
    bool is_pointed() const;
    bool is_simplicial() const { return is_pointed() && gens_.size() == dim(); }
    bool is_extremal(std::size_t generator) const;

    bool contains(const LatticeVector& x) const;
    bool contains(const RationalVector& x) const;
    bool contains(const Cone& other) const;
    bool in_relative_interior(const LatticeVector& x) const;

    /// Generator indices lying on the facet with the given normal.
    std::vector<std::size_t> facet_generators(std::size_t facet) const;
    /// Every face as a sorted set of generator indices, from {} (the apex) to all.
    std::vector<std::vector<std::size_t>> faces() const;
    /// Generator indices of the smallest face containing x (x must lie in the cone).
    std::vector<std::size_t> minimal_face_of(const LatticeVector& x) const;

    Cone face(const std::vector<std::size_t>& generator_indices) const;
    Cone intersect(const Cone& other) const;
    bool has_face(const Cone& candidate) const;

    friend bool operator==(const Cone& a, const Cone& b) { return a.rank_ == b.rank_ && a.gens_ == b.gens_; }

private:
    void compute_inequalities();

    std::size_t rank_ = 0;
    std::vector<LatticeVector> gens_;
    std::vector<LatticeVector> equations_;
    std::vector<LatticeVector> facets_;
};

}  // namespace toric

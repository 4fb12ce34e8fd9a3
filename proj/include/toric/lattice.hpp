#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "toric/error.hpp"
#include "toric/numeric.hpp"

namespace toric {

/// Point of a lattice Z^n in standard coordinates.
class LatticeVector
{
public:
    LatticeVector() = default;
    explicit LatticeVector(std::size_t rank) : coords_(rank, Integer(0)) {}
    explicit LatticeVector(std::vector<Integer> coords) : coords_(std::move(coords)) {}
    LatticeVector(std::initializer_list<long> coords);

    std::size_t rank() const noexcept { return coords_.size(); }
    const Integer& operator[](std::size_t i) const { return coords_[i]; }
    Integer& operator[](std::size_t i) { return coords_[i]; }
    const std::vector<Integer>& coords() const noexcept { return coords_; }
    auto begin() const { return coords_.begin(); }
    auto end() const { return coords_.end(); }

    bool is_zero() const;
    Integer content() const;  ///< gcd of the coordinates, 0 for the zero vector
    bool is_primitive() const { return content() == 1; }

    LatticeVector operator+(const LatticeVector& o) const;
    LatticeVector operator-(const LatticeVector& o) const;
    LatticeVector operator-() const;
    LatticeVector operator*(const Integer& s) const;
    Integer dot(const LatticeVector& o) const;
    Rational dot(const RationalVector& covector) const;

    RationalVector to_rational() const;
    std::string str() const;

    friend bool operator==(const LatticeVector& a, const LatticeVector& b) { return a.coords_ == b.coords_; }
    /// Lexicographic order; used for every deterministic tie-break.
    friend bool operator<(const LatticeVector& a, const LatticeVector& b);

private:
    std::vector<Integer> coords_;
};

/// Clears denominators and divides by the content: the primitive lattice
/// vector on the ray through `v`.  Throws ZeroVector for v == 0.
LatticeVector primitive_on_ray(const RationalVector& v);

struct PrimitivePart
{
    LatticeVector primitive;
    Integer length;
};

/// v = length * primitive with primitive of content 1; direction preserved.
PrimitivePart primitive_part(const LatticeVector& v);

class IntegerMatrix
{
public:
    IntegerMatrix() = default;
    IntegerMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Integer(0)) {}
    IntegerMatrix(std::initializer_list<std::initializer_list<long>> rows);

    static IntegerMatrix identity(std::size_t n);
    static IntegerMatrix from_columns(std::span<const LatticeVector> columns, std::size_t rows);
    static IntegerMatrix from_rows(std::span<const LatticeVector> rows, std::size_t cols);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

    LatticeVector row(std::size_t r) const;
    LatticeVector column(std::size_t c) const;
    std::vector<LatticeVector> columns() const;

    IntegerMatrix transposed() const;
    IntegerMatrix operator*(const IntegerMatrix& o) const;
    LatticeVector operator*(const LatticeVector& v) const;
    RationalVector apply(const RationalVector& v) const;

    /// Exact determinant by fraction-free elimination; square matrices only.
    Integer determinant() const;
    std::size_t rank() const;
    bool is_unimodular() const;

    friend bool operator==(const IntegerMatrix& a, const IntegerMatrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    std::string str() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> data_;
};

/// U * m * V = D with D diagonal, d_i | d_{i+1}, d_i >= 0, U and V unimodular.
struct SmithForm
{
    IntegerMatrix U;
    IntegerMatrix D;
    IntegerMatrix V;

    std::vector<Integer> diagonal() const;
    std::size_t rank() const;
};

SmithForm snf_decompose(const IntegerMatrix& m);

/// Row Hermite normal form together with a unimodular T such that T * m = H.
/// Pivots are positive and entries above a pivot are reduced into [0, pivot).
struct HermiteForm
{
    IntegerMatrix H;
    IntegerMatrix T;
    std::size_t rank = 0;
};

HermiteForm hermite_decompose(const IntegerMatrix& m);

/// Nonzero rows of the row Hermite normal form of the rows of `vectors`.
std::vector<LatticeVector> hermite_reduce(std::span<const LatticeVector> vectors, std::size_t rank);

/// Basis of the saturated integer kernel, HNF-reduced (canonical).
std::vector<LatticeVector> kernel_basis(const IntegerMatrix& m);

/// Sublattice of Z^ambient generated by the columns of `generators`.
class Sublattice
{
public:
    Sublattice() = default;
    Sublattice(std::size_t ambient_rank, IntegerMatrix generators);
    static Sublattice full(std::size_t ambient_rank);
    static Sublattice spanned_by(std::span<const LatticeVector> generators, std::size_t ambient_rank);

    std::size_t ambient_rank() const noexcept { return ambient_; }
    std::size_t rank() const noexcept { return basis_.size(); }
    const IntegerMatrix& generators() const noexcept { return generators_; }
    /// HNF-reduced basis, one vector per rank.
    const std::vector<LatticeVector>& basis() const noexcept { return basis_; }
    IntegerMatrix basis_matrix() const;

    /// |Z^n / L| when finite.
    std::optional<Integer> index() const;
    bool contains(const LatticeVector& v) const;
    /// Coordinates of v in basis(); nullopt when v is not in the lattice.
    std::optional<LatticeVector> coordinates(const LatticeVector& v) const;
    /// Smallest k > 0 with k*v in the lattice; nullopt when v is outside the rational span.
    std::optional<Integer> lattice_length(const LatticeVector& v) const;
    Sublattice saturation() const;

private:
    std::optional<RationalVector> rational_coordinates(const LatticeVector& v) const;

    std::size_t ambient_ = 0;
    IntegerMatrix generators_;
    std::vector<LatticeVector> basis_;
};

/// Raised by split_extension (and contraction validation) when a lattice map
/// is not onto.  Carries the image lattice and its index when finite.
class NotSurjectiveError : public ToricError
{
public:
    NotSurjectiveError(ErrorKind kind, Sublattice image, std::optional<Integer> index, const std::string& message)
        : ToricError(kind, message), image_(std::move(image)), index_(std::move(index))
    {
    }

    const Sublattice& image() const noexcept { return image_; }
    const std::optional<Integer>& index() const noexcept { return index_; }

private:
    Sublattice image_;
    std::optional<Integer> index_;
};

/// For surjective m : Z^d -> Z^e returns S (d x e) with m * S = I_e.
/// The columns of S together with kernel_basis(m) form a basis of Z^d.
IntegerMatrix split_extension(const IntegerMatrix& m);

}  // namespace toric

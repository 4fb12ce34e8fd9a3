#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "toric/lattice.hpp"
#include "toric/numeric.hpp"

namespace toric::linalg {

/// Dense rational matrix stored as rows.  Used for the exact solves behind
/// support functions, double description and class-group bookkeeping.
using Matrix = std::vector<RationalVector>;

Matrix from_integer(const IntegerMatrix& m);
/// Matrix whose rows are the given lattice vectors.
Matrix rows_of(const std::vector<LatticeVector>& vectors);

struct Echelon
{
    Matrix reduced;                  ///< reduced row echelon form, zero rows dropped
    std::vector<std::size_t> pivots; ///< pivot column of each row
};

Echelon rref(Matrix a, std::size_t cols);
std::size_t rank(const Matrix& a, std::size_t cols);

/// Basis of {x : a x = 0} (one vector per free column).
std::vector<RationalVector> nullspace(const Matrix& a, std::size_t cols);

/// Some solution of a x = b (free variables set to 0), or nullopt.
std::optional<RationalVector> solve(const Matrix& a, const RationalVector& b, std::size_t cols);

/// Reduces v modulo the row space of `span_rows` to a canonical
/// representative: the entries at the pivot columns become zero.
RationalVector reduce_modulo(const Echelon& span, RationalVector v);

Rational dot(const RationalVector& a, const RationalVector& b);
bool is_zero(const RationalVector& v);

}  // namespace toric::linalg

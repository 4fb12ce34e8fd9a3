#include "toric/linalg.hpp"

#include <utility>

namespace toric::linalg {

Matrix from_integer(const IntegerMatrix& m)
{
    Matrix out(m.rows(), RationalVector(m.cols()));
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            out[r][c] = Rational(m(r, c));
    return out;
}

Matrix rows_of(const std::vector<LatticeVector>& vectors)
{
    Matrix out;
    out.reserve(vectors.size());
    for (const auto& v : vectors)
        out.push_back(v.to_rational());
    return out;
}

Echelon rref(Matrix a, std::size_t cols)
{
    Echelon out;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < a.size(); ++col) {
        std::size_t pivot = row;
        while (pivot < a.size() && a[pivot][col] == 0)
            ++pivot;
        if (pivot == a.size())
            continue;
        std::swap(a[row], a[pivot]);
        Rational inv = 1 / a[row][col];
        for (auto& x : a[row])
            x *= inv;
        for (std::size_t r = 0; r < a.size(); ++r) {
            if (r == row || a[r][col] == 0)
                continue;
            Rational factor = a[r][col];
            for (std::size_t c = col; c < cols; ++c)
                a[r][c] -= factor * a[row][c];
        }
        out.pivots.push_back(col);
        ++row;
    }
    a.resize(row);
    out.reduced = std::move(a);
    return out;
}

std::size_t rank(const Matrix& a, std::size_t cols)
{
    return rref(a, cols).pivots.size();
}

std::vector<RationalVector> nullspace(const Matrix& a, std::size_t cols)
{
    Echelon e = rref(a, cols);
    std::vector<bool> is_pivot(cols, false);
    for (auto p : e.pivots)
        is_pivot[p] = true;
    std::vector<RationalVector> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free])
            continue;
        RationalVector v(cols);
        v[free] = 1;
        for (std::size_t r = 0; r < e.pivots.size(); ++r)
            v[e.pivots[r]] = -e.reduced[r][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<RationalVector> solve(const Matrix& a, const RationalVector& b, std::size_t cols)
{
    Matrix aug = a;
    for (std::size_t r = 0; r < aug.size(); ++r) {
        aug[r].resize(cols);
        aug[r].push_back(b[r]);
    }
    Echelon e = rref(std::move(aug), cols + 1);
    RationalVector x(cols);
    for (std::size_t r = 0; r < e.pivots.size(); ++r) {
        if (e.pivots[r] == cols)
            return std::nullopt;
        x[e.pivots[r]] = e.reduced[r][cols];
    }
    return x;
}

RationalVector reduce_modulo(const Echelon& span, RationalVector v)
{
    for (std::size_t r = 0; r < span.pivots.size(); ++r) {
        Rational factor = v[span.pivots[r]];
        if (factor == 0)
            continue;
        for (std::size_t c = 0; c < v.size(); ++c)
            v[c] -= factor * span.reduced[r][c];
    }
    return v;
}

Rational dot(const RationalVector& a, const RationalVector& b)
{
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

bool is_zero(const RationalVector& v)
{
    for (const auto& x : v)
        if (x != 0)
            return false;
    return true;
}

}  // namespace toric::linalg

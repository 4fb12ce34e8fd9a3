#include "toric/lattice.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "toric/linalg.hpp"

namespace toric {

// ---------------------------------------------------------------- LatticeVector

LatticeVector::LatticeVector(std::initializer_list<long> coords)
{
    coords_.reserve(coords.size());
    for (long c : coords)
        coords_.emplace_back(c);
}

bool LatticeVector::is_zero() const
{
    return std::all_of(coords_.begin(), coords_.end(), [](const Integer& c) { return c == 0; });
}

Integer LatticeVector::content() const
{
    Integer g = 0;
    for (const auto& c : coords_)
        g = gcd(g, c);
    return g;
}

LatticeVector LatticeVector::operator+(const LatticeVector& o) const
{
    if (o.rank() != rank())
        throw ToricError(ErrorKind::DimensionMismatch, "vector ranks differ");
    LatticeVector out(*this);
    for (std::size_t i = 0; i < rank(); ++i)
        out.coords_[i] += o.coords_[i];
    return out;
}

LatticeVector LatticeVector::operator-(const LatticeVector& o) const
{
    return *this + (-o);
}

LatticeVector LatticeVector::operator-() const
{
    LatticeVector out(*this);
    for (auto& c : out.coords_)
        c = -c;
    return out;
}

LatticeVector LatticeVector::operator*(const Integer& s) const
{
    LatticeVector out(*this);
    for (auto& c : out.coords_)
        c *= s;
    return out;
}

Integer LatticeVector::dot(const LatticeVector& o) const
{
    if (o.rank() != rank())
        throw ToricError(ErrorKind::DimensionMismatch, "vector ranks differ");
    Integer s = 0;
    for (std::size_t i = 0; i < rank(); ++i)
        s += coords_[i] * o.coords_[i];
    return s;
}

Rational LatticeVector::dot(const RationalVector& covector) const
{
    if (covector.size() != rank())
        throw ToricError(ErrorKind::DimensionMismatch, "covector rank differs from vector rank");
    Rational s = 0;
    for (std::size_t i = 0; i < rank(); ++i)
        s += covector[i] * coords_[i];
    return s;
}

RationalVector LatticeVector::to_rational() const
{
    RationalVector out;
    out.reserve(rank());
    for (const auto& c : coords_)
        out.emplace_back(c);
    return out;
}

std::string LatticeVector::str() const
{
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < rank(); ++i)
        os << (i ? "," : "") << coords_[i];
    os << ')';
    return os.str();
}

bool operator<(const LatticeVector& a, const LatticeVector& b)
{
    return std::lexicographical_compare(a.coords_.begin(), a.coords_.end(), b.coords_.begin(), b.coords_.end());
}

LatticeVector primitive_on_ray(const RationalVector& v)
{
    Integer den = 1;
    for (const auto& x : v)
        den = lcm(den, denominator_of(x));
    std::vector<Integer> coords;
    coords.reserve(v.size());
    for (const auto& x : v)
        coords.push_back(numerator_of(x) * (den / denominator_of(x)));
    LatticeVector out(std::move(coords));
    Integer g = out.content();
    if (g == 0)
        throw ToricError(ErrorKind::ZeroVector, "no ray through the zero vector");
    std::vector<Integer> reduced;
    for (const auto& c : out)
        reduced.push_back(c / g);
    return LatticeVector(std::move(reduced));
}

PrimitivePart primitive_part(const LatticeVector& v)
{
    Integer g = v.content();
    if (g == 0)
        throw ToricError(ErrorKind::ZeroVector, "primitive part of the zero vector");
    std::vector<Integer> coords;
    coords.reserve(v.rank());
    for (const auto& c : v)
        coords.push_back(c / g);
    return {LatticeVector(std::move(coords)), g};
}

// ---------------------------------------------------------------- IntegerMatrix

IntegerMatrix::IntegerMatrix(std::initializer_list<std::initializer_list<long>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0)
{
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_)
            throw ToricError(ErrorKind::DimensionMismatch, "ragged matrix literal");
        for (long x : r)
            data_.emplace_back(x);
    }
}

IntegerMatrix IntegerMatrix::identity(std::size_t n)
{
    IntegerMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

IntegerMatrix IntegerMatrix::from_columns(std::span<const LatticeVector> columns, std::size_t rows)
{
    IntegerMatrix m(rows, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (columns[c].rank() != rows)
            throw ToricError(ErrorKind::DimensionMismatch, "column of wrong rank");
        for (std::size_t r = 0; r < rows; ++r)
            m(r, c) = columns[c][r];
    }
    return m;
}

IntegerMatrix IntegerMatrix::from_rows(std::span<const LatticeVector> rows, std::size_t cols)
{
    IntegerMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].rank() != cols)
            throw ToricError(ErrorKind::DimensionMismatch, "row of wrong rank");
        for (std::size_t c = 0; c < cols; ++c)
            m(r, c) = rows[r][c];
    }
    return m;
}

LatticeVector IntegerMatrix::row(std::size_t r) const
{
    std::vector<Integer> out(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
    return LatticeVector(std::move(out));
}

LatticeVector IntegerMatrix::column(std::size_t c) const
{
    LatticeVector out(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        out[r] = (*this)(r, c);
    return out;
}

std::vector<LatticeVector> IntegerMatrix::columns() const
{
    std::vector<LatticeVector> out;
    for (std::size_t c = 0; c < cols_; ++c)
        out.push_back(column(c));
    return out;
}

IntegerMatrix IntegerMatrix::transposed() const
{
    IntegerMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            t(c, r) = (*this)(r, c);
    return t;
}

IntegerMatrix IntegerMatrix::operator*(const IntegerMatrix& o) const
{
    if (cols_ != o.rows_)
        throw ToricError(ErrorKind::DimensionMismatch, "matrix product shape mismatch");
    IntegerMatrix out(rows_, o.cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Integer& a = (*this)(r, k);
            if (a == 0)
                continue;
            for (std::size_t c = 0; c < o.cols_; ++c)
                out(r, c) += a * o(k, c);
        }
    return out;
}

LatticeVector IntegerMatrix::operator*(const LatticeVector& v) const
{
    if (v.rank() != cols_)
        throw ToricError(ErrorKind::DimensionMismatch, "matrix-vector shape mismatch");
    LatticeVector out(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            out[r] += (*this)(r, c) * v[c];
    return out;
}

RationalVector IntegerMatrix::apply(const RationalVector& v) const
{
    if (v.size() != cols_)
        throw ToricError(ErrorKind::DimensionMismatch, "matrix-vector shape mismatch");
    RationalVector out(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            out[r] += (*this)(r, c) * v[c];
    return out;
}

Integer IntegerMatrix::determinant() const
{
    if (rows_ != cols_)
        throw ToricError(ErrorKind::DimensionMismatch, "determinant of a non-square matrix");
    const std::size_t n = rows_;
    if (n == 0)
        return 1;
    // Bareiss fraction-free elimination.
    IntegerMatrix a(*this);
    Integer sign = 1;
    Integer prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t swap = k + 1;
            while (swap < n && a(swap, k) == 0)
                ++swap;
            if (swap == n)
                return 0;
            for (std::size_t c = 0; c < n; ++c)
                std::swap(a(k, c), a(swap, c));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

std::size_t IntegerMatrix::rank() const
{
    return hermite_decompose(*this).rank;
}

bool IntegerMatrix::is_unimodular() const
{
    return rows_ == cols_ && abs_value(determinant()) == 1;
}

std::string IntegerMatrix::str() const
{
    std::ostringstream os;
    os << '[';
    for (std::size_t r = 0; r < rows_; ++r) {
        os << (r ? "," : "") << '[';
        for (std::size_t c = 0; c < cols_; ++c)
            os << (c ? "," : "") << (*this)(r, c);
        os << ']';
    }
    os << ']';
    return os.str();
}

// ---------------------------------------------------------------- row/column operations

namespace {

void swap_rows(IntegerMatrix& m, std::size_t a, std::size_t b)
{
    if (a == b)
        return;
    for (std::size_t c = 0; c < m.cols(); ++c)
        std::swap(m(a, c), m(b, c));
}

void swap_cols(IntegerMatrix& m, std::size_t a, std::size_t b)
{
    if (a == b)
        return;
    for (std::size_t r = 0; r < m.rows(); ++r)
        std::swap(m(r, a), m(r, b));
}

// row_target -= q * row_source
void add_row_multiple(IntegerMatrix& m, std::size_t target, std::size_t source, const Integer& q)
{
    if (q == 0)
        return;
    for (std::size_t c = 0; c < m.cols(); ++c)
        m(target, c) -= q * m(source, c);
}

void add_col_multiple(IntegerMatrix& m, std::size_t target, std::size_t source, const Integer& q)
{
    if (q == 0)
        return;
    for (std::size_t r = 0; r < m.rows(); ++r)
        m(r, target) -= q * m(r, source);
}

void negate_row(IntegerMatrix& m, std::size_t r)
{
    for (std::size_t c = 0; c < m.cols(); ++c)
        m(r, c) = -m(r, c);
}

Integer floor_div(const Integer& a, const Integer& b)
{
    Integer q = a / b;
    if ((a - q * b) != 0 && ((a < 0) != (b < 0)))
        q -= 1;
    return q;
}

}  // namespace

std::vector<Integer> SmithForm::diagonal() const
{
    std::vector<Integer> out;
    for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i)
        out.push_back(D(i, i));
    return out;
}

std::size_t SmithForm::rank() const
{
    std::size_t r = 0;
    for (const auto& d : diagonal())
        if (d != 0)
            ++r;
    return r;
}

SmithForm snf_decompose(const IntegerMatrix& m)
{
    IntegerMatrix A(m);
    IntegerMatrix U = IntegerMatrix::identity(m.rows());
    IntegerMatrix V = IntegerMatrix::identity(m.cols());
    const std::size_t limit = std::min(m.rows(), m.cols());

    for (std::size_t t = 0; t < limit; ++t) {
        bool exhausted = false;
        for (;;) {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            std::size_t pi = 0, pj = 0;
            bool found = false;
            for (std::size_t i = t; i < A.rows(); ++i)
                for (std::size_t j = t; j < A.cols(); ++j)
                    if (A(i, j) != 0 && (!found || abs_value(A(i, j)) < abs_value(A(pi, pj)))) {
                        pi = i;
                        pj = j;
                        found = true;
                    }
            if (!found) {
                exhausted = true;
                break;
            }
            swap_rows(A, t, pi);
            swap_rows(U, t, pi);
            swap_cols(A, t, pj);
            swap_cols(V, t, pj);

            bool clean = true;
            for (std::size_t i = t + 1; i < A.rows(); ++i) {
                Integer q = A(i, t) / A(t, t);
                add_row_multiple(A, i, t, q);
                add_row_multiple(U, i, t, q);
                if (A(i, t) != 0)
                    clean = false;
            }
            for (std::size_t j = t + 1; j < A.cols(); ++j) {
                Integer q = A(t, j) / A(t, t);
                add_col_multiple(A, j, t, q);
                add_col_multiple(V, j, t, q);
                if (A(t, j) != 0)
                    clean = false;
            }
            if (!clean)
                continue;

            std::size_t bad = 0;
            for (std::size_t i = t + 1; i < A.rows() && bad == 0; ++i)
                for (std::size_t j = t + 1; j < A.cols(); ++j)
                    if (A(i, j) % A(t, t) != 0) {
                        bad = i;
                        break;
                    }
            if (bad == 0)
                break;
            add_row_multiple(A, t, bad, Integer(-1));
            add_row_multiple(U, t, bad, Integer(-1));
        }
        if (exhausted)
            break;
        if (A(t, t) < 0) {
            negate_row(A, t);
            negate_row(U, t);
        }
    }
    return {std::move(U), std::move(A), std::move(V)};
}

HermiteForm hermite_decompose(const IntegerMatrix& m)
{
    IntegerMatrix H(m);
    IntegerMatrix T = IntegerMatrix::identity(m.rows());
    std::size_t row = 0;
    for (std::size_t col = 0; col < H.cols() && row < H.rows(); ++col) {
        for (;;) {
            std::size_t best = H.rows();
            for (std::size_t i = row; i < H.rows(); ++i)
                if (H(i, col) != 0 && (best == H.rows() || abs_value(H(i, col)) < abs_value(H(best, col))))
                    best = i;
            if (best == H.rows())
                break;
            swap_rows(H, row, best);
            swap_rows(T, row, best);
            bool clean = true;
            for (std::size_t i = row + 1; i < H.rows(); ++i) {
                Integer q = H(i, col) / H(row, col);
                add_row_multiple(H, i, row, q);
                add_row_multiple(T, i, row, q);
                if (H(i, col) != 0)
                    clean = false;
            }
            if (clean)
                break;
        }
        if (H(row, col) == 0)
            continue;
        if (H(row, col) < 0) {
            negate_row(H, row);
            negate_row(T, row);
        }
        for (std::size_t i = 0; i < row; ++i) {
            Integer q = floor_div(H(i, col), H(row, col));
            add_row_multiple(H, i, row, q);
            add_row_multiple(T, i, row, q);
        }
        ++row;
    }
    return {std::move(H), std::move(T), row};
}

std::vector<LatticeVector> hermite_reduce(std::span<const LatticeVector> vectors, std::size_t rank)
{
    HermiteForm hf = hermite_decompose(IntegerMatrix::from_rows(vectors, rank));
    std::vector<LatticeVector> out;
    for (std::size_t r = 0; r < hf.rank; ++r)
        out.push_back(hf.H.row(r));
    return out;
}

std::vector<LatticeVector> kernel_basis(const IntegerMatrix& m)
{
    // T * m^t = H; rows of T against zero rows of H span the saturated kernel.
    HermiteForm hf = hermite_decompose(m.transposed());
    std::vector<LatticeVector> raw;
    for (std::size_t r = hf.rank; r < hf.T.rows(); ++r)
        raw.push_back(hf.T.row(r));
    if (raw.empty())
        return raw;
    return hermite_reduce(raw, m.cols());
}

// ---------------------------------------------------------------- Sublattice

Sublattice::Sublattice(std::size_t ambient_rank, IntegerMatrix generators)
    : ambient_(ambient_rank), generators_(std::move(generators))
{
    if (generators_.rows() != ambient_)
        throw ToricError(ErrorKind::DimensionMismatch, "sublattice generators have the wrong rank");
    auto cols = generators_.columns();
    if (!cols.empty())
        basis_ = hermite_reduce(cols, ambient_);
}

Sublattice Sublattice::full(std::size_t ambient_rank)
{
    return Sublattice(ambient_rank, IntegerMatrix::identity(ambient_rank));
}

Sublattice Sublattice::spanned_by(std::span<const LatticeVector> generators, std::size_t ambient_rank)
{
    return Sublattice(ambient_rank, IntegerMatrix::from_columns(generators, ambient_rank));
}

IntegerMatrix Sublattice::basis_matrix() const
{
    return IntegerMatrix::from_columns(basis_, ambient_);
}

std::optional<Integer> Sublattice::index() const
{
    if (rank() != ambient_)
        return std::nullopt;
    return abs_value(basis_matrix().determinant());
}

std::optional<RationalVector> Sublattice::rational_coordinates(const LatticeVector& v) const
{
    if (v.rank() != ambient_)
        throw ToricError(ErrorKind::DimensionMismatch, "vector rank differs from the ambient lattice");
    linalg::Matrix a = linalg::from_integer(basis_matrix());
    return linalg::solve(a, v.to_rational(), rank());
}

bool Sublattice::contains(const LatticeVector& v) const
{
    return coordinates(v).has_value();
}

std::optional<LatticeVector> Sublattice::coordinates(const LatticeVector& v) const
{
    auto c = rational_coordinates(v);
    if (!c)
        return std::nullopt;
    std::vector<Integer> out;
    for (const auto& x : *c) {
        if (!is_integral(x))
            return std::nullopt;
        out.push_back(numerator_of(x));
    }
    return LatticeVector(std::move(out));
}

std::optional<Integer> Sublattice::lattice_length(const LatticeVector& v) const
{
    auto c = rational_coordinates(v);
    if (!c)
        return std::nullopt;
    Integer k = 1;
    for (const auto& x : *c)
        k = lcm(k, denominator_of(x));
    return k;
}

Sublattice Sublattice::saturation() const
{
    if (rank() == 0)
        return *this;
    auto complement = kernel_basis(IntegerMatrix::from_rows(basis_, ambient_));
    if (complement.empty())
        return full(ambient_);
    auto saturated = kernel_basis(IntegerMatrix::from_rows(complement, ambient_));
    return spanned_by(saturated, ambient_);
}

// ---------------------------------------------------------------- split_extension

IntegerMatrix split_extension(const IntegerMatrix& m)
{
    const std::size_t e = m.rows();
    const std::size_t d = m.cols();
    SmithForm snf = snf_decompose(m);
    auto diag = snf.diagonal();
    bool onto = snf.rank() == e;
    Integer index = 1;
    for (std::size_t i = 0; i < e && onto; ++i)
        index *= diag[i];
    if (!onto || index != 1) {
        Sublattice image(e, m);
        std::optional<Integer> idx = onto ? std::optional<Integer>(index) : std::nullopt;
        std::string what = onto ? "image has index " + index.str() : "image has infinite index";
        throw NotSurjectiveError(ErrorKind::NotSurjective, std::move(image), std::move(idx), what);
    }
    IntegerMatrix leading(d, e);
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < e; ++c)
            leading(r, c) = snf.V(r, c);
    return leading * snf.U;
}

}  // namespace toric

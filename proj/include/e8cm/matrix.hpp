#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "e8cm/arith.hpp"

namespace e8cm {

// Dense row-major integer matrix.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, Int fill = 0) : r_(rows), c_(cols), a_(rows * cols, fill) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static Matrix from_rows(const std::vector<Vec>& rows) {
        if (rows.empty()) return {};
        Matrix m(rows.size(), rows[0].size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.c_) throw InputError("ragged matrix rows");
            std::copy(rows[i].begin(), rows[i].end(), m.a_.begin() + static_cast<std::ptrdiff_t>(i * m.c_));
        }
        return m;
    }

    // columns given as vectors
    static Matrix from_cols(const std::vector<Vec>& cols) { return from_rows(cols).transpose(); }

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    Int& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    Int operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

    Vec row(std::size_t i) const { return Vec(a_.begin() + static_cast<std::ptrdiff_t>(i * c_), a_.begin() + static_cast<std::ptrdiff_t>((i + 1) * c_)); }
    Vec col(std::size_t j) const {
        Vec v(r_);
        for (std::size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
        return v;
    }
    std::vector<Vec> to_rows() const {
        std::vector<Vec> out;
        for (std::size_t i = 0; i < r_; ++i) out.push_back(row(i));
        return out;
    }

    Matrix transpose() const {
        Matrix t(c_, r_);
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    void swap_rows(std::size_t i, std::size_t j) {
        for (std::size_t k = 0; k < c_; ++k) std::swap((*this)(i, k), (*this)(j, k));
    }
    void swap_cols(std::size_t i, std::size_t j) {
        for (std::size_t k = 0; k < r_; ++k) std::swap((*this)(k, i), (*this)(k, j));
    }

    bool operator==(const Matrix&) const = default;

private:
    std::size_t r_ = 0, c_ = 0;
    std::vector<Int> a_;
};

inline Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw InputError("matrix product: dimension mismatch");
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            __int128 s = 0;
            for (std::size_t k = 0; k < a.cols(); ++k) s += static_cast<__int128>(a(i, k)) * b(k, j);
            c(i, j) = narrow(s);
        }
    return c;
}

inline Vec operator*(const Matrix& a, const Vec& x) {
    if (a.cols() != x.size()) throw InputError("matrix-vector product: dimension mismatch");
    Vec y(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        __int128 s = 0;
        for (std::size_t k = 0; k < a.cols(); ++k) s += static_cast<__int128>(a(i, k)) * x[k];
        y[i] = narrow(s);
    }
    return y;
}

// x^T G y
inline Int bilinear(const Matrix& g, const Vec& x, const Vec& y) { return dot(x, g * y); }

// U^T G U
inline Matrix congruent(const Matrix& g, const Matrix& u) { return u.transpose() * g * u; }

inline bool is_symmetric(const Matrix& m) {
    if (m.rows() != m.cols()) return false;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (m(i, j) != m(j, i)) return false;
    return true;
}

namespace detail {

// Fraction-free Gaussian elimination. Without pivoting the k-th pivot is the
// k-th leading principal minor, which is what the definiteness test reads.
struct Bareiss {
    Int det = 0;
    std::vector<Int> leading_minors;  // only filled when no pivoting was needed
    bool pivoted = false;
};

inline Bareiss bareiss(Matrix m, bool allow_pivot) {
    const std::size_t n = m.rows();
    Bareiss out;
    if (n == 0) {
        out.det = 1;
        return out;
    }
    Int sign = 1;
    Int prev = 1;
    for (std::size_t k = 0; k < n; ++k) {
        if (m(k, k) == 0) {
            if (!allow_pivot) {
                out.pivoted = true;
                out.det = 0;
                return out;
            }
            std::size_t p = k + 1;
            while (p < n && m(p, k) == 0) ++p;
            if (p == n) {
                out.det = 0;
                return out;
            }
            m.swap_rows(k, p);
            sign = -sign;
            out.pivoted = true;
        }
        out.leading_minors.push_back(m(k, k));
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                __int128 v = static_cast<__int128>(m(i, j)) * m(k, k) - static_cast<__int128>(m(i, k)) * m(k, j);
                m(i, j) = narrow(v / prev);
            }
        prev = m(k, k);
    }
    out.det = mul(sign, m(n - 1, n - 1));
    return out;
}

}  // namespace detail

inline Int determinant(const Matrix& m) {
    if (m.rows() != m.cols()) throw InputError("determinant of non-square matrix");
    return detail::bareiss(m, true).det;
}

inline bool is_positive_definite(const Matrix& m) {
    if (!is_symmetric(m)) return false;
    auto b = detail::bareiss(m, false);
    if (b.pivoted) return false;
    return std::all_of(b.leading_minors.begin(), b.leading_minors.end(), [](Int v) { return v > 0; });
}

// Row-style Hermite reduction of the given integer rows. Returns the nonzero
// rows of an echelon basis of their Z-span (pivots positive, entries above a
// pivot reduced into [0, pivot)).
inline std::vector<Vec> row_span_basis(std::vector<Vec> rows, std::size_t dim) {
    std::size_t r = 0;
    for (std::size_t c = 0; c < dim && r < rows.size(); ++c) {
        // gcd-combine everything below r into row r
        for (std::size_t i = r + 1; i < rows.size(); ++i) {
            if (rows[i][c] == 0) continue;
            Int a = rows[r][c], b = rows[i][c], x, y;
            Int g = ext_gcd(a, b, x, y);
            Int ua = a / g, ub = b / g;
            Vec nr(dim), ni(dim);
            for (std::size_t k = 0; k < dim; ++k) {
                nr[k] = add(mul(x, rows[r][k]), mul(y, rows[i][k]));
                ni[k] = sub(mul(ua, rows[i][k]), mul(ub, rows[r][k]));
            }
            rows[r] = std::move(nr);
            rows[i] = std::move(ni);
        }
        if (rows[r][c] == 0) continue;
        if (rows[r][c] < 0)
            for (auto& v : rows[r]) v = -v;
        for (std::size_t i = 0; i < r; ++i) {
            Int q = floor_div(rows[i][c], rows[r][c]);
            if (q != 0)
                for (std::size_t k = 0; k < dim; ++k) rows[i][k] = sub(rows[i][k], mul(q, rows[r][k]));
        }
        ++r;
    }
    rows.resize(r);
    return rows;
}

// Inverse of a unimodular integer matrix; throws if det != +-1.
inline Matrix inverse_unimodular(const Matrix& u) {
    const std::size_t n = u.rows();
    if (u.cols() != n) throw InputError("inverse of non-square matrix");
    std::vector<Vec> aug(n, Vec(2 * n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug[i][j] = u(i, j);
        aug[i][n + i] = 1;
    }
    auto red = row_span_basis(aug, 2 * n);
    if (red.size() != n) throw InputError("matrix is singular");
    Matrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (red[i][i] != 1) throw InputError("matrix is not unimodular");
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i && red[i][j] != 0) throw InputError("matrix is not unimodular");
            inv(i, j) = red[i][n + j];
        }
    }
    return inv;
}

// Columns of the returned n x (n-1) matrix form a basis of {x : a.x = 0}.
// Built from unimodular column operations that sweep a to (g, 0, ..., 0).
inline Matrix integer_kernel(const Vec& a) {
    const std::size_t n = a.size();
    Vec row = a;
    Matrix u = Matrix::identity(n);
    for (std::size_t j = 1; j < n; ++j) {
        if (row[j] == 0) continue;
        Int x, y;
        Int g = ext_gcd(row[0], row[j], x, y);
        Int ua = row[0] / g, ub = row[j] / g;
        // new col0 = x col0 + y colj, new colj = -ub col0 + ua colj (det = 1)
        for (std::size_t i = 0; i < n; ++i) {
            Int c0 = u(i, 0), cj = u(i, j);
            u(i, 0) = add(mul(x, c0), mul(y, cj));
            u(i, j) = sub(mul(ua, cj), mul(ub, c0));
        }
        row[0] = g;
        row[j] = 0;
    }
    Matrix k(n, n - 1);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 1; j < n; ++j) k(i, j - 1) = u(i, j);
    return k;
}

}  // namespace e8cm

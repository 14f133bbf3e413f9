#pragma once
// Shared fixtures and brute-force oracles for the unit tests. Nothing here
// calls into the enumeration code it is used to check.

#include <cmath>
#include <random>
#include <vector>

#include "e8cm/matrix.hpp"

namespace testsupport {

using e8cm::Int;
using e8cm::Matrix;
using e8cm::Vec;

inline Matrix e8_gram() {
    return Matrix::from_rows({{2, -1, -1, 0, -1, 0, 0, 0},
                              {-1, 2, 0, 0, 0, 0, 0, 0},
                              {-1, 0, 2, -1, 0, 0, 0, 0},
                              {0, 0, -1, 2, 0, 0, 0, 0},
                              {-1, 0, 0, 0, 2, -1, 0, 0},
                              {0, 0, 0, 0, -1, 2, -1, 0},
                              {0, 0, 0, 0, 0, -1, 2, -1},
                              {0, 0, 0, 0, 0, 0, -1, 2}});
}

// path Gram with the given diagonal and -1 between neighbours
inline Matrix path_gram(const std::vector<Int>& norms) {
    Matrix g(norms.size(), norms.size());
    for (std::size_t i = 0; i < norms.size(); ++i) {
        g(i, i) = norms[i];
        if (i + 1 < norms.size()) g(i, i + 1) = g(i + 1, i) = -1;
    }
    return g;
}

inline Matrix block(const Matrix& a, const Matrix& b) {
    Matrix g(a.rows() + b.rows(), a.rows() + b.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.rows(); ++j) g(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.rows(); ++j) g(a.rows() + i, a.rows() + j) = b(i, j);
    return g;
}

inline Int quad(const Matrix& g, const Vec& x) {
    Int s = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j) s += x[i] * g(i, j) * x[j];
    return s;
}

// Brute force over the box |x_i| <= floor(sqrt(N * (G^-1)_ii)), which
// contains the whole ellipsoid x^T G x <= N.
inline std::vector<Vec> box_short_vectors(const Matrix& g, Int max_norm, bool include_zero = false) {
    const std::size_t n = g.rows();
    // Gauss-Jordan inverse in double, only used for the box radius
    std::vector<std::vector<double>> a(n, std::vector<double>(2 * n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a[i][j] = static_cast<double>(g(i, j));
        a[i][n + i] = 1;
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        for (std::size_t i = c; i < n; ++i)
            if (std::fabs(a[i][c]) > std::fabs(a[p][c])) p = i;
        std::swap(a[p], a[c]);
        double d = a[c][c];
        for (auto& v : a[c]) v /= d;
        for (std::size_t i = 0; i < n; ++i)
            if (i != c) {
                double f = a[i][c];
                for (std::size_t j = 0; j < 2 * n; ++j) a[i][j] -= f * a[c][j];
            }
    }
    std::vector<Int> r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = static_cast<Int>(std::floor(std::sqrt(max_norm * a[i][n + i]) + 1e-9));
    std::vector<Vec> out;
    Vec x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = -r[i];
    while (true) {
        Int q = quad(g, x);
        bool zero = true;
        for (auto v : x) zero = zero && v == 0;
        if (q <= max_norm && (include_zero || !zero)) out.push_back(x);
        std::size_t k = n;
        while (k-- > 0) {
            if (x[k] < r[k]) {
                ++x[k];
                break;
            }
            x[k] = -r[k];
        }
        if (k == SIZE_MAX) break;
    }
    return out;  // lexicographic by construction
}

// Random positive definite Gram: B^T B + small diagonal shift, B random small.
inline Matrix random_gram(std::mt19937_64& rng, std::size_t n, int spread = 2) {
    std::uniform_int_distribution<int> d(-spread, spread);
    Matrix b(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) b(i, j) = d(rng);
    for (std::size_t i = 0; i < n; ++i) b(i, i) += 3 * spread;
    Matrix g = b.transpose() * b;
    return g;
}

inline Vec unit(std::size_t n, std::size_t i) {
    Vec v(n, 0);
    v[i] = 1;
    return v;
}

}  // namespace testsupport

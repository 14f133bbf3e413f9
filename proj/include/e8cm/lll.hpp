#pragma once

#include <cmath>
#include <vector>

#include "e8cm/matrix.hpp"

namespace e8cm {

struct Reduced {
    Matrix gram;       // T^T G T
    Matrix transform;  // columns: reduced basis in the original coordinates
};

// LLL on a positive definite Gram matrix. The Gram matrix and the transform
// are updated with exact integer operations; only the Gram-Schmidt data used
// to choose the operations is floating point, so the output is always an
// exact congruent Gram matrix even if the reduction quality were to suffer.
inline Reduced lll_reduce(const Matrix& g, long double delta = 0.99L) {
    const std::size_t n = g.rows();
    Reduced out{g, Matrix::identity(n)};
    Matrix& G = out.gram;
    Matrix& T = out.transform;
    if (n <= 1) return out;

    std::vector<std::vector<long double>> mu(n, std::vector<long double>(n, 0));
    std::vector<long double> b(n, 0);
    auto gso_row = [&](std::size_t k) {
        for (std::size_t j = 0; j < k; ++j) {
            long double s = static_cast<long double>(G(k, j));
            for (std::size_t i = 0; i < j; ++i) s -= mu[j][i] * mu[k][i] * b[i];
            mu[k][j] = s / b[j];
        }
        long double s = static_cast<long double>(G(k, k));
        for (std::size_t i = 0; i < k; ++i) s -= mu[k][i] * mu[k][i] * b[i];
        b[k] = s;
    };
    // basis vector k -= r * basis vector j
    auto subtract = [&](std::size_t k, std::size_t j, Int r) {
        for (std::size_t i = 0; i < n; ++i) T(i, k) = sub(T(i, k), mul(r, T(i, j)));
        for (std::size_t i = 0; i < n; ++i) G(i, k) = sub(G(i, k), mul(r, G(i, j)));
        for (std::size_t i = 0; i < n; ++i) G(k, i) = sub(G(k, i), mul(r, G(j, i)));
    };

    gso_row(0);
    std::size_t k = 1;
    gso_row(1);
    std::size_t guard = 0;
    while (k < n) {
        if (++guard > 1000000) throw OverflowError("LLL did not terminate");
        for (std::size_t jj = k; jj-- > 0;) {
            long double m = mu[k][jj];
            if (std::fabs(m) > 0.5L) {
                Int r = static_cast<Int>(std::llround(m));
                subtract(k, jj, r);
                gso_row(k);
            }
        }
        if (b[k] < (delta - mu[k][k - 1] * mu[k][k - 1]) * b[k - 1]) {
            G.swap_rows(k, k - 1);
            G.swap_cols(k, k - 1);
            T.swap_cols(k, k - 1);
            gso_row(k - 1);
            gso_row(k);
            if (k > 1) --k;
            else gso_row(k);
        } else {
            ++k;
            if (k < n) gso_row(k);
        }
    }
    return out;
}

}  // namespace e8cm

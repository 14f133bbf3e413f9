#pragma once

#include <algorithm>
#include <limits>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>
#include <vector>

#include "e8cm/enumerate.hpp"

namespace e8cm {

// Positive definite integer lattice given by its Gram matrix.
class GramLattice {
public:
    GramLattice() = default;
    explicit GramLattice(Matrix gram) : gram_(std::move(gram)) {
        if (gram_.rows() == 0 || gram_.rows() != gram_.cols()) throw InputError("Gram matrix must be square and nonempty");
        if (!is_symmetric(gram_)) throw InputError("Gram matrix is not symmetric");
        if (!is_positive_definite(gram_)) throw InputError("Gram matrix is not positive definite");
    }
    static GramLattice from_rows(const std::vector<Vec>& rows) { return GramLattice(Matrix::from_rows(rows)); }

    std::size_t rank() const { return gram_.rows(); }
    const Matrix& gram() const { return gram_; }

    Int pairing(const Vec& x, const Vec& y) const {
        check(x);
        check(y);
        return bilinear(gram_, x, y);
    }
    Int norm(const Vec& x) const { return pairing(x, x); }

    void check(const Vec& x) const {
        if (x.size() != rank()) throw InputError("vector length does not match lattice rank");
    }

private:
    Matrix gram_;
};

inline Int discriminant(const GramLattice& l) {
    Int d = determinant(l.gram());
    return d < 0 ? -d : d;
}

inline GramLattice block_diagonal(const std::vector<GramLattice>& parts) {
    std::size_t n = 0;
    for (auto& p : parts) n += p.rank();
    Matrix g(n, n);
    std::size_t off = 0;
    for (auto& p : parts) {
        for (std::size_t i = 0; i < p.rank(); ++i)
            for (std::size_t j = 0; j < p.rank(); ++j) g(off + i, off + j) = p.gram()(i, j);
        off += p.rank();
    }
    return GramLattice(g);
}

namespace detail {

// Solve A x = b in long double (A small, nonsingular).
inline std::vector<long double> solve_real(const Matrix& a, std::vector<long double> b) {
    const std::size_t n = a.rows();
    std::vector<std::vector<long double>> m(n, std::vector<long double>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m[i][j] = static_cast<long double>(a(i, j));
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        for (std::size_t i = c + 1; i < n; ++i)
            if (std::fabs(m[i][c]) > std::fabs(m[p][c])) p = i;
        std::swap(m[p], m[c]);
        std::swap(b[p], b[c]);
        for (std::size_t i = c + 1; i < n; ++i) {
            long double f = m[i][c] / m[c][c];
            for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
            b[i] -= f * b[c];
        }
    }
    std::vector<long double> x(n);
    for (std::size_t i = n; i-- > 0;) {
        long double s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= m[i][j] * x[j];
        x[i] = s / m[i][i];
    }
    return x;
}

}  // namespace detail

// Visits every x = offset + B z (B given by columns, a basis of a sublattice
// of L) with norm(x) <= max_norm, passing x and its exact norm. The visitor
// returns false to stop early.
template <class Visit>
void for_each_in_coset(const GramLattice& l, const Matrix& basis, const Vec& offset, Int max_norm, Visit&& visit) {
    const Matrix& g = l.gram();
    Matrix gk = congruent(g, basis);
    Reduced red = lll_reduce(gk);
    Matrix b = basis * red.transform;  // reduced sublattice basis
    const std::size_t k = b.cols();
    // norm(offset + b w) = (w - w*)^T Gr (w - w*) + const, w* = -Gr^{-1} b^T G offset
    Vec rhs = b.transpose() * (g * offset);
    std::vector<long double> r(k);
    for (std::size_t i = 0; i < k; ++i) r[i] = -static_cast<long double>(rhs[i]);
    std::vector<long double> center = k ? detail::solve_real(red.gram, r) : std::vector<long double>{};
    long double cst = static_cast<long double>(bilinear(g, offset, offset));
    for (std::size_t i = 0; i < k; ++i) cst += static_cast<long double>(rhs[i]) * center[i];
    long double bound = static_cast<long double>(max_norm) - cst;
    if (bound < -1e-6L) return;
    EllipsoidEnumerator en(red.gram);
    const Int offset_norm = bilinear(g, offset, offset);
    Vec x(l.rank());
    en.run(center, bound < 0 ? 0 : bound, [&](const Vec& w) {
        // exact: |offset|^2 + 2 rhs.w + w^T Gr w
        __int128 acc = offset_norm;
        for (std::size_t i = 0; i < k; ++i) {
            if (w[i] == 0) continue;
            __int128 row = 2 * static_cast<__int128>(rhs[i]) + static_cast<__int128>(red.gram(i, i)) * w[i];
            for (std::size_t j = i + 1; j < k; ++j) row += 2 * static_cast<__int128>(red.gram(i, j)) * w[j];
            acc += row * w[i];
        }
        const Int nx = narrow(acc);
        if (nx > max_norm) return true;
        for (std::size_t i = 0; i < l.rank(); ++i) {
            __int128 s = offset[i];
            for (std::size_t j = 0; j < k; ++j) s += static_cast<__int128>(b(i, j)) * w[j];
            x[i] = narrow(s);
        }
        return visit(static_cast<const Vec&>(x), nx);
    });
}

// A point of least norm in offset + span(B), if one has norm <= max_norm.
inline std::optional<std::pair<Vec, Int>> closest_in_coset(const GramLattice& l, const Matrix& basis, const Vec& offset, Int max_norm) {
    const Matrix& g = l.gram();
    Reduced red = lll_reduce(congruent(g, basis));
    Matrix b = basis * red.transform;
    const std::size_t k = b.cols();
    Vec rhs = b.transpose() * (g * offset);
    std::vector<long double> r(k);
    for (std::size_t i = 0; i < k; ++i) r[i] = -static_cast<long double>(rhs[i]);
    std::vector<long double> center = k ? detail::solve_real(red.gram, r) : std::vector<long double>{};
    long double cst = static_cast<long double>(bilinear(g, offset, offset));
    for (std::size_t i = 0; i < k; ++i) cst += static_cast<long double>(rhs[i]) * center[i];
    const long double bound = static_cast<long double>(max_norm) - cst;
    if (bound < -1e-6L) return std::nullopt;
    const Int offset_norm = bilinear(g, offset, offset);
    std::optional<std::pair<Vec, Int>> best;
    EllipsoidEnumerator en(red.gram);
    en.run_shrinking(center, bound < 0 ? 0 : bound, [&](const Vec& w) -> long double {
        __int128 acc = offset_norm;
        for (std::size_t i = 0; i < k; ++i) {
            if (w[i] == 0) continue;
            __int128 row = 2 * static_cast<__int128>(rhs[i]) + static_cast<__int128>(red.gram(i, i)) * w[i];
            for (std::size_t j = i + 1; j < k; ++j) row += 2 * static_cast<__int128>(red.gram(i, j)) * w[j];
            acc += row * w[i];
        }
        const Int nx = narrow(acc);
        if (nx > max_norm || (best && nx >= best->second)) return std::numeric_limits<long double>::max();
        Vec x(l.rank());
        for (std::size_t i = 0; i < l.rank(); ++i) {
            __int128 s = offset[i];
            for (std::size_t j = 0; j < k; ++j) s += static_cast<__int128>(b(i, j)) * w[j];
            x[i] = narrow(s);
        }
        best = std::make_pair(std::move(x), nx);
        return static_cast<long double>(nx) - cst;
    });
    return best;
}

// Every nonzero v with norm(v) <= max_norm, unsorted, via callback.
template <class Visit>
void for_each_short_vector(const GramLattice& l, Int max_norm, Visit&& visit) {
    Vec zero(l.rank(), 0);
    for_each_in_coset(l, Matrix::identity(l.rank()), zero, max_norm, [&](const Vec& x, Int nx) {
        if (nx == 0) return true;
        return visit(x, nx);
    });
}

// All nonzero vectors of norm <= max_norm, lexicographic order on coordinates.
inline std::vector<Vec> short_vectors(const GramLattice& l, Int max_norm) {
    if (max_norm < 0) throw InputError("max_norm must be nonnegative");
    std::vector<Vec> out;
    for_each_short_vector(l, max_norm, [&](const Vec& x, Int) {
        out.push_back(x);
        return true;
    });
    std::sort(out.begin(), out.end());
    return out;
}

// Count of vectors per norm value, norms 1..max_norm.
inline std::map<Int, std::size_t> norm_counts(const GramLattice& l, Int max_norm) {
    std::map<Int, std::size_t> out;
    for_each_short_vector(l, max_norm, [&](const Vec&, Int nx) {
        ++out[nx];
        return true;
    });
    return out;
}

struct Complement {
    GramLattice lattice;
    std::vector<Vec> basis;  // ambient coordinates, one per complement basis vector
};

// Integer kernel of x -> <x, t>, LLL-reduced.
inline Complement orthogonal_complement(const GramLattice& l, const Vec& t) {
    l.check(t);
    if (std::all_of(t.begin(), t.end(), [](Int v) { return v == 0; })) throw InputError("orthogonal complement of the zero vector");
    if (l.rank() < 2) throw InputError("orthogonal complement of a rank-1 lattice is zero");
    Matrix k = integer_kernel(l.gram() * t);
    Reduced red = lll_reduce(congruent(l.gram(), k));
    Matrix b = k * red.transform;
    std::vector<Vec> basis;
    for (std::size_t j = 0; j < b.cols(); ++j) basis.push_back(b.col(j));
    return {GramLattice(red.gram), basis};
}

namespace detail {

// One solution c of G c = diag(G) over F2, if any.
inline std::optional<Vec> characteristic_representative(const Matrix& g) {
    const std::size_t n = g.rows();
    std::vector<std::vector<int>> m(n, std::vector<int>(n + 1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m[i][j] = static_cast<int>(mod(g(i, j), 2));
        m[i][n] = static_cast<int>(mod(g(i, i), 2));
    }
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < n; ++c) {
        std::size_t p = r;
        while (p < n && m[p][c] == 0) ++p;
        if (p == n) continue;
        std::swap(m[p], m[r]);
        for (std::size_t i = 0; i < n; ++i)
            if (i != r && m[i][c])
                for (std::size_t j = c; j <= n; ++j) m[i][j] ^= m[r][j];
        pivot_col.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < n; ++i)
        if (m[i][n]) return std::nullopt;
    Vec c(n, 0);
    for (std::size_t i = 0; i < r; ++i) c[pivot_col[i]] = m[i][n];
    return c;
}

// Basis (columns) of {k : G k = 0 mod 2}.
inline Matrix even_pairing_sublattice(const Matrix& g) {
    const std::size_t n = g.rows();
    std::vector<Vec> gens;
    for (std::size_t i = 0; i < n; ++i) {
        Vec e(n, 0);
        e[i] = 2;
        gens.push_back(e);
    }
    // F2 kernel of G mod 2
    std::vector<std::vector<int>> m(n, std::vector<int>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m[i][j] = static_cast<int>(mod(g(i, j), 2));
    std::vector<int> pivot_of(n, -1);
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < n; ++c) {
        std::size_t p = r;
        while (p < n && m[p][c] == 0) ++p;
        if (p == n) continue;
        std::swap(m[p], m[r]);
        for (std::size_t i = 0; i < n; ++i)
            if (i != r && m[i][c])
                for (std::size_t j = c; j < n; ++j) m[i][j] ^= m[r][j];
        pivot_of[c] = static_cast<int>(r);
        ++r;
    }
    for (std::size_t f = 0; f < n; ++f) {
        if (pivot_of[f] >= 0) continue;
        Vec v(n, 0);
        v[f] = 1;
        for (std::size_t c = 0; c < n; ++c)
            if (pivot_of[c] >= 0 && m[static_cast<std::size_t>(pivot_of[c])][f]) v[c] = 1;
        gens.push_back(v);
    }
    return Matrix::from_rows(row_span_basis(gens, n)).transpose();
}

}  // namespace detail

// Characteristic vectors of norm <= max_norm, lexicographic order.
inline std::vector<Vec> characteristic_vectors(const GramLattice& l, Int max_norm) {
    if (max_norm < 0) throw InputError("max_norm must be nonnegative");
    auto c0 = detail::characteristic_representative(l.gram());
    std::vector<Vec> out;
    if (!c0) return out;
    Matrix k = detail::even_pairing_sublattice(l.gram());
    for_each_in_coset(l, k, *c0, max_norm, [&](const Vec& x, Int) {
        out.push_back(x);
        return true;
    });
    std::sort(out.begin(), out.end());
    return out;
}

// Nonzero vectors of norm <= bound, enumerated once, for repeated
// irreducibility / breakability queries on one lattice.
class ShortVectorTable {
public:
    ShortVectorTable(const GramLattice& l, Int bound) : l_(l), bound_(bound) {
        for_each_short_vector(l, bound, [&](const Vec& x, Int nx) {
            vecs_.push_back({x, nx});
            return true;
        });
    }
    Int bound() const { return bound_; }
    std::size_t size() const { return vecs_.size(); }

    // v is reducible iff v = x + y, x, y != 0, <x,y> >= 0. Then
    // |v| >= |x| + |y|, so one part has norm <= |v|/2 and it suffices to
    // search x with |x| <= |v|/2 and <x,v> >= |x|.
    bool is_irreducible(const Vec& v) const {
        Int nv = l_.norm(v);
        if (nv == 0) throw InputError("zero vector");
        need(nv / 2);
        Vec gv = l_.gram() * v;
        for (auto& [x, nx] : vecs_)
            if (nx <= nv / 2 && dot(x, gv) >= nx) return false;
        return true;
    }

    // Breakable: v = x + y with |x|, |y| >= 3 and <x,y> = -1. Then
    // |v| = |x| + |y| - 2, so the smaller part has 3 <= |x| <= (|v|+2)/2.
    bool is_breakable(const Vec& v) const {
        Int nv = l_.norm(v);
        if (nv == 0) throw InputError("zero vector");
        need((nv + 2) / 2);
        Vec gv = l_.gram() * v;
        for (auto& [x, nx] : vecs_)
            if (nx >= 3 && nx <= (nv + 2) / 2 && dot(x, gv) == nx - 1 && nv - nx + 2 >= 3) return true;
        return false;
    }

private:
    void need(Int b) const {
        if (b > bound_) throw InputError("short vector table bound " + std::to_string(bound_) + " below " + std::to_string(b));
    }
    const GramLattice& l_;
    Int bound_;
    std::vector<std::pair<Vec, Int>> vecs_;
};

inline bool is_irreducible(const GramLattice& l, const Vec& v) {
    return ShortVectorTable(l, l.norm(v) / 2).is_irreducible(v);
}

inline bool is_breakable(const GramLattice& l, const Vec& v) {
    return ShortVectorTable(l, (l.norm(v) + 2) / 2).is_breakable(v);
}

struct DecompositionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Summand {
    GramLattice lattice;
    std::vector<Vec> basis;  // coordinates in the input lattice
};

// Irreducible vectors of norm <= max_norm (one of each +-pair is NOT
// dropped; both signs are returned), ascending by norm then lexicographic.
// A reducible v always has an irreducible witness x with |x| <= |v|/2 and
// <x,v> >= |x| (a norm-minimal witness cannot itself split), so only
// irreducibles need to be scanned.
inline std::vector<Vec> irreducible_vectors(const GramLattice& l, Int max_norm) {
    std::vector<std::pair<Int, Vec>> all;
    for_each_short_vector(l, max_norm, [&](const Vec& x, Int nx) {
        all.emplace_back(nx, x);
        return true;
    });
    std::sort(all.begin(), all.end());
    std::vector<Vec> irr;
    std::vector<Int> irr_norm;
    for (auto& [nv, v] : all) {
        Vec gv = l.gram() * v;
        bool red = false;
        for (std::size_t i = 0; i < irr.size() && irr_norm[i] * 2 <= nv; ++i)
            if (dot(irr[i], gv) >= irr_norm[i]) {
                red = true;
                break;
            }
        if (!red) {
            irr.push_back(v);
            irr_norm.push_back(nv);
        }
    }
    return irr;
}

// Orthogonal decomposition into indecomposable summands.
inline std::vector<Summand> decompose(const GramLattice& l) {
    const std::size_t n = l.rank();
    Reduced red = lll_reduce(l.gram());
    GramLattice rl(red.gram);
    Int bound = 0;
    for (std::size_t i = 0; i < n; ++i) bound = std::max(bound, red.gram(i, i));
    std::vector<Vec> irr;
    for (int attempt = 0;; ++attempt) {
        irr = irreducible_vectors(rl, bound);
        if (row_span_basis(irr, n).size() == n && determinant(Matrix::from_rows(row_span_basis(irr, n))) == 1) break;
        // cannot happen (vectors of norm <= max reduced diagonal generate), kept as a guard
        if (attempt >= 3) throw DecompositionError("irreducible vectors did not generate the lattice");
        bound *= 2;
    }
    // components of the non-orthogonality graph
    std::vector<std::size_t> parent(irr.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    for (std::size_t i = 0; i < irr.size(); ++i) {
        Vec gi = rl.gram() * irr[i];
        for (std::size_t j = i + 1; j < irr.size(); ++j)
            if (dot(irr[j], gi) != 0) parent[find(i)] = find(j);
    }
    std::map<std::size_t, std::vector<Vec>> parts;
    for (std::size_t i = 0; i < irr.size(); ++i) parts[find(i)].push_back(irr[i]);
    std::vector<Summand> out;
    for (auto& [root, vecs] : parts) {
        Matrix b = Matrix::from_rows(row_span_basis(vecs, n)).transpose();
        Reduced sr = lll_reduce(congruent(rl.gram(), b));
        Matrix sb = red.transform * (b * sr.transform);
        std::vector<Vec> basis;
        for (std::size_t j = 0; j < sb.cols(); ++j) basis.push_back(sb.col(j));
        out.push_back({GramLattice(sr.gram), basis});
    }
    std::sort(out.begin(), out.end(), [](const Summand& a, const Summand& b) {
        if (a.lattice.rank() != b.lattice.rank()) return a.lattice.rank() > b.lattice.rank();
        Int da = discriminant(a.lattice), db = discriminant(b.lattice);
        if (da != db) return da > db;
        return a.basis < b.basis;
    });
    return out;
}

}  // namespace e8cm

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "e8cm/isometry.hpp"

namespace e8cm {

// p/q = [a_1, ..., a_n]^- = a_1 - 1/(a_2 - 1/(... - 1/a_n)), every a_i >= 2.
inline std::vector<Int> hj_expand(Int p, Int q) {
    if (!(p > q && q > 0) || gcd(p, q) != 1) throw InputError("need p > q > 0 coprime");
    std::vector<Int> a;
    while (q > 0) {
        Int c = floor_div(p + q - 1, q);
        a.push_back(c);
        Int r = c * q - p;
        p = q;
        q = r;
    }
    return a;
}

// Returns (numerator, denominator) in lowest terms.
inline std::pair<Int, Int> hj_eval(const std::vector<Int>& a) {
    if (a.empty()) throw InputError("empty continued fraction");
    Int num = a.back(), den = 1;
    for (std::size_t i = a.size() - 1; i-- > 0;) {
        // a_i - den/num
        Int n2 = sub(mul(a[i], num), den);
        den = num;
        num = n2;
    }
    Int g = gcd(num < 0 ? -num : num, den < 0 ? -den : den);
    return {num / g, den / g};
}

struct LinearLattice {
    Int p = 0, q = 0;
    std::vector<Int> norms;
    Matrix gram;
};

inline Matrix path_gram(const std::vector<Int>& norms) {
    Matrix g(norms.size(), norms.size());
    for (std::size_t i = 0; i < norms.size(); ++i) {
        g(i, i) = norms[i];
        if (i + 1 < norms.size()) g(i, i + 1) = g(i + 1, i) = -1;
    }
    return g;
}

inline LinearLattice lambda_gram(Int p, Int q) {
    LinearLattice l;
    l.p = p;
    l.q = q;
    l.norms = hj_expand(p, q);
    l.gram = path_gram(l.norms);
    return l;
}

inline bool lens_equivalent(Int p, Int q, Int p2, Int q2) {
    if (p != p2) return false;
    return mod(q, p) == mod(q2, p) || mod(mul(q, q2), p) == mod(1, p);
}

inline Int canonical_q(Int p, Int q) {
    if (p == 1) return 0;
    Int inv = inverse_mod(q, p);
    return std::min(mod(q, p), inv);
}

using LinearShape = std::vector<std::pair<Int, Int>>;  // (p, canonical q), descending p

// Candidate q for one indecomposable summand: canonical representatives
// whose expansion has the summand's rank.
inline std::vector<Int> linear_candidates(Int d, std::size_t rank) {
    std::vector<Int> out;
    for (Int q = 1; q < d; ++q)
        if (gcd(q, d) == 1 && canonical_q(d, q) == q && hj_expand(d, q).size() == rank) out.push_back(q);
    return out;
}

namespace detail {

// Affine lattice x0 + B z (B by columns) cut out by linear equations.
struct AffineSlice {
    Vec x0;
    Matrix basis;
};

// Intersect with {x : row . x = c}; nothing if the slice becomes empty.
inline std::optional<AffineSlice> restrict_slice(const AffineSlice& a, const Vec& row, Int c) {
    const std::size_t n = a.x0.size(), m = a.basis.cols();
    Vec coef(m);
    for (std::size_t j = 0; j < m; ++j) coef[j] = dot(row, a.basis.col(j));
    const Int rhs = sub(c, dot(row, a.x0));
    std::size_t lead = m;
    for (std::size_t j = 0; j < m; ++j)
        if (coef[j] != 0) lead = j;
    if (lead == m) {
        if (rhs != 0) return std::nullopt;
        return a;
    }
    // unimodular U with coef^T U = (g, 0, ..., 0), built as in integer_kernel
    Matrix u = Matrix::identity(m);
    Vec r = coef;
    std::swap(r[0], r[lead]);
    for (std::size_t i = 0; i < m; ++i) std::swap(u(i, 0), u(i, lead));
    for (std::size_t j = 1; j < m; ++j) {
        if (r[j] == 0) continue;
        Int x, y;
        const Int g = ext_gcd(r[0], r[j], x, y);
        const Int ua = r[0] / g, ub = r[j] / g;
        for (std::size_t i = 0; i < m; ++i) {
            const Int c0 = u(i, 0), cj = u(i, j);
            u(i, 0) = add(mul(x, c0), mul(y, cj));
            u(i, j) = sub(mul(ua, cj), mul(ub, c0));
        }
        r[0] = g;
        r[j] = 0;
    }
    if (rhs % r[0] != 0) return std::nullopt;
    const Int w0 = rhs / r[0];
    Matrix bu = a.basis * u;
    AffineSlice out;
    out.x0 = a.x0;
    for (std::size_t i = 0; i < n; ++i) out.x0[i] = add(out.x0[i], mul(bu(i, 0), w0));
    out.basis = Matrix(n, m - 1);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 1; j < m; ++j) out.basis(i, j - 1) = bu(i, j);
    return out;
}

// Depth-first placement of the path vertices. Each new vertex is enumerated
// on the slice fixed by its pairings with the placed ones.
class VertexChainSearch {
public:
    VertexChainSearch(const GramLattice& l, const std::vector<Int>& norms, std::size_t budget)
        : l_(l), norms_(norms), budget_(budget), n_(norms.size()) {
        // start at the far end of the longest run of lightest vertices, then
        // grow the placed interval toward the lighter neighbour
        const Int light = *std::min_element(norms_.begin(), norms_.end());
        std::size_t best_lo = 0, best_len = 0;
        for (std::size_t i = 0; i < n_;) {
            if (norms_[i] != light) { ++i; continue; }
            std::size_t j = i;
            while (j < n_ && norms_[j] == light) ++j;
            if (j - i > best_len) best_lo = i, best_len = j - i;
            i = j;
        }
        const std::size_t best_hi = best_lo + best_len - 1;
        std::size_t s = best_lo;
        if (best_lo > 0 && (best_hi + 1 == n_ || norms_[best_lo - 1] < norms_[best_hi + 1])) s = best_hi;
        std::size_t lo = s, hi = s;
        order_.push_back(s);
        while (order_.size() < n_) {
            const bool left = lo > 0, right = hi + 1 < n_;
            if (left && (!right || norms_[lo - 1] <= norms_[hi + 1]))
                order_.push_back(--lo);
            else
                order_.push_back(++hi);
        }
    }

    std::optional<Matrix> run() {
        placed_.assign(n_, Vec{});
        gplaced_.assign(n_, Vec{});
        echelon_.assign(n_ + 1, Matrix{});
        echelon_[0] = Matrix::identity(n_);
        if (!place(0)) return std::nullopt;
        Matrix b(n_, n_);
        for (std::size_t j = 0; j < n_; ++j)
            for (std::size_t i = 0; i < n_; ++i) b(i, j) = placed_[j][i];
        return b;
    }

private:
    // Part of a basis spans a primitive sublattice. echelon_[k] is unimodular
    // and turns the first k placed vectors lower triangular with unit
    // diagonal; extend it by x or report that x breaks primitivity.
    bool extend_echelon(std::size_t k, const Vec& x) {
        Matrix u = echelon_[k];
        Vec r(n_);
        for (std::size_t j = k; j < n_; ++j) r[j] = dot(x, u.col(j));
        std::size_t lead = n_;
        for (std::size_t j = k; j < n_; ++j)
            if (r[j] != 0) { lead = j; break; }
        if (lead == n_) return false;
        if (lead != k) {
            std::swap(r[k], r[lead]);
            for (std::size_t i = 0; i < n_; ++i) std::swap(u(i, k), u(i, lead));
        }
        for (std::size_t j = k + 1; j < n_; ++j) {
            if (r[j] == 0) continue;
            Int a, b;
            const Int g = ext_gcd(r[k], r[j], a, b);
            const Int ua = r[k] / g, ub = r[j] / g;
            for (std::size_t i = 0; i < n_; ++i) {
                const Int c0 = u(i, k), cj = u(i, j);
                u(i, k) = add(mul(a, c0), mul(b, cj));
                u(i, j) = sub(mul(ua, cj), mul(ub, c0));
            }
            r[k] = g;
            r[j] = 0;
        }
        if (r[k] != 1 && r[k] != -1) return false;
        echelon_[k + 1] = std::move(u);
        return true;
    }

    bool place(std::size_t depth) {
        if (depth == n_) return true;
        const std::size_t v = order_[depth];
        AffineSlice sl{Vec(n_, 0), Matrix::identity(n_)};
        for (std::size_t d = 0; d < depth; ++d) {
            const std::size_t w = order_[d];
            const Int want = (v + 1 == w || w + 1 == v) ? -1 : 0;
            auto next = restrict_slice(sl, gplaced_[w], want);
            if (!next) return false;
            sl = std::move(*next);
        }
        std::vector<Vec> cands;
        if (sl.basis.cols() == 0) {
            if (l_.norm(sl.x0) == norms_[v]) cands.push_back(sl.x0);
        } else {
            for_each_in_coset(l_, sl.basis, sl.x0, norms_[v], [&](const Vec& x, Int nx) {
                if (nx == norms_[v]) cands.push_back(x);
                return true;
            });
        }
        std::sort(cands.begin(), cands.end());
        for (auto& x : cands) {
            if (++steps_ > budget_) throw SearchBudgetExceeded("vertex chain search step budget exhausted");
            if (!extend_echelon(depth, x)) continue;
            placed_[v] = x;
            gplaced_[v] = l_.gram() * x;
            if (place(depth + 1)) return true;
        }
        return false;
    }

    const GramLattice& l_;
    const std::vector<Int>& norms_;
    std::size_t budget_;
    std::size_t n_;
    std::vector<std::size_t> order_;
    std::vector<Vec> placed_, gplaced_;
    std::vector<Matrix> echelon_;
    std::size_t steps_ = 0;
};

}  // namespace detail

// Vertex basis of the path lattice with these norms inside s (columns in
// the coordinates of s), or nothing. A family with the path Gram has
// discriminant equal to disc(s) only when it is a basis, so the caller must
// pass norms whose path determinant is disc(s).
inline std::optional<Matrix> linear_vertex_basis(const GramLattice& s, const std::vector<Int>& norms, std::size_t budget = kDefaultIsometryBudget) {
    if (norms.size() != s.rank()) return std::nullopt;
    Matrix target = path_gram(norms);
    if (determinant(target) != discriminant(s)) return std::nullopt;
    detail::VertexChainSearch search(s, norms, budget);
    auto b = search.run();
    if (b && !(congruent(s.gram(), *b) == target)) throw std::logic_error("vertex basis failed verification");
    return b;
}

namespace detail {

// Vector counts per norm up to max_norm, or nothing past `cap` vectors.
inline std::optional<std::map<Int, std::size_t>> capped_norm_counts(const GramLattice& l, Int max_norm, std::size_t cap) {
    std::map<Int, std::size_t> out;
    std::size_t total = 0;
    bool over = false;
    for_each_short_vector(l, max_norm, [&](const Vec&, Int nx) {
        ++out[nx];
        if (++total > cap) over = true;
        return !over;
    });
    if (over) return std::nullopt;
    return out;
}

}  // namespace detail

// At most one lens class can match. Candidates whose short-vector counts
// differ from s are dropped outright; the rest are searched side by side
// with a growing step budget and the first witness found is the answer.
inline std::optional<Int> recognize_summand(const GramLattice& s, std::size_t max_budget = kDefaultIsometryBudget) {
    const Int d = discriminant(s);
    if (d < 2) return std::nullopt;
    std::vector<Int> open = linear_candidates(d, s.rank());
    // LLL first: slices and enumeration behave far better in a reduced basis
    GramLattice red(lll_reduce(s.gram()).gram);
    constexpr std::size_t kCountCap = 2000000;
    for (Int depth = 4; depth >= 2 && open.size() > 1; --depth) {
        auto mine = detail::capped_norm_counts(red, depth, kCountCap);
        if (!mine) continue;
        std::vector<Int> kept;
        for (Int q : open) {
            auto theirs = detail::capped_norm_counts(GramLattice(path_gram(hj_expand(d, q))), depth, kCountCap);
            if (!theirs || *theirs == *mine) kept.push_back(q);
        }
        open = std::move(kept);
        break;
    }
    for (std::size_t budget = 2000; !open.empty(); budget *= 8) {
        std::vector<Int> still_open;
        for (Int q : open) {
            try {
                if (linear_vertex_basis(red, hj_expand(d, q), budget)) return q;
            } catch (const SearchBudgetExceeded&) {
                if (budget >= max_budget) throw;
                still_open.push_back(q);
            }
        }
        open = std::move(still_open);
    }
    return std::nullopt;
}

// Recognize a positive definite lattice as an orthogonal sum of Λ(p,q).
inline std::optional<LinearShape> recognize_linear(const GramLattice& l) {
    LinearShape out;
    for (auto& s : decompose(l)) {
        auto q = recognize_summand(s.lattice);
        if (!q) return std::nullopt;
        out.emplace_back(discriminant(s.lattice), *q);
    }
    std::sort(out.begin(), out.end(), [](auto& a, auto& b) { return a.first != b.first ? a.first > b.first : a.second < b.second; });
    return out;
}

// ---------------------------------------------------------------------------
// intervals in a linear lattice, vertices numbered 1..n

struct Interval {
    int lo = 1, hi = 1;
    int sign = 1;
    bool operator==(const Interval& o) const { return lo == o.lo && hi == o.hi && sign == o.sign; }
    bool contains(int v) const { return lo <= v && v <= hi; }
};

inline Vec interval_sum(const LinearLattice& l, const Interval& t) {
    if (t.lo < 1 || t.hi < t.lo || t.hi > static_cast<int>(l.norms.size())) throw InputError("interval out of range");
    Vec v(l.norms.size(), 0);
    for (int i = t.lo; i <= t.hi; ++i) v[static_cast<std::size_t>(i - 1)] = t.sign;
    return v;
}

// Inverse of interval_sum: +-(0..0 1..1 0..0) or nothing.
inline std::optional<Interval> as_interval(const Vec& v) {
    int lo = -1, hi = -1, sign = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0) continue;
        if (v[i] != 1 && v[i] != -1) return std::nullopt;
        if (sign == 0) {
            sign = static_cast<int>(v[i]);
            lo = static_cast<int>(i) + 1;
        } else if (v[i] != sign || hi != static_cast<int>(i)) {
            return std::nullopt;
        }
        hi = static_cast<int>(i) + 1;
    }
    if (sign == 0) return std::nullopt;
    return Interval{lo, hi, sign};
}

inline Int interval_norm(const LinearLattice& l, const Interval& t) {
    Int s = 0;
    for (int i = t.lo; i <= t.hi; ++i) s += l.norms[static_cast<std::size_t>(i - 1)];
    return s - 2 * (t.hi - t.lo);
}

// Vertices of norm >= 3 inside t.
inline std::vector<int> heavy_vertices(const LinearLattice& l, const Interval& t) {
    std::vector<int> out;
    for (int i = t.lo; i <= t.hi; ++i)
        if (l.norms[static_cast<std::size_t>(i - 1)] >= 3) out.push_back(i);
    return out;
}

inline bool interval_breakable(const LinearLattice& l, const Interval& t) { return heavy_vertices(l, t).size() >= 2; }

// `nested` is strict containment with no common endpoint; the other four
// follow the usual abut / distant / crossing split.
enum class Relation { same, share_endpoint, consecutive, nested, crossing, distant };

inline const char* relation_name(Relation r) {
    switch (r) {
        case Relation::same: return "same";
        case Relation::share_endpoint: return "share_endpoint";
        case Relation::consecutive: return "consecutive";
        case Relation::nested: return "nested";
        case Relation::crossing: return "crossing";
        default: return "distant";
    }
}

inline Relation relation(const Interval& a, const Interval& b) {
    if (a.lo == b.lo && a.hi == b.hi) return Relation::same;
    if (a.lo == b.lo || a.hi == b.hi) return Relation::share_endpoint;
    if (b.lo == a.hi + 1 || a.lo == b.hi + 1) return Relation::consecutive;
    if (a.hi < b.lo || b.hi < a.lo) return Relation::distant;
    if ((a.lo < b.lo && b.hi < a.hi) || (b.lo < a.lo && a.hi < b.hi)) return Relation::nested;
    return Relation::crossing;
}

inline bool abuts(const Interval& a, const Interval& b) {
    auto r = relation(a, b);
    return r == Relation::share_endpoint || r == Relation::consecutive;
}

// a ≺ b: common endpoint and a inside b
inline bool precedes(const Interval& a, const Interval& b) {
    return relation(a, b) == Relation::share_endpoint && b.lo <= a.lo && a.hi <= b.hi;
}

struct BreakablePairing {
    Int pairing = 0;
    int clause = 0;  // 1..5 for |[V]| >= 3, 0 for |[V]| = 2
    Int expected = 0;
    bool matches = false;
};

// <[T],[V]> for breakable T and unbreakable V against the case table.
// Clause 2's alternative "|[V]| = 3 and V consecutive to T" is left out:
// consecutive intervals always pair to -1 (clause 4).
inline BreakablePairing breakable_pairing_case(const LinearLattice& l, const Interval& t, const Interval& v) {
    if (!interval_breakable(l, t)) throw InputError("T must be breakable");
    if (interval_breakable(l, v)) throw InputError("V must be unbreakable");
    const Int nv = interval_norm(l, v);
    if (nv < 2) throw InputError("|[V]| must be at least 2");
    Interval tp{t.lo, t.hi, 1}, vp{v.lo, v.hi, 1};
    BreakablePairing out;
    out.pairing = bilinear(l.gram, interval_sum(l, tp), interval_sum(l, vp));
    const Relation rel = relation(vp, tp);
    if (nv == 2) {
        out.clause = 0;
        const bool ab = abuts(vp, tp);
        out.matches = ab ? (out.pairing == 1 || out.pairing == -1) : out.pairing == 0;
        out.expected = ab ? out.pairing : 0;
        return out;
    }
    const auto heavy = heavy_vertices(l, vp);
    const bool z_in = !heavy.empty() && tp.contains(heavy[0]);
    if (precedes(vp, tp)) {
        out.clause = 1;
        out.expected = nv - 1;
    } else if (rel == Relation::consecutive) {
        out.clause = 4;
        out.expected = -1;
    } else if (z_in && (rel == Relation::crossing || rel == Relation::nested)) {
        out.clause = nv == 3 ? 3 : 2;
        out.expected = nv - 2;
    } else if (!z_in && (rel == Relation::distant || rel == Relation::crossing)) {
        out.clause = 5;
        out.expected = 0;
    } else {
        throw std::logic_error("unclassified interval pair");
    }
    out.matches = out.pairing == out.expected;
    return out;
}

// Sign identities for a norm-2 vector z mediating between x and y (all
// signed intervals). Returns nothing when the hypotheses do not apply.
// x.y = 0 gives eps(x)eps(y) = (x.z)(y.z); otherwise crossing x, y give
// eps(x)eps(y) = -(x.z)(y.z). Crossing intervals whose overlap is z pair to
// zero and follow the first rule, not the second.
inline std::optional<bool> sign_identity_holds(const LinearLattice& l, const Interval& x, const Interval& y, const Interval& z) {
    const Vec vx = interval_sum(l, x), vy = interval_sum(l, y), vz = interval_sum(l, z);
    if (l.gram.rows() == 0 || bilinear(l.gram, vz, vz) != 2) return std::nullopt;
    if (bilinear(l.gram, vx, vx) < 3 || bilinear(l.gram, vy, vy) < 3) return std::nullopt;
    const Int xz = bilinear(l.gram, vx, vz), yz = bilinear(l.gram, vy, vz);
    if ((xz != 1 && xz != -1) || (yz != 1 && yz != -1)) return std::nullopt;
    const Int eps = x.sign * y.sign;
    if (bilinear(l.gram, vx, vy) == 0) return eps == xz * yz;
    if (relation(x, y) == Relation::crossing) return eps == -xz * yz;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// intersection graphs

struct IntersectionGraph {
    std::vector<Int> norms;
    std::vector<std::vector<bool>> adj;

    std::size_t size() const { return norms.size(); }
    static IntersectionGraph of_intervals(const LinearLattice& l, const std::vector<Interval>& ts) {
        IntersectionGraph g;
        g.adj.assign(ts.size(), std::vector<bool>(ts.size(), false));
        for (std::size_t i = 0; i < ts.size(); ++i) {
            g.norms.push_back(interval_norm(l, ts[i]));
            for (std::size_t j = 0; j < ts.size(); ++j)
                if (i != j && abuts(ts[i], ts[j])) g.adj[i][j] = true;
        }
        return g;
    }
    static IntersectionGraph from_edges(std::vector<Int> norms, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
        IntersectionGraph g;
        g.adj.assign(norms.size(), std::vector<bool>(norms.size(), false));
        g.norms = std::move(norms);
        for (auto [a, b] : edges) g.adj[a][b] = g.adj[b][a] = true;
        return g;
    }
};

struct Obstructions {
    bool has_claw = false;
    bool has_heavy_triple = false;
    bool has_incomplete_cycle = false;
    std::vector<std::size_t> claw;          // centre first
    std::vector<std::size_t> heavy_triple;
    std::vector<std::size_t> incomplete_block;
};

namespace detail {

inline bool connected_without(const IntersectionGraph& g, std::size_t from, std::size_t to, std::size_t removed) {
    std::vector<bool> seen(g.size(), false);
    std::vector<std::size_t> stack{from};
    seen[from] = true;
    if (removed < g.size()) seen[removed] = true;
    while (!stack.empty()) {
        std::size_t u = stack.back();
        stack.pop_back();
        if (u == to) return true;
        for (std::size_t v = 0; v < g.size(); ++v)
            if (g.adj[u][v] && !seen[v]) {
                seen[v] = true;
                stack.push_back(v);
            }
    }
    return false;
}

// Biconnected components (vertex sets) by Hopcroft-Tarjan.
inline std::vector<std::vector<std::size_t>> blocks(const IntersectionGraph& g) {
    const std::size_t n = g.size();
    std::vector<int> disc(n, -1), low(n, 0);
    std::vector<std::pair<std::size_t, std::size_t>> estack;
    std::vector<std::vector<std::size_t>> out;
    int timer = 0;
    std::function<void(std::size_t, std::size_t)> dfs = [&](std::size_t u, std::size_t parent) {
        disc[u] = low[u] = timer++;
        for (std::size_t v = 0; v < n; ++v) {
            if (!g.adj[u][v] || v == parent) continue;
            if (disc[v] < 0) {
                estack.push_back({u, v});
                dfs(v, u);
                low[u] = std::min(low[u], low[v]);
                if (low[v] >= disc[u]) {
                    std::vector<std::size_t> comp;
                    while (true) {
                        auto e = estack.back();
                        estack.pop_back();
                        comp.push_back(e.first);
                        comp.push_back(e.second);
                        if (e.first == u && e.second == v) break;
                    }
                    std::sort(comp.begin(), comp.end());
                    comp.erase(std::unique(comp.begin(), comp.end()), comp.end());
                    out.push_back(comp);
                }
            } else if (disc[v] < disc[u]) {
                estack.push_back({u, v});
                low[u] = std::min(low[u], disc[v]);
            }
        }
    };
    for (std::size_t u = 0; u < n; ++u)
        if (disc[u] < 0) dfs(u, SIZE_MAX);
    return out;
}

}  // namespace detail

inline Obstructions graph_obstructions(const IntersectionGraph& g) {
    Obstructions o;
    const std::size_t n = g.size();
    // claw: a centre with three pairwise non-adjacent neighbours
    for (std::size_t c = 0; c < n && !o.has_claw; ++c) {
        std::vector<std::size_t> nb;
        for (std::size_t v = 0; v < n; ++v)
            if (g.adj[c][v]) nb.push_back(v);
        for (std::size_t a = 0; a < nb.size() && !o.has_claw; ++a)
            for (std::size_t b = a + 1; b < nb.size() && !o.has_claw; ++b)
                for (std::size_t d = b + 1; d < nb.size() && !o.has_claw; ++d)
                    if (!g.adj[nb[a]][nb[b]] && !g.adj[nb[a]][nb[d]] && !g.adj[nb[b]][nb[d]]) {
                        o.has_claw = true;
                        o.claw = {c, nb[a], nb[b], nb[d]};
                    }
    }
    // heavy triple: three norm >= 3 vertices in one component, none separating the others
    std::vector<std::size_t> heavy;
    for (std::size_t v = 0; v < n; ++v)
        if (g.norms[v] >= 3) heavy.push_back(v);
    for (std::size_t a = 0; a < heavy.size() && !o.has_heavy_triple; ++a)
        for (std::size_t b = a + 1; b < heavy.size() && !o.has_heavy_triple; ++b)
            for (std::size_t c = b + 1; c < heavy.size() && !o.has_heavy_triple; ++c) {
                const std::size_t x = heavy[a], y = heavy[b], z = heavy[c];
                if (!detail::connected_without(g, x, y, SIZE_MAX) || !detail::connected_without(g, x, z, SIZE_MAX)) continue;
                if (detail::connected_without(g, y, z, x) && detail::connected_without(g, x, z, y) && detail::connected_without(g, x, y, z)) {
                    o.has_heavy_triple = true;
                    o.heavy_triple = {x, y, z};
                }
            }
    // incomplete cycle: a block that is not a clique
    for (auto& blk : detail::blocks(g)) {
        bool clique = true;
        for (std::size_t i = 0; i < blk.size() && clique; ++i)
            for (std::size_t j = i + 1; j < blk.size() && clique; ++j) clique = g.adj[blk[i]][blk[j]];
        if (!clique) {
            o.has_incomplete_cycle = true;
            o.incomplete_block = blk;
            break;
        }
    }
    return o;
}

}  // namespace e8cm

#pragma once

#include <algorithm>
#include <atomic>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "e8cm/e8.hpp"

namespace e8cm {

// tau = (s, sigma) in E8 + Z^{n+1}, positive definite convention.
struct Tau {
    e8::Vector s;
    Vec sigma;  // ascending, nonnegative
    Int norm = 0;

    // Normalizes: Weyl-reduces s, replaces sigma by sorted absolute values.
    static Tau from_dual(const e8::Coords& s_star, Vec sigma) { return from_vector(e8::Vector::from_dual(s_star), std::move(sigma)); }
    static Tau from_simple(const e8::Coords& s, Vec sigma) { return from_vector(e8::Vector::from_simple(s), std::move(sigma)); }
    static Tau from_vector(const e8::Vector& v, Vec sigma) {
        Tau t;
        t.s = e8::weyl_reduce(v).vector;
        for (auto& x : sigma) x = x < 0 ? -x : x;
        std::sort(sigma.begin(), sigma.end());
        t.sigma = std::move(sigma);
        t.norm = t.s.norm();
        for (Int x : t.sigma) t.norm = add(t.norm, mul(x, x));
        return t;
    }

    int n() const { return static_cast<int>(sigma.size()) - 1; }
    Int sigma_l1() const {
        Int s = 0;
        for (Int x : sigma) s += x;
        return s;
    }
    const e8::Coords& s_star() const { return s.dual; }
    // coordinates in E8 + Z^{n+1}: simple-root part then tail
    Vec ambient() const {
        Vec v(s.simple.begin(), s.simple.end());
        v.insert(v.end(), sigma.begin(), sigma.end());
        return v;
    }
    bool operator==(const Tau& o) const { return s == o.s && sigma == o.sigma; }
};

inline GramLattice ambient_lattice(std::size_t tail) {
    Matrix g(8 + tail, 8 + tail);
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = 0; j < 8; ++j) g(i, j) = e8::gram()(i, j);
    for (std::size_t i = 0; i < tail; ++i) g(8 + i, 8 + i) = 1;
    return GramLattice(g);
}

inline std::vector<Int> parity_interval(Int a, Int b) {
    if (b < a || mod(b - a, 2) != 0) throw InputError("parity interval needs b >= a and b = a mod 2");
    std::vector<Int> out;
    for (Int x = a; x <= b; x += 2) out.push_back(x);
    return out;
}

inline bool is_changemaker(const Vec& sigma) {
    Int prefix = 0;
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        if (sigma[i] < 0) throw InputError("changemaker entries must be nonnegative");
        if (i && sigma[i] < sigma[i - 1]) throw InputError("changemaker input must be sorted ascending");
    }
    for (Int x : sigma) {
        if (x > prefix + 1) return false;
        prefix += x;
    }
    return true;
}

// All changemakers of the given length, lexicographic.
inline std::vector<Vec> changemaker_tails(std::size_t len) {
    std::vector<Vec> out;
    Vec cur;
    std::function<void(Int, Int)> rec = [&](Int prev, Int prefix) {
        if (cur.size() == len) {
            out.push_back(cur);
            return;
        }
        for (Int x = prev; x <= prefix + 1; ++x) {
            cur.push_back(x);
            rec(x, prefix + x);
            cur.pop_back();
        }
    };
    rec(0, 0);
    return out;
}

namespace detail {

// {sum chi_i sigma_i : chi_i = +-1}, and the same with exactly one chi_i = +-3.
struct TailSums {
    std::vector<Int> plain, with_three;
};

inline TailSums tail_sums(const Vec& sigma) {
    std::set<Int> p{0}, t;
    for (Int x : sigma) {
        std::set<Int> np, nt;
        for (Int v : p) {
            np.insert(v + x);
            np.insert(v - x);
            nt.insert(v + 3 * x);
            nt.insert(v - 3 * x);
        }
        for (Int v : t) {
            nt.insert(v + x);
            nt.insert(v - x);
        }
        p = std::move(np);
        t = std::move(nt);
    }
    return {{p.begin(), p.end()}, {t.begin(), t.end()}};
}

}  // namespace detail

struct PairingProfile {
    Int c = 0;                    // max short pairing
    Int C = 0;                    // max Short pairing
    std::vector<Int> short_set;   // pairings with {0} + {+-1}^{n+1}
    std::vector<Int> b1, b2;      // Short pairings split by family
    std::vector<Int> Short_set;   // union of b1 and b2, sorted
};

inline PairingProfile pairing_profile(const Tau& t) {
    PairingProfile pp;
    auto ts = detail::tail_sums(t.sigma);
    pp.short_set = ts.plain;
    pp.c = pp.short_set.back();
    std::set<Int> b1;
    std::set<Int> root_pairings;
    for (auto& r : e8::positive_roots()) {
        Int a = e8::pair_with_dual(r.coords, t.s.dual);
        root_pairings.insert(a);
        root_pairings.insert(-a);
    }
    for (Int a : root_pairings)
        for (Int m : pp.short_set) b1.insert(2 * a + m);
    pp.b1.assign(b1.begin(), b1.end());
    pp.b2 = ts.with_three;
    std::set<Int> all(b1);
    all.insert(pp.b2.begin(), pp.b2.end());
    pp.Short_set.assign(all.begin(), all.end());
    pp.C = pp.Short_set.back();
    return pp;
}

inline bool is_e8_changemaker(const Tau& t) {
    PairingProfile pp = pairing_profile(t);
    if (pp.short_set != parity_interval(-pp.c, pp.c)) return false;
    for (Int v = pp.c + 2; v <= pp.C; v += 2)
        if (!std::binary_search(pp.Short_set.begin(), pp.Short_set.end(), v)) return false;
    return true;
}

// Clause numbers (1..6) of the necessary conditions that fail.
inline std::vector<int> lemma_violations(const e8::Coords& s, Int sigma_l1) {
    const Int m = sigma_l1 + 1;
    const Int s1 = s[0], s2 = s[1], s3 = s[2], s4 = s[3], s5 = s[4], s6 = s[5], s7 = s[6], s8 = s[7];
    std::vector<int> bad;
    if (s1 > m || s5 > m || s6 > m || s7 > m || s8 > m) bad.push_back(1);
    if (s2 > m && s3 > m) bad.push_back(2);
    if (s2 > m && (s2 > s3 + s4 + m || s2 > s5 + 2 * s6 + 2 * s7 + s8 + m)) bad.push_back(3);
    if (s3 > m && (s3 > s2 + m || s3 > s5 + s6 + s7 + s8 + m)) bad.push_back(4);
    if (s4 > m && s4 > s1 + s2 + s5 + s6 + s7 + s8 + m) bad.push_back(5);
    if (s2 > m && s4 > m && (s2 > s3 + m || s4 > s1 + s5 + s6 + s7 + s8 + m)) bad.push_back(6);
    return bad;
}

inline std::vector<int> satisfies_lemma_constraints(const Tau& t) { return lemma_violations(t.s.dual, t.sigma_l1()); }

namespace detail {

// Fixed-sigma kernel of the E8-changemaker test, used by the enumerator.
// Odd slots v = c + 2k (k >= 1) above the short range are indexed by k; a
// root pairing a covers 2a + [-c, c], i.e. k in [a - c, a].
class CoverageKernel {
public:
    explicit CoverageKernel(const Vec& sigma) {
        auto ts = tail_sums(sigma);
        Int c = 0;
        for (Int x : sigma) c += x;
        c_ = c;
        sigma_ok_ = ts.plain == parity_interval(-c, c);
        for (Int v : ts.with_three)
            if (v >= c + 2) b2_.push_back((v - c) / 2);
        b2max_ = b2_.empty() ? 0 : b2_.back();
    }

    bool sigma_ok() const { return sigma_ok_; }

    // a: the 120 positive-root pairings <R, s>
    bool covers(const Int* a, std::size_t count, std::vector<int>& scratch) const {
        Int top = 0;
        for (std::size_t i = 0; i < count; ++i) top = std::max(top, a[i]);
        const Int len = std::max(top, b2max_);  // C = c + 2 len
        if (len < 1) return true;
        scratch.assign(static_cast<std::size_t>(len + 2), 0);
        for (std::size_t i = 0; i < count; ++i) {
            Int lo = std::max<Int>(1, a[i] - c_), hi = a[i];
            if (hi < lo) continue;
            ++scratch[static_cast<std::size_t>(lo)];
            --scratch[static_cast<std::size_t>(hi + 1)];
        }
        std::size_t j = 0;
        int run = 0;
        for (Int k = 1; k <= len; ++k) {
            run += scratch[static_cast<std::size_t>(k)];
            if (run > 0) continue;
            while (j < b2_.size() && b2_[j] < k) ++j;
            if (j < b2_.size() && b2_[j] == k) continue;
            return false;
        }
        return true;
    }

private:
    Int c_ = 0;
    bool sigma_ok_ = false;
    std::vector<Int> b2_;
    Int b2max_ = 0;
};

}  // namespace detail

// Visits, in lexicographic order of s*, every chamber s (s != 0 unless sigma
// is nonzero) such that (s, sigma) is an E8-changemaker and, if given,
// |tau| <= norm_cap. Only s*_1 in [first_lo, first_hi] is scanned, which is
// how the enumerator partitions work between threads.
template <class Visit>
void for_each_e8_changemaker(const Vec& sigma, std::optional<Int> norm_cap, Visit&& visit, Int first_lo = 0,
                             Int first_hi = INT64_MAX) {
    detail::CoverageKernel kernel(sigma);
    if (!kernel.sigma_ok()) return;
    Int l1 = 0, tail_norm = 0;
    for (Int x : sigma) {
        l1 += x;
        tail_norm += x * x;
    }
    const bool sigma_zero = l1 == 0;
    const Int m = l1 + 1;
    const Int cap = norm_cap ? *norm_cap - tail_norm : INT64_MAX;
    if (cap < 0) return;
    const Matrix& inv = e8::gram_inverse();
    const auto& roots = e8::root_table();
    std::vector<int> scratch;
    Int a[120];
    e8::Coords s{};
    // norm of s restricted to the already fixed coordinates, monotone since A^-1 > 0
    auto norm_of = [&](const e8::Coords& d) {
        Int acc = 0;
        for (int i = 0; i < 8; ++i) {
            if (!d[i]) continue;
            for (int j = 0; j < 8; ++j) acc += d[i] * inv(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) * d[j];
        }
        return acc;
    };
    // loop order s1 s5 s6 s7 s8 s2 s3 s4
    for (s[0] = first_lo; s[0] <= std::min(m, first_hi); ++s[0]) {
        s[4] = s[5] = s[6] = s[7] = s[1] = s[2] = s[3] = 0;
        if (norm_of(s) > cap) break;
        for (s[4] = 0; s[4] <= m; ++s[4]) {
            s[5] = s[6] = s[7] = s[1] = s[2] = s[3] = 0;
            if (norm_of(s) > cap) break;
            for (s[5] = 0; s[5] <= m; ++s[5]) {
                s[6] = s[7] = s[1] = s[2] = s[3] = 0;
                if (norm_of(s) > cap) break;
                for (s[6] = 0; s[6] <= m; ++s[6]) {
                    s[7] = s[1] = s[2] = s[3] = 0;
                    if (norm_of(s) > cap) break;
                    for (s[7] = 0; s[7] <= m; ++s[7]) {
                        s[1] = s[2] = s[3] = 0;
                        if (norm_of(s) > cap) break;
                        for (s[1] = 0; s[1] <= 3 * m; ++s[1]) {
                            s[2] = s[3] = 0;
                            if (norm_of(s) > cap) break;
                            for (s[2] = 0; s[2] <= 2 * m; ++s[2]) {
                                s[3] = 0;
                                if (norm_of(s) > cap) break;
                                const Int s1 = s[0], s2 = s[1], s3 = s[2], s5 = s[4], s6 = s[5], s7 = s[6], s8 = s[7];
                                if (s2 > m && s3 > m) continue;
                                if (s3 > m && (s3 > s2 + m || s3 > s5 + s6 + s7 + s8 + m)) continue;
                                if (s2 > m && s2 > s5 + 2 * s6 + 2 * s7 + s8 + m) continue;
                                // admissible s4 form an interval
                                Int lo = 0, hi = 7 * m;
                                if (s2 > m) lo = std::max<Int>(lo, s2 - s3 - m);
                                Int hi5 = std::max(m, s1 + s2 + s5 + s6 + s7 + s8 + m);
                                hi = std::min(hi, hi5);
                                if (s2 > m) {
                                    // above m, clause 6 applies
                                    if (s2 > s3 + m) hi = std::min(hi, m);
                                    else hi = std::min(hi, std::max(m, s1 + s5 + s6 + s7 + s8 + m));
                                }
                                if (lo > hi) continue;
                                for (std::size_t r = 0; r < 120; ++r) {
                                    const auto& R = roots[r];
                                    a[r] = R[0] * s1 + R[1] * s2 + R[2] * s3 + R[3] * lo + R[4] * s5 + R[5] * s6 + R[6] * s7 + R[7] * s8;
                                }
                                for (s[3] = lo; s[3] <= hi; ++s[3]) {
                                    if (s[3] > lo)
                                        for (std::size_t r = 0; r < 120; ++r) a[r] += roots[r][3];
                                    if (norm_of(s) > cap) break;
                                    bool zero = sigma_zero && std::all_of(s.begin(), s.end(), [](Int x) { return x == 0; });
                                    if (zero) continue;
                                    if (kernel.covers(a, 120, scratch))
                                        if (!visit(static_cast<const e8::Coords&>(s))) return;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
}

struct EnumerationOptions {
    std::optional<Vec> sigma;           // restrict to one tail
    std::optional<Int> norm_cap;        // bound on |tau|
    std::optional<std::size_t> limit;   // stop after this many results
    unsigned jobs = 1;
};

struct PartialResultError : std::runtime_error {
    std::vector<Tau> partial;
    PartialResultError(std::string what, std::vector<Tau> p) : std::runtime_error(std::move(what)), partial(std::move(p)) {}
};

// Nonzero E8-changemakers with sigma of length n+1, ordered by sigma then s*.
inline std::vector<Tau> enumerate_e8_changemakers(int n, const EnumerationOptions& opt = {}) {
    if (n < -1) throw InputError("n must be >= -1");
    std::vector<Vec> tails;
    if (opt.sigma) {
        if (static_cast<int>(opt.sigma->size()) != n + 1) throw InputError("sigma filter length must be n+1");
        Vec sg = *opt.sigma;
        if (!is_changemaker(sg)) return {};
        tails.push_back(sg);
    } else {
        tails = changemaker_tails(static_cast<std::size_t>(n + 1));
    }
    std::vector<Tau> out;
    for (auto& sigma : tails) {
        Int l1 = 0;
        for (Int x : sigma) l1 += x;
        const Int m = l1 + 1;
        const unsigned jobs = std::max(1u, std::min<unsigned>(opt.jobs, static_cast<unsigned>(m + 1)));
        // s*_1 slices, concatenated in order
        std::vector<std::vector<e8::Coords>> slices(static_cast<std::size_t>(m + 1));
        std::atomic<std::size_t> found{0};
        const std::size_t lim = opt.limit ? *opt.limit - std::min(*opt.limit, out.size()) : SIZE_MAX;
        auto work = [&](unsigned w) {
            for (Int f = static_cast<Int>(w); f <= m; f += static_cast<Int>(jobs)) {
                for_each_e8_changemaker(sigma, opt.norm_cap, [&](const e8::Coords& s) {
                    slices[static_cast<std::size_t>(f)].push_back(s);
                    return found.fetch_add(1) + 1 <= lim || jobs > 1;
                }, f, f);
            }
        };
        if (jobs == 1) {
            work(0);
        } else {
            std::vector<std::thread> pool;
            for (unsigned w = 0; w < jobs; ++w) pool.emplace_back(work, w);
            for (auto& th : pool) th.join();
        }
        for (auto& sl : slices)
            for (auto& s : sl) {
                if (opt.limit && out.size() >= *opt.limit)
                    throw PartialResultError("result limit reached; output is partial", std::move(out));
                out.push_back(Tau::from_dual(s, sigma));
            }
    }
    return out;
}

// Largest |tau| over E8-changemakers with sigma of length 0, 1 or 2.
inline std::pair<Int, Tau> max_norm_small_n(unsigned jobs = 1) {
    Int best = -1;
    Tau arg;
    for (int n = -1; n <= 1; ++n) {
        for (auto& sigma : changemaker_tails(static_cast<std::size_t>(n + 1))) {
            EnumerationOptions o;
            o.sigma = sigma;
            o.jobs = jobs;
            for (auto& t : enumerate_e8_changemakers(n, o))
                if (t.norm > best) {
                    best = t.norm;
                    arg = t;
                }
        }
    }
    return {best, arg};
}

}  // namespace e8cm

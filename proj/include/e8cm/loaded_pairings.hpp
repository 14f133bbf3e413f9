#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "e8cm/standard_basis.hpp"

namespace e8cm {

// Linear integer feasibility over x = (s*_1..s*_8, M), M = |sigma|_1 + 1.
// A row (a, b) means a.x <= b.
struct LinearRow {
    std::array<Int, 9> a{};
    Int b = 0;
    bool operator<(const LinearRow& o) const { return a != o.a ? a < o.a : b < o.b; }
};
using LinearSystem = std::vector<LinearRow>;

namespace fm {

constexpr std::size_t kVars = 9;
constexpr std::size_t kM = 8;

inline LinearRow row(std::initializer_list<std::pair<std::size_t, Int>> terms, Int b) {
    LinearRow r;
    for (auto [i, c] : terms) r.a[i] += c;
    r.b = b;
    return r;
}

// pairing of an E8 vector (simple coordinates) with s, as a row over s*
inline std::array<Int, 9> pairing_row(const e8::Coords& v) {
    std::array<Int, 9> a{};
    for (std::size_t i = 0; i < 8; ++i) a[i] = v[i];
    return a;
}

inline LinearRow le(std::array<Int, 9> a, Int b) { return LinearRow{a, b}; }
inline LinearRow ge(std::array<Int, 9> a, Int b) {
    for (auto& x : a) x = -x;
    return LinearRow{a, -b};
}
inline std::array<Int, 9> plus(std::array<Int, 9> a, std::size_t i, Int c) {
    a[i] += c;
    return a;
}

// Divide by the content and round the bound down (valid on integer points).
inline bool normalize(LinearRow& r) {
    Int g = 0;
    for (Int x : r.a) g = gcd(g, x < 0 ? -x : x);
    if (g == 0) return r.b >= 0;
    for (auto& x : r.a) x /= g;
    r.b = floor_div(r.b, g);
    return true;
}

// true if no integer point satisfies the system; false if Fourier-Motzkin
// with rounding cannot refute it (or the row budget is exceeded).
inline bool refutes(LinearSystem sys, std::size_t budget = 20000) {
    std::map<std::array<Int, 9>, Int> cur;
    auto insert = [&](LinearRow r) {
        if (!normalize(r)) return false;
        bool zero = std::all_of(r.a.begin(), r.a.end(), [](Int x) { return x == 0; });
        if (zero) return true;
        auto it = cur.find(r.a);
        if (it == cur.end() || it->second > r.b) cur[r.a] = r.b;
        return true;
    };
    for (auto& r : sys)
        if (!insert(r)) return true;
    std::vector<bool> gone(kVars, false);
    for (std::size_t step = 0; step < kVars; ++step) {
        // cheapest variable to eliminate
        std::size_t best = kVars, best_cost = SIZE_MAX;
        for (std::size_t v = 0; v < kVars; ++v) {
            if (gone[v]) continue;
            std::size_t np = 0, nn = 0;
            for (auto& [a, b] : cur) {
                if (a[v] > 0) ++np;
                if (a[v] < 0) ++nn;
            }
            std::size_t cost = np * nn;
            if (cost < best_cost) {
                best_cost = cost;
                best = v;
            }
        }
        gone[best] = true;
        std::vector<LinearRow> pos, neg;
        std::map<std::array<Int, 9>, Int> next;
        for (auto& [a, b] : cur) {
            if (a[best] > 0) pos.push_back({a, b});
            else if (a[best] < 0) neg.push_back({a, b});
            else next[a] = b;
        }
        cur.swap(next);
        for (auto& p : pos)
            for (auto& q : neg) {
                const Int cp = -q.a[best], cq = p.a[best];
                LinearRow r;
                for (std::size_t i = 0; i < kVars; ++i) r.a[i] = add(mul(cp, p.a[i]), mul(cq, q.a[i]));
                r.b = add(mul(cp, p.b), mul(cq, q.b));
                if (!insert(r)) return true;
            }
        if (cur.size() > budget) return false;
    }
    return false;
}

inline bool holds(const LinearSystem& sys, const e8::Coords& s_star, Int m) {
    for (auto& r : sys) {
        __int128 acc = static_cast<__int128>(r.a[kM]) * m;
        for (std::size_t i = 0; i < 8; ++i) acc += static_cast<__int128>(r.a[i]) * s_star[i];
        if (acc > r.b) return false;
    }
    return true;
}

}  // namespace fm

// One loaded shape u = w_j|E8 from the construction recipes together with
// the DNF of its guards (each alternative is a conjunction of rows).
struct LoadedShape {
    int j = 0;
    std::string label;
    e8::Coords u{};
    std::vector<LinearSystem> guards;
};

inline std::vector<LoadedShape> loaded_shapes(W4Rule rule = W4Rule::literal) {
    using fm::ge;
    using fm::le;
    using fm::pairing_row;
    using fm::plus;
    const std::array<Int, 9> zero{};
    auto coord = [&](std::size_t i) {
        auto a = zero;
        a[i] = 1;
        return a;
    };
    // product of DNFs
    auto conj = [](const std::vector<LinearSystem>& x, const std::vector<LinearSystem>& y) {
        std::vector<LinearSystem> out;
        for (auto& p : x)
            for (auto& q : y) {
                LinearSystem r = p;
                r.insert(r.end(), q.begin(), q.end());
                out.push_back(r);
            }
        return out;
    };
    std::vector<LoadedShape> out;
    auto make = [](int j, std::string label, std::initializer_list<std::pair<int, Int>> terms, std::vector<LinearSystem> g) {
        LoadedShape s;
        s.j = j;
        s.label = std::move(label);
        for (auto [i, c] : terms) s.u[static_cast<std::size_t>(i - 1)] += c;
        s.guards = std::move(g);
        return s;
    };
    out.push_back(make(3, "-e3+e2", {{3, -1}, {2, 1}}, {{}}));
    out.push_back(make(2, "-e2+e4", {{2, -1}, {4, 1}}, {{le(coord(2), 0)}}));
    out.push_back(make(2, "-e2+e3", {{2, -1}, {3, 1}},
                       {{ge(coord(2), 1), le(coord(3), 0)},
                        {ge(coord(2), 1), le(plus(plus(coord(1), 2, -1), 3, -1), -1)}}));
    out.push_back(make(2, "-e2+e3+e4", {{2, -1}, {3, 1}, {4, 1}},
                       {{ge(coord(2), 1), ge(coord(3), 1), ge(plus(plus(coord(1), 2, -1), 3, -1), 0)}}));
    // w4: step 1 then a prefix of e1, e5, e6, e7, e8
    const std::size_t order[5] = {0, 4, 5, 6, 7};
    const auto& gram = e8::gram();
    for (int with2 = 0; with2 < 2; ++with2) {
        std::vector<LinearSystem> g;
        if (with2) {
            g = {{ge(coord(1), 1), le(plus(coord(1), fm::kM, -1), 0)}};
        } else {
            g = {{le(coord(1), 0)}, {ge(plus(coord(1), fm::kM, -1), 1)}};
        }
        e8::Coords w{};
        w[3] = -1;
        if (with2) w[1] = 1;
        // increments (as rows over s*) tested at step `len` with running vector w
        auto lookahead = [&](const e8::Coords& cur, std::size_t len) {
            std::vector<std::array<Int, 9>> incs;
            Vec v(cur.begin(), cur.end());
            const bool norm4 = bilinear(gram, v, v) == 4;
            std::array<Int, 9> chain{};
            for (std::size_t k = len; k < 5; ++k) {
                chain[order[k]] = 1;
                if (rule == W4Rule::cumulative) {
                    incs.push_back(chain);
                } else if (k == len || norm4) {
                    incs.push_back(coord(order[k]));
                }
            }
            return incs;
        };
        for (std::size_t len = 0; len <= 5; ++len) {
            // guard for stopping here (unless all five were added)
            std::vector<LinearSystem> stop = {{}};
            if (len < 5) {
                // every look-ahead candidate fails: increment <= 0 or lands above 0
                for (auto& inc : lookahead(w, len)) {
                    auto p = pairing_row(w);
                    for (std::size_t i = 0; i < 8; ++i) p[i] += inc[i];
                    stop = conj(stop, {{le(inc, 0)}, {ge(p, 1)}});
                }
            }
            std::string label = with2 ? "-e4+e2" : "-e4";
            const char* names[5] = {"e1", "e5", "e6", "e7", "e8"};
            for (std::size_t k = 0; k < len; ++k) label += std::string("+") + names[k];
            LoadedShape s;
            s.j = 4;
            s.label = label;
            s.u = w;
            s.guards = conj(g, stop);
            // r = u + e4 must be a positive root for the proposition to apply
            if (len > 0 || with2) out.push_back(s);
            if (len == 5) break;
            // guard for adding step len
            std::vector<LinearSystem> add_alt;
            for (auto& inc : lookahead(w, len)) {
                auto p = pairing_row(w);
                for (std::size_t i = 0; i < 8; ++i) p[i] += inc[i];
                add_alt.push_back({ge(inc, 1), le(p, 0)});
            }
            g = conj(g, add_alt);
            w[order[len]] += 1;
        }
    }
    return out;
}

// Necessary conditions on a chamber E8-changemaker, as a DNF.
inline std::vector<LinearSystem> lemma_dnf() {
    using fm::ge;
    using fm::le;
    std::array<Int, 9> z{};
    auto v = [&](std::initializer_list<std::pair<int, Int>> t) {
        auto a = z;
        for (auto [i, c] : t) a[i == 0 ? fm::kM : static_cast<std::size_t>(i - 1)] += c;
        return a;
    };
    // index 0 stands for M
    std::vector<std::vector<LinearSystem>> clauses = {
        {{le(v({{2, 1}, {0, -1}}), 0)}, {le(v({{3, 1}, {0, -1}}), 0)}},
        {{le(v({{2, 1}, {0, -1}}), 0)},
         {le(v({{2, 1}, {3, -1}, {4, -1}, {0, -1}}), 0), le(v({{2, 1}, {5, -1}, {6, -2}, {7, -2}, {8, -1}, {0, -1}}), 0)}},
        {{le(v({{3, 1}, {0, -1}}), 0)},
         {le(v({{3, 1}, {2, -1}, {0, -1}}), 0), le(v({{3, 1}, {5, -1}, {6, -1}, {7, -1}, {8, -1}, {0, -1}}), 0)}},
        {{le(v({{4, 1}, {0, -1}}), 0)}, {le(v({{4, 1}, {1, -1}, {2, -1}, {5, -1}, {6, -1}, {7, -1}, {8, -1}, {0, -1}}), 0)}},
        {{le(v({{2, 1}, {0, -1}}), 0)},
         {le(v({{4, 1}, {0, -1}}), 0)},
         {le(v({{2, 1}, {3, -1}, {0, -1}}), 0), le(v({{4, 1}, {1, -1}, {5, -1}, {6, -1}, {7, -1}, {8, -1}, {0, -1}}), 0)}},
    };
    std::vector<LinearSystem> out = {{}};
    for (int i : {1, 5, 6, 7, 8}) out[0].push_back(le(v({{i, 1}, {0, -1}}), 0));
    for (auto& c : clauses) {
        std::vector<LinearSystem> next;
        for (auto& p : out)
            for (auto& q : c) {
                LinearSystem r = p;
                r.insert(r.end(), q.begin(), q.end());
                next.push_back(r);
            }
        out.swap(next);
    }
    return out;
}

struct LoadedCase {
    int clause = 0;
    int j = 0;
    std::string shape;
    e8::Coords z{};
    int level = 0;  // 0: bare, 1: + necessary conditions, 2: + recipe guards
    bool certified = false;
};

struct LoadedReport {
    std::vector<LoadedCase> cases;  // every hypothesis-satisfying (shape, z)
    std::vector<LoadedCase> violations;
    std::size_t shapes = 0, skipped_shapes = 0;
};

// Certifies the three clauses on pairings of norm 2 / norm 4 vectors z with
// loaded recipe shapes u = -e_j + r: every integer point of the negated
// conclusion (plus the chamber, loadedness, constructibility, necessary
// conditions and recipe guards) is refuted by Fourier-Motzkin.
inline LoadedReport check_loaded_pairings(W4Rule rule = W4Rule::literal) {
    using fm::ge;
    using fm::le;
    LoadedReport rep;
    const auto& gram = e8::gram();
    auto ip = [&](const e8::Coords& x, const e8::Coords& y) {
        return bilinear(gram, Vec(x.begin(), x.end()), Vec(y.begin(), y.end()));
    };
    const auto& lat = e8::lattice();
    std::vector<e8::Coords> pos_roots, norm4;
    for (auto& r : e8::positive_roots()) pos_roots.push_back(r.coords);
    for_each_short_vector(lat, 4, [&](const Vec& x, Int nx) {
        if (nx == 4) {
            e8::Coords c{};
            std::copy(x.begin(), x.end(), c.begin());
            norm4.push_back(c);
        }
        return true;
    });
    std::sort(norm4.begin(), norm4.end());
    const auto lemma = lemma_dnf();
    std::array<Int, 9> zero{};
    for (auto& shape : loaded_shapes(rule)) {
        e8::Coords r = shape.u;
        r[static_cast<std::size_t>(shape.j - 1)] += 1;
        bool is_pos_root = std::any_of(pos_roots.begin(), pos_roots.end(), [&](const e8::Coords& c) { return c == r; });
        if (!is_pos_root || ip(shape.u, shape.u) != 4) {
            ++rep.skipped_shapes;
            continue;
        }
        ++rep.shapes;
        const std::size_t jj = static_cast<std::size_t>(shape.j - 1);
        LinearSystem base;
        for (std::size_t i = 0; i < 8; ++i) base.push_back(ge(fm::plus(zero, i, 1), 0));
        base.push_back(ge(fm::plus(zero, fm::kM, 1), 1));
        base.push_back(ge(fm::plus(fm::plus(zero, jj, 1), fm::kM, -1), 1));  // loaded
        auto urow = fm::pairing_row(shape.u);
        base.push_back(le(urow, 0));                      // tail exists: -M <= <u,s> <= 0
        base.push_back(ge(fm::plus(urow, fm::kM, 1), 0));
        for (int clause = 1; clause <= 3; ++clause) {
            const auto& zs = clause == 3 ? norm4 : pos_roots;
            for (auto& z : zs) {
                e8::Coords uz{};
                for (std::size_t i = 0; i < 8; ++i) uz[i] = shape.u[i] + z[i];
                const Int hyp = -ip(uz, z);
                if (hyp != (clause == 1 ? 0 : -1)) continue;
                LoadedCase c{clause, shape.j, shape.label, z, 0, false};
                auto zrow = fm::pairing_row(z);
                auto qrow = fm::pairing_row(uz);
                LinearSystem neg = base;
                // Z = <z,s>, Q = <u+z,s>
                neg.push_back(le(fm::plus(zrow, fm::kM, -1), 0));  // Z <= M
                if (clause >= 2) {
                    neg.push_back(ge(zrow, 1));  // Z != 0 (Z >= 0 for positive z; clause 3 negates Z <= 0)
                    neg.push_back(le(qrow, ip(uz, uz) == 2 && clause == 3 ? -1 : 0));
                }
                auto all_refuted = [&](const std::vector<LinearSystem>& dnf) {
                    for (auto& alt : dnf) {
                        LinearSystem s = neg;
                        s.insert(s.end(), alt.begin(), alt.end());
                        if (!fm::refutes(s)) return false;
                    }
                    return true;
                };
                if (fm::refutes(neg)) {
                    c.certified = true;
                } else if (c.level = 1, all_refuted(lemma)) {
                    c.certified = true;
                } else {
                    c.level = 2;
                    std::vector<LinearSystem> both;
                    for (auto& a : lemma)
                        for (auto& g : shape.guards) {
                            LinearSystem s = a;
                            s.insert(s.end(), g.begin(), g.end());
                            both.push_back(s);
                        }
                    c.certified = all_refuted(both);
                }
                rep.cases.push_back(c);
                if (!c.certified) rep.violations.push_back(c);
            }
        }
    }
    return rep;
}

}  // namespace e8cm

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "e8cm/changemaker.hpp"

namespace e8cm {

enum class Shape { tight, gappy, just_right };

inline const char* shape_name(Shape s) {
    switch (s) {
        case Shape::tight: return "tight";
        case Shape::gappy: return "gappy";
        default: return "just_right";
    }
}

struct BasisVector {
    std::string name;  // v1..vn, w1..w8
    Vec coords;        // ambient: 8 simple-root coordinates, then n+1 tail coordinates
    Shape shape = Shape::just_right;
    bool loaded = false;
    std::vector<int> gappy_indices;
};

struct StandardBasis {
    Tau tau;
    std::vector<BasisVector> v_list;  // changemaker basis
    std::vector<BasisVector> w_list;  // E8 extension set
    std::vector<BasisVector> all() const {
        std::vector<BasisVector> out = v_list;
        out.insert(out.end(), w_list.begin(), w_list.end());
        return out;
    }
};

struct ConstructionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Largest subset A of {0..upto-1} (binary order, i.e. compare sum 2^i) with
// sum sigma_i = target. Greedy from the top is maximal: for a changemaker
// every value up to the prefix sum of {0..i-1} is a subset sum of it.
inline std::optional<std::vector<std::size_t>> maximal_subset(const Vec& sigma, Int target, std::size_t upto) {
    if (target < 0) return std::nullopt;
    std::vector<Int> prefix(upto + 1, 0);
    for (std::size_t i = 0; i < upto; ++i) prefix[i + 1] = prefix[i] + sigma[i];
    if (target > prefix[upto]) return std::nullopt;
    std::vector<std::size_t> a;
    Int rem = target;
    for (std::size_t i = upto; i-- > 0;) {
        if (sigma[i] <= rem && rem - sigma[i] <= prefix[i]) {
            a.push_back(i);
            rem -= sigma[i];
        }
    }
    if (rem != 0) return std::nullopt;
    std::reverse(a.begin(), a.end());
    return a;
}

namespace detail {

// shape from the nonnegative part of a tail projection; `own` is the index
// of d_j for v_j (excluded from the pattern), or -1 for w_j
inline void classify_tail(const Vec& tail, int own, BasisVector& out) {
    const int len = static_cast<int>(tail.size());
    const int top = own >= 0 ? own : len;  // indices considered: [0, top)
    bool tight = top >= 1 && tail[0] == 2;
    for (int i = 1; i < top && tight; ++i) tight = tail[static_cast<std::size_t>(i)] == 1;
    out.gappy_indices.clear();
    if (tight) {
        out.shape = Shape::tight;
        return;
    }
    std::vector<int> a;
    for (int i = 0; i < top; ++i)
        if (tail[static_cast<std::size_t>(i)] == 1) a.push_back(i);
    bool consecutive = true;
    for (std::size_t k = 1; k < a.size(); ++k) consecutive = consecutive && a[k] == a[k - 1] + 1;
    out.shape = consecutive ? Shape::just_right : Shape::gappy;
    if (out.shape == Shape::gappy) {
        auto in = [&](int i) { return std::find(a.begin(), a.end(), i) != a.end(); };
        for (int k : a) {
            if (own >= 0 ? (!in(k + 1) && k + 1 != own) : (k < len - 1 && !in(k + 1))) out.gappy_indices.push_back(k);
        }
    }
}

}  // namespace detail

// Classification of a basis vector from its coordinates (j: 1-based index of
// v_j, or 0 for a w vector).
inline BasisVector classify(const BasisVector& v, std::size_t tail_len, int vj) {
    BasisVector out = v;
    Vec tail(v.coords.end() - static_cast<std::ptrdiff_t>(tail_len), v.coords.end());
    detail::classify_tail(tail, vj > 0 ? vj : -1, out);
    return out;
}

// v_1..v_n as tail vectors (length n+1).
inline std::vector<Vec> changemaker_basis(const Vec& sigma) {
    if (!is_changemaker(sigma)) throw InputError("sigma is not a changemaker");
    if (sigma.size() < 2) throw InputError("changemaker basis needs n >= 1");
    std::vector<Vec> out;
    Int prefix = sigma[0];
    for (std::size_t j = 1; j < sigma.size(); ++j) {
        Vec v(sigma.size(), 0);
        v[j] = -1;
        if (sigma[j] == 1 + prefix) {
            v[0] = 2;
            for (std::size_t i = 1; i < j; ++i) v[i] = 1;
        } else {
            auto a = maximal_subset(sigma, sigma[j], j);
            if (!a) throw std::logic_error("changemaker without a subset sum");
            for (auto i : *a) v[i] = 1;
        }
        out.push_back(v);
        prefix += sigma[j];
    }
    return out;
}

namespace detail {

inline e8::Coords add_root(e8::Coords w, int idx, Int by = 1) {
    w[static_cast<std::size_t>(idx)] += by;
    return w;
}

// Complete an E8 part with the tail making it orthogonal to tau.
inline BasisVector finish_w(const Tau& t, const e8::Coords& e8part, int j, bool loaded) {
    const std::size_t len = t.sigma.size();
    const Int m = t.sigma_l1() + 1;
    const Int pr = e8::pair_with_dual(e8part, t.s.dual);  // <w|E8, tau>
    BasisVector b;
    b.name = "w" + std::to_string(j);
    b.loaded = loaded;
    b.coords.assign(e8part.begin(), e8part.end());
    Vec tail(len, 0);
    if (pr == -m) {
        tail[0] = 2;
        for (std::size_t i = 1; i < len; ++i) tail[i] = 1;
    } else {
        auto a = maximal_subset(t.sigma, -pr, len);
        if (!a) throw ConstructionError("w" + std::to_string(j) + ": E8 part pairs to " + std::to_string(pr) + ", outside [-" + std::to_string(m) + ", 0]");
        for (auto i : *a) tail[i] = 1;
    }
    b.coords.insert(b.coords.end(), tail.begin(), tail.end());
    detail::classify_tail(tail, -1, b);
    return b;
}

}  // namespace detail

// How steps 2-6 of the w4 recipe look ahead. `literal`: add e_t when e_t
// alone, or (at norm 4) some later e_t' alone, moves the pairing up into
// (P, 0]. This leaves some E8-changemakers without a valid w4 (pairing below
// -M, or pushed above 0 by the chain leading to e_t'). `cumulative`: add e_t
// when the chain e_t + ... + e_t' for some later t' lands in (P, 0]; the two
// agree whenever the literal rule succeeds.
enum class W4Rule { literal, cumulative };

inline const char* w4_rule_name(W4Rule r) { return r == W4Rule::literal ? "literal" : "cumulative"; }

// E8 part of the loaded w4, steps evaluated on the running vector.
inline e8::Coords loaded_w4_part(const e8::Coords& s, Int sigma_l1, W4Rule rule = W4Rule::literal) {
    const Int m = sigma_l1 + 1;
    e8::Coords w{};
    w[3] = -1;
    if (0 < s[1] && s[1] <= m) w[1] += 1;  // step 1
    // steps 2..6 add e1, e5, e6, e7, e8 (0-based 0,4,5,6,7)
    const std::size_t order[5] = {0, 4, 5, 6, 7};
    for (std::size_t step = 0; step < 5; ++step) {
        const Int cur = e8::pair_with_dual(w, s);
        bool go = false;
        if (rule == W4Rule::literal) {
            auto improves = [&](std::size_t idx) { return cur < cur + s[idx] && cur + s[idx] <= 0; };
            Vec wv(w.begin(), w.end());
            go = improves(order[step]);
            if (!go && bilinear(e8::gram(), wv, wv) == 4)
                for (std::size_t k = step + 1; k < 5 && !go; ++k) go = improves(order[k]);
        } else {
            Int acc = cur;
            for (std::size_t k = step; k < 5 && !go; ++k) {
                acc += s[order[k]];
                go = cur < acc && acc <= 0;
            }
        }
        if (!go) break;
        w[order[step]] += 1;
    }
    return w;
}

inline std::vector<BasisVector> extension_set(const Tau& t, W4Rule rule = W4Rule::literal) {
    if (t.sigma.size() < 3) throw InputError("extension set recipes need n >= 2");
    if (t.sigma[0] != 1) throw InputError("extension set recipes need sigma_0 = 1");
    const auto& s = t.s.dual;
    const Int l1 = t.sigma_l1();
    const Int m = l1 + 1;
    std::vector<BasisVector> out;
    for (int j = 1; j <= 8; ++j) {
        const Int sj = s[static_cast<std::size_t>(j - 1)];
        e8::Coords part{};
        part[static_cast<std::size_t>(j - 1)] = -1;
        if (sj <= m) {
            out.push_back(detail::finish_w(t, part, j, false));
            continue;
        }
        if (j != 2 && j != 3 && j != 4) throw ConstructionError("loaded coordinate outside {2,3,4}: contradicts the necessary conditions");
        if (j == 3) {
            part[1] += 1;
        } else if (j == 2) {
            if (s[2] == 0) {
                part[3] += 1;
            } else if (s[3] == 0 || s[1] - s[2] - s[3] < 0) {
                part[2] += 1;
            } else {
                part[2] += 1;
                part[3] += 1;
            }
        } else {
            part = loaded_w4_part(s, l1, rule);
        }
        out.push_back(detail::finish_w(t, part, j, true));
    }
    return out;
}

inline StandardBasis standard_basis(const Tau& t, W4Rule rule = W4Rule::literal) {
    StandardBasis sb;
    sb.tau = t;
    auto v = changemaker_basis(t.sigma);
    for (std::size_t j = 0; j < v.size(); ++j) {
        BasisVector b;
        b.name = "v" + std::to_string(j + 1);
        b.coords = Vec(8, 0);
        b.coords.insert(b.coords.end(), v[j].begin(), v[j].end());
        detail::classify_tail(v[j], static_cast<int>(j + 1), b);
        sb.v_list.push_back(b);
    }
    sb.w_list = extension_set(t, rule);
    return sb;
}

// Basis of the complement for any n: the recipe basis when it applies,
// otherwise an integer kernel basis (no classification).
inline std::vector<Vec> complement_basis(const Tau& t, W4Rule rule = W4Rule::cumulative) {
    if (t.sigma.size() >= 3 && t.sigma[0] == 1) {
        std::vector<Vec> out;
        for (auto& b : standard_basis(t, rule).all()) out.push_back(b.coords);
        return out;
    }
    return orthogonal_complement(ambient_lattice(t.sigma.size()), t.ambient()).basis;
}

struct BasisReport {
    bool pass = true;
    std::vector<std::string> failures;
    int tight_v = 0, tight_w = 0, loaded = 0, gappy = 0;
    // These two only follow when the complement is a sum of linear lattices,
    // so they are reported, not folded into `pass`.
    bool at_most_one_tight_v = true;
    bool no_tight_pair = true;
};

namespace detail {

inline Matrix gram_of(const GramLattice& amb, const std::vector<Vec>& vs) {
    Matrix g(vs.size(), vs.size());
    for (std::size_t i = 0; i < vs.size(); ++i) {
        Vec gi = amb.gram() * vs[i];
        for (std::size_t j = 0; j < vs.size(); ++j) g(i, j) = dot(vs[j], gi);
    }
    return g;
}

}  // namespace detail

// Irreducibility, unbreakability and the bookkeeping claims for one tau.
// Irreducibility is decided with lattice_core on the complement lattice whose
// working basis is the standard basis itself.
inline BasisReport verify_standard_basis(const Tau& t, W4Rule rule = W4Rule::literal) {
    BasisReport rep;
    auto fail = [&](std::string why) {
        rep.pass = false;
        rep.failures.push_back(std::move(why));
    };
    StandardBasis sb;
    try {
        sb = standard_basis(t, rule);
    } catch (const ConstructionError& e) {
        fail(e.what());
        return rep;
    }
    const GramLattice amb = ambient_lattice(t.sigma.size());
    const Vec tv = t.ambient();
    auto all = sb.all();
    std::vector<Vec> coords;
    for (auto& b : all) {
        coords.push_back(b.coords);
        if (amb.pairing(b.coords, tv) != 0) fail(b.name + " does not pair to zero with tau");
    }
    if (!rep.pass) return rep;
    Matrix g = detail::gram_of(amb, coords);
    Int det = determinant(g);
    if (det != t.norm) {
        fail("Gram determinant " + std::to_string(det) + " != |tau| = " + std::to_string(t.norm));
        return rep;
    }
    GramLattice comp(g);
    Int bound = 0;
    for (std::size_t i = 0; i < all.size(); ++i) bound = std::max(bound, (g(i, i) + 2) / 2);
    const ShortVectorTable shorts(comp, bound);
    for (std::size_t i = 0; i < all.size(); ++i) {
        auto& b = all[i];
        Vec e(all.size(), 0);
        e[i] = 1;
        int vj = i < sb.v_list.size() ? static_cast<int>(i + 1) : 0;
        BasisVector re = classify(b, t.sigma.size(), vj);
        if (re.shape != b.shape || re.gappy_indices != b.gappy_indices) fail(b.name + " classification disagrees with its coordinates");
        if (!shorts.is_irreducible(e)) fail(b.name + " is reducible");
        if (b.shape != Shape::tight && shorts.is_breakable(e)) fail(b.name + " is not tight but breakable");
        if (b.shape == Shape::tight) (vj ? rep.tight_v : rep.tight_w)++;
        if (b.shape == Shape::gappy) ++rep.gappy;
        if (b.loaded) ++rep.loaded;
    }
    rep.at_most_one_tight_v = rep.tight_v <= 1;
    rep.no_tight_pair = !(rep.tight_v > 0 && rep.tight_w > 0);
    const Int m = t.sigma_l1() + 1;
    for (int j = 1; j <= 8; ++j) {
        bool should = t.s.dual[static_cast<std::size_t>(j - 1)] > m;
        if (sb.w_list[static_cast<std::size_t>(j - 1)].loaded != should) fail("w" + std::to_string(j) + " loaded flag wrong");
    }
    if (sb.w_list[1].loaded && sb.w_list[2].loaded) fail("both w2 and w3 loaded");
    return rep;
}

}  // namespace e8cm

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "e8cm/changemaker.hpp"
#include "e8cm/linear.hpp"

namespace e8cm {

// Correction term of the Poincare homology sphere, positive convention.
inline constexpr Int kPoincareD = 2;

struct KnotInvariants {
    Int p = 0;
    Int genus = 0;
    std::vector<Int> torsion;    // t_0 .. t_g
    std::vector<Int> alexander;  // a_0 .. a_g, Delta = a_0 + sum a_i (T^i + T^-i)
};

inline Int genus_from_tau(const Tau& t) {
    const Int diff = t.norm - t.sigma_l1();
    if (diff < 0 || diff % 2 != 0) throw InputError("p - |sigma|_1 is not a nonnegative even number");
    return diff / 2;
}

namespace detail {

// y with <y, tau> = g, g the gcd of all pairings of basis vectors with tau.
inline std::pair<Vec, Int> unit_pairing_vector(const GramLattice& amb, const Vec& tau) {
    Vec col = amb.gram() * tau;
    Vec y(col.size(), 0);
    Int g = 0;
    for (std::size_t i = 0; i < col.size(); ++i) {
        if (col[i] == 0) continue;
        if (g == 0) {
            g = col[i] < 0 ? -col[i] : col[i];
            y[i] = col[i] < 0 ? -1 : 1;
            continue;
        }
        Int x, z;
        Int ng = ext_gcd(g, col[i], x, z);
        if (ng == g) continue;
        for (auto& v : y) v = mul(v, x);
        y[i] = add(y[i], z);
        g = ng;
    }
    return {y, g};
}

// t_i = (|c|^2 - rank + 4d)/8 from the minimal characteristic norm.
inline Int torsion_from_char_norm(Int norm, std::size_t rank) {
    const Int num = norm - static_cast<Int>(rank) + 4 * kPoincareD;
    if (num < 0 || num % 8 != 0) throw std::logic_error("characteristic norm incompatible with the ambient lattice");
    return num / 8;
}

}  // namespace detail

// Minimal norm of a characteristic vector c with <c, tau> = m, via closest
// vector search in the coset c_m + 2 (tau)^perp. Nothing if no such c exists.
class CharacteristicMinimizer {
public:
    explicit CharacteristicMinimizer(const Tau& t) : amb_(ambient_lattice(t.sigma.size())), tau_(t.ambient()) {
        const std::size_t rank = amb_.rank();
        c0_.assign(rank, 0);
        for (std::size_t i = 8; i < rank; ++i) c0_[i] = 1;  // 2E8 holds the E8 characteristics
        base_ = amb_.pairing(c0_, tau_);
        auto [y, g] = detail::unit_pairing_vector(amb_, tau_);
        y_ = std::move(y);
        g_ = g;
        Complement k = orthogonal_complement(amb_, tau_);
        doubled_ = Matrix(rank, k.basis.size());
        for (std::size_t j = 0; j < k.basis.size(); ++j)
            for (std::size_t i = 0; i < rank; ++i) doubled_(i, j) = 2 * k.basis[j][i];
    }

    std::optional<Int> min_norm(Int m) const {
        const Int shift = m - base_;
        if (shift % (2 * g_) != 0) return std::nullopt;
        const Int steps = shift / (2 * g_);
        Vec offset = c0_;
        for (std::size_t i = 0; i < offset.size(); ++i) offset[i] = add(offset[i], mul(2 * steps, y_[i]));
        const Int p = amb_.norm(tau_);
        // Cauchy-Schwarz floor, then widen until the coset shows up
        Int bound = std::max<Int>(static_cast<Int>(tau_.size()) - 8, (m * m + p - 1) / p);
        for (int round = 0; round < 60; ++round) {
            if (auto hit = closest_in_coset(amb_, doubled_, offset, bound)) return hit->second;
            bound = bound * 2 + 8;
        }
        throw std::runtime_error("characteristic norm ladder exhausted");
    }

    std::size_t rank() const { return amb_.rank(); }

private:
    GramLattice amb_;
    Vec tau_;
    Vec c0_, y_;
    Int g_ = 1, base_ = 0;
    Matrix doubled_;
};

// t_0 .. t_g by closest vector search per congruence class. Only values of
// <c, tau> with m^2 / p below the best norm so far can improve it.
inline std::vector<Int> torsion_coefficients(const Tau& t) {
    const Int g = genus_from_tau(t);
    const Int p = t.norm;
    CharacteristicMinimizer cm(t);
    std::vector<Int> out;
    for (Int i = 0; i <= g; ++i) {
        const Int r = mod(2 * i - p, 2 * p);  // <c, tau> = r - 2p k
        std::optional<Int> best;
        for (Int m0 : {r, r - 2 * p}) {
            for (Int m = m0;; m += (m0 == r ? 2 * p : -2 * p)) {
                if (best && mul(m, m) > mul(*best, p)) break;
                if (auto nm = cm.min_norm(m); nm && (!best || *nm < *best)) best = nm;
                if (!best && (m > 4 * p * p || m < -4 * p * p)) throw std::runtime_error("no characteristic vector in class");
            }
        }
        out.push_back(detail::torsion_from_char_norm(*best, cm.rank()));
    }
    return out;
}

// Oracle: enumerate characteristic vectors of growing norm until every
// class i = 0..g is witnessed, then take minima. Independent of the coset
// search above; intended for small p.
inline std::vector<Int> torsion_by_characteristic_ladder(const Tau& t, Int norm_cap = 4000) {
    const Int g = genus_from_tau(t);
    const Int p = t.norm;
    GramLattice amb = ambient_lattice(t.sigma.size());
    const Vec tau = t.ambient();
    const auto c0 = detail::characteristic_representative(amb.gram());
    if (!c0) throw std::logic_error("ambient lattice has no characteristic vector");
    const Matrix even = detail::even_pairing_sublattice(amb.gram());
    for (Int bound = static_cast<Int>(amb.rank()); bound <= norm_cap; bound = bound * 2) {
        std::map<Int, Int> best;  // i -> min norm
        for_each_in_coset(amb, even, *c0, bound, [&](const Vec& c, Int nc) {
            const Int cls = mod(amb.pairing(c, tau) + p, 2 * p);
            if (cls % 2 != 0) throw std::logic_error("characteristic pairing has wrong parity");
            const Int i = cls / 2;
            // classes i and p - i coincide up to c -> -c; keep 0 <= i <= g
            for (Int ii : {i, mod(-i, p)}) {
                if (ii > g) continue;
                auto it = best.find(ii);
                if (it == best.end() || nc < it->second) best[ii] = nc;
            }
            return true;
        });
        if (static_cast<Int>(best.size()) < g + 1) continue;
        // a class minimum is settled once the bound exceeds it
        bool settled = true;
        for (auto& [i, nc] : best) settled = settled && nc <= bound;
        if (!settled) continue;
        std::vector<Int> out;
        for (auto& [i, nc] : best) out.push_back(detail::torsion_from_char_norm(nc, amb.rank()));
        return out;
    }
    throw std::runtime_error("characteristic ladder cap exceeded");
}

struct RealizabilityError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

inline std::vector<Int> torsion_from_alexander(const std::vector<Int>& a) {
    if (a.empty()) throw InputError("empty Alexander polynomial");
    std::vector<Int> t(a.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 1; i + j < a.size(); ++j) t[i] = add(t[i], mul(static_cast<Int>(j), a[i + j]));
    return t;
}

inline std::vector<Int> alexander_from_torsion(const std::vector<Int>& t) {
    if (t.empty()) throw InputError("empty torsion sequence");
    if (t.back() != 0) throw RealizabilityError("torsion sequence must end in 0");
    for (std::size_t i = 0; i + 1 < t.size(); ++i)
        if (t[i] < t[i + 1] || t[i + 1] < 0) throw RealizabilityError("torsion sequence must be non-increasing and nonnegative");
    const std::size_t g = t.size() - 1;
    auto at = [&](std::size_t i) { return i <= g ? t[i] : Int{0}; };
    std::vector<Int> a(g + 1, 0);
    Int sum = 0;
    for (std::size_t i = 1; i <= g; ++i) {
        a[i] = at(i - 1) - 2 * at(i) + at(i + 1);
        sum += a[i];
    }
    a[0] = 1 - 2 * sum;
    if (torsion_from_alexander(a) != t) throw RealizabilityError("torsion sequence does not round-trip");
    return a;
}

// Delta - (T^{(p-1)/2} + T^{-(p-1)/2}) + (T^{(p+1)/2} + T^{-(p+1)/2})
inline std::vector<Int> delta_cable_shift(std::vector<Int> a, Int p) {
    if (p < 1 || p % 2 == 0) throw InputError("cable shift needs odd p");
    const auto lo = static_cast<std::size_t>((p - 1) / 2), hi = lo + 1;
    if (a.size() <= hi) a.resize(hi + 1, 0);
    // a_0 stands for the single T^0 term, so a pair at degree 0 counts twice
    a[lo] -= lo == 0 ? 2 : 1;
    a[hi] += 1;
    while (a.size() > 1 && a.back() == 0) a.pop_back();
    return a;
}

inline Int alexander_at_one(const std::vector<Int>& a) {
    Int s = a.empty() ? 0 : a[0];
    for (std::size_t i = 1; i < a.size(); ++i) s += 2 * a[i];
    return s;
}

inline KnotInvariants knot_invariants(const Tau& t) {
    KnotInvariants k;
    k.p = t.norm;
    k.genus = genus_from_tau(t);
    k.torsion = torsion_coefficients(t);
    k.alexander = alexander_from_torsion(k.torsion);
    return k;
}

inline bool distance_surgery_exists(Int p, Int a, Int n) {
    if (p < 1 || n < 1) throw InputError("need p >= 1 and n >= 1");
    const Int r = mod(mul(n, a), p);
    return r == mod(1, p) || r == mod(-1, p);
}

inline std::vector<Int> solve_quadratic_congruence(Int p, Int r) {
    if (p < 2) throw InputError("modulus must be at least 2");
    std::vector<Int> out;
    const Int plus = mod(r, p), minus = mod(-r, p);
    for (Int x = 0; x < p; ++x) {
        const Int sq = mod(mul(x, x), p);
        if (sq == plus || sq == minus) out.push_back(x);
    }
    return out;
}

// Genus of kappa from 2g(K) - 1 = 2p + 2(2g(kappa) - 1) - p.
inline Int cable_genus_relation(Int p, Int g_knot) {
    const Int num = 2 * g_knot - 1 - p + 2;  // = 4 g(kappa)
    if (num % 4 != 0) throw InputError("cable genus relation has no integral solution");
    return num / 4;
}

// ---------------------------------------------------------------------------
// Tange families

enum class TailPattern { ones, ones_then_j, one_then_twos, one_one_then_twos };

struct TangeFamily {
    std::string name;
    int group = 1;  // 1: verified from j = 1; 2-4: verified from j = 2
    Int pa, pb, pc;  // p = pa j^2 + pb j + pc
    Int ka, kb;      // k = ka j + kb
    std::array<Int, 8> s_base, s_slope;  // s* = base + j slope
    TailPattern tail;
    int j_min = 1;
    int tail_shift = 0;  // tail has the length of j + tail_shift
};

struct TangeFamilyRow {
    std::string family;
    int j = 1;
    Int p = 0, k = 0, q = 0;
    e8::Coords s_star{};
    Vec sigma;
};

inline const std::vector<TangeFamily>& tange_families() {
    using A = std::array<Int, 8>;
    constexpr auto T1 = TailPattern::ones;
    constexpr auto T2 = TailPattern::ones_then_j;
    constexpr auto T3 = TailPattern::one_then_twos;
    constexpr auto T4 = TailPattern::one_one_then_twos;
    static const std::vector<TangeFamily> rows = {
        {"A1-", 1, 14, -7, 1, -7, 2, A{0, 1, -1, 0, 0, 0, 0, 0}, A{0, 0, 1, 0, 0, 0, 0, 0}, T1, 1},
        {"A1+", 1, 14, 7, 1, 7, 2, A{0, 1, -1, 1, 0, 0, 0, 0}, A{0, 0, 1, 0, 0, 0, 0, 0}, T1, 1},
        {"A2-", 1, 20, -15, 3, -5, 2, A{0, 1, 0, 0, -1, 0, 0, 0}, A{0, 0, 0, 0, 1, 0, 0, 0}, T1, 1},
        {"A2+", 1, 20, 15, 3, 5, 2, A{0, 1, 0, 0, -1, 1, 0, 0}, A{0, 0, 0, 0, 1, 0, 0, 0}, T1, 1},
        {"B-", 1, 30, -9, 1, -6, 1, A{-1, 1, 0, 1, 0, 0, 0, 0}, A{1, 0, 0, 0, 0, 0, 0, 0}, T1, 1},
        {"B+", 1, 30, 9, 1, 6, 1, A{-1, 0, 0, 1, 1, 0, 0, 0}, A{1, 0, 0, 0, 0, 0, 0, 0}, T1, 1},
        {"C1-", 1, 42, -23, 3, -7, 2, A{0, 0, -1, 1, 0, 0, 0, 0}, A{0, 1, 1, 0, 0, 0, 0, 0}, T1, 1},
        {"C1+", 1, 42, 23, 3, 7, 2, A{1, 0, -1, 0, 0, 0, 0, 0}, A{0, 1, 1, 0, 0, 0, 0, 0}, T1, 1},
        {"C2-", 1, 42, -47, 13, -7, 4, A{0, 0, -1, 0, 0, 0, 0, 0}, A{0, 1, 1, 0, 0, 0, 0, 0}, T1, 1},
        {"C2+", 1, 42, 47, 13, 7, 4, A{1, 0, -1, 1, 0, 0, 0, 0}, A{0, 1, 1, 0, 0, 0, 0, 0}, T1, 1},
        {"D1-", 1, 52, -15, 1, -13, 2, A{0, 0, 0, 0, -1, 1, 0, 0}, A{0, 1, 0, 0, 1, 0, 0, 0}, T1, 1},
        {"D1+", 1, 52, 15, 1, 13, 2, A{1, 0, 0, 0, -1, 0, 0, 0}, A{0, 1, 0, 0, 1, 0, 0, 0}, T1, 1},
        {"D2-", 1, 52, -63, 19, -13, 8, A{0, 0, 0, 0, -1, 0, 0, 0}, A{0, 1, 0, 0, 1, 0, 0, 0}, T1, 1},
        {"D2+", 1, 52, 63, 19, 13, 8, A{1, 0, 0, 0, -1, 1, 0, 0}, A{0, 1, 0, 0, 1, 0, 0, 0}, T1, 1},
        {"E1-", 1, 54, -15, 1, -27, 4, A{-1, 0, 0, 0, 1, 0, 0, 0}, A{1, 0, 0, 1, 0, 0, 0, 0}, T1, 1},
        {"E1+", 1, 54, 15, 1, 27, 4, A{-1, 1, 1, 0, 0, 0, 0, 0}, A{1, 0, 0, 1, 0, 0, 0, 0}, T1, 1},
        {"E2-", 1, 54, -39, 7, -27, 10, A{-1, 1, 0, 0, 0, 0, 0, 0}, A{1, 0, 0, 1, 0, 0, 0, 0}, T1, 1},
        {"E2+", 1, 54, 39, 7, 27, 10, A{-1, 0, 1, 0, 1, 0, 0, 0}, A{1, 0, 0, 1, 0, 0, 0, 0}, T1, 1},
        {"F1-", 2, 69, -17, 1, -23, 3, A{-1, 0, 0, 0, 1, 0, 0, 0}, A{1, 1, 0, 0, 0, 0, 0, 0}, T2, 1},
        {"F1+", 2, 69, 17, 1, 23, 3, A{-1, 1, 1, 0, 0, 0, 0, 0}, A{1, 1, 0, 0, 0, 0, 0, 0}, T2, 1},
        {"F2-", 2, 69, -29, 3, -23, 5, A{-1, 0, 1, 0, 0, 0, 0, 0}, A{1, 1, 0, 0, 0, 0, 0, 0}, T2, 1},
        {"F2+", 2, 69, 29, 3, 23, 5, A{-1, 1, 0, 0, 1, 0, 0, 0}, A{1, 1, 0, 0, 0, 0, 0, 0}, T2, 1},
        {"G1-", 2, 85, -19, 1, -17, 2, A{-1, 0, 0, 0, 1, 0, 0, 0}, A{1, 0, 1, 0, 0, 0, 0, 0}, T2, 1},
        {"G1+", 2, 85, 19, 1, 17, 2, A{-1, 1, 1, 0, 0, 0, 0, 0}, A{1, 0, 1, 0, 0, 0, 0, 0}, T2, 1},
        {"G2-", 2, 85, -49, 7, -17, 5, A{-1, 1, 0, 0, 0, 0, 0, 0}, A{1, 0, 1, 0, 0, 0, 0, 0}, T2, 1},
        {"G2+", 2, 85, 49, 7, 17, 5, A{-1, 0, 1, 0, 1, 0, 0, 0}, A{1, 0, 1, 0, 0, 0, 0, 0}, T2, 1},
        {"H1-", 2, 99, -35, 3, -11, 2, A{-1, 0, 1, 0, 0, 0, 0, 0}, A{1, 0, 0, 0, 1, 0, 0, 0}, T2, 1},
        {"H1+", 2, 99, 35, 3, 11, 2, A{-1, 1, 0, 0, 1, 0, 0, 0}, A{1, 0, 0, 0, 1, 0, 0, 0}, T2, 1},
        {"H2-", 2, 99, -53, 7, -11, 3, A{-1, 1, 0, 0, 0, 0, 0, 0}, A{1, 0, 0, 0, 1, 0, 0, 0}, T2, 1},
        {"H2+", 2, 99, 53, 7, 11, 3, A{-1, 0, 1, 0, 1, 0, 0, 0}, A{1, 0, 0, 0, 1, 0, 0, 0}, T2, 1},
        {"I1-", 3, 120, -16, 1, -12, 1, A{-2, 1, 2, 0, 0, 0, 0, 0}, A{2, 0, 0, 0, 0, 0, 0, 0}, T3, 1},
        {"I1+", 3, 120, 16, 1, 12, 1, A{-2, 1, 0, 0, 2, 0, 0, 0}, A{2, 0, 0, 0, 0, 0, 0, 0}, T3, 1},
        {"I2-", 3, 120, -20, 1, -20, 2, A{-2, 2, 0, 0, 1, 0, 0, 0}, A{2, 0, 0, 0, 0, 0, 0, 0}, T3, 1},
        {"I2+", 3, 120, 20, 1, 20, 2, A{-2, 0, 2, 0, 1, 0, 0, 0}, A{2, 0, 0, 0, 0, 0, 0, 0}, T3, 1},
        {"I3-", 3, 120, -36, 3, -12, 2, A{-2, 2, 1, 0, 0, 0, 0, 0}, A{2, 0, 0, 0, 0, 0, 0, 0}, T3, 1},
        {"I3+", 3, 120, 36, 3, 12, 2, A{-2, 0, 1, 0, 2, 0, 0, 0}, A{2, 0, 0, 0, 0, 0, 0, 0}, T3, 1},
        // the printed s* of the two J rows do not give pairing(tau, tau) = p;
        // these are the embeddings the census finds for the printed p and k
        {"J-", 4, 120, -104, 22, -12, 5, A{-3, 1, 0, 0, 2, 0, 0, 0}, A{2, 0, 0, 0, 0, 0, 0, 0}, T4, 2, 0},
        {"J+", 4, 120, 104, 22, 12, 5, A{-1, 1, 2, 0, 0, 0, 0, 0}, A{2, 0, 0, 0, 0, 0, 0, 0}, T4, 1, 1},
    };
    return rows;
}

inline const TangeFamily& tange_family_spec(const std::string& name) {
    for (auto& f : tange_families())
        if (f.name == name) return f;
    throw InputError("unknown family: " + name);
}

inline Vec tail_pattern(TailPattern t, int j) {
    Vec s;
    switch (t) {
        case TailPattern::ones: s.assign(static_cast<std::size_t>(j - 1), 1); break;
        case TailPattern::ones_then_j:
            s.assign(static_cast<std::size_t>(j - 1), 1);
            s.push_back(j);
            break;
        case TailPattern::one_then_twos:
            s.assign(static_cast<std::size_t>(j), 2);
            s[0] = 1;
            break;
        case TailPattern::one_one_then_twos:
            s.assign(static_cast<std::size_t>(j), 2);
            s[0] = s[1] = 1;
            break;
    }
    return s;
}

inline TangeFamilyRow tange_family(const std::string& name, int j) {
    const TangeFamily& f = tange_family_spec(name);
    if (j < f.j_min) throw InputError(name + " needs j >= " + std::to_string(f.j_min));
    TangeFamilyRow r;
    r.family = name;
    r.j = j;
    r.p = f.pa * j * j + f.pb * j + f.pc;
    r.k = f.ka * j + f.kb;
    r.q = mod(-mul(r.k, r.k), r.p);
    for (std::size_t i = 0; i < 8; ++i) r.s_star[i] = f.s_base[i] + j * f.s_slope[i];
    r.sigma = tail_pattern(f.tail, j + f.tail_shift);
    return r;
}

struct FamilyCheck {
    bool pass = false;
    std::string stage;   // first failing stage, empty on success
    std::string detail;
    Int tau_norm = 0;
    std::optional<LinearShape> recognized;
};

inline FamilyCheck verify_embedding(const e8::Coords& s_star, const Vec& sigma, Int p, Int q) {
    FamilyCheck out;
    Tau t = Tau::from_dual(s_star, sigma);
    out.tau_norm = t.norm;
    if (t.norm != p) {
        out.stage = "norm";
        out.detail = "pairing(tau,tau) = " + std::to_string(t.norm) + ", expected " + std::to_string(p);
        return out;
    }
    if (!is_e8_changemaker(t)) {
        out.stage = "changemaker";
        out.detail = "tau is not an E8-changemaker";
        return out;
    }
    Complement c = orthogonal_complement(ambient_lattice(t.sigma.size()), t.ambient());
    out.recognized = recognize_linear(c.lattice);
    if (!out.recognized) {
        out.stage = "recognize";
        out.detail = "complement is not a sum of linear lattices";
        return out;
    }
    if (out.recognized->size() != 1 || !lens_equivalent((*out.recognized)[0].first, (*out.recognized)[0].second, p, q)) {
        out.stage = "lens";
        out.detail = "complement is not Lambda(" + std::to_string(p) + "," + std::to_string(q) + ")";
        return out;
    }
    out.pass = true;
    return out;
}

inline FamilyCheck verify_family_row(const TangeFamilyRow& r) {
    if (mod(r.q + mul(r.k, r.k), r.p) != 0 || r.q <= 0 || r.q >= r.p) {
        FamilyCheck out;
        out.stage = "q";
        out.detail = "q is not -k^2 mod p";
        return out;
    }
    return verify_embedding(r.s_star, r.sigma, r.p, r.q);
}

// The lone sporadic case outside the families.
inline TangeFamilyRow sporadic_191_157() {
    TangeFamilyRow r;
    r.family = "sporadic";
    r.j = 0;
    r.p = 191;
    r.q = 157;
    r.s_star = {1, 1, 1, 1, 0, 0, 0, 0};
    r.sigma = {1};
    return r;
}

}  // namespace e8cm

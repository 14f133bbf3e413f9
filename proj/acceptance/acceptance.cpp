// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
// Criteria 1-9 replay the claims registry, criterion 10 runs the property
// suites with their own brute-force oracles.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "e8cm/claims.hpp"
#include "e8cm/standard_basis.hpp"

using namespace e8cm;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
    bool pass = true;
    std::string detail;
};

Outcome from_claims(const std::vector<std::string>& ids, unsigned jobs) {
    Outcome o;
    std::ostringstream d;
    for (auto& id : ids) {
        auto r = run_claim(*find_claim(id), jobs);
        o.pass = o.pass && r.pass;
        d << id << "=" << r.actual.dump();
        if (!r.pass) d << " expected " << r.expected.dump() << (r.error.empty() ? "" : " error: " + r.error);
        if (!r.notes.empty()) d << " notes " << r.notes.dump();
        d << "; ";
    }
    o.detail = d.str();
    return o;
}

// --- property suites -------------------------------------------------------

struct Suite {
    std::string name;
    std::function<Outcome()> run;
};

Outcome changemaker_brute_force() {
    std::size_t checked = 0, bad = 0;
    for (std::size_t len = 0; len <= 8; ++len) {
        Vec cur;
        std::function<void(Int)> rec = [&](Int lo) {
            if (cur.size() == len) {
                // signed subset sums must fill the parity interval [-|s|, |s|]
                std::set<Int> sums;
                for (std::size_t mask = 0; mask < (std::size_t{1} << len); ++mask) {
                    Int s = 0;
                    for (std::size_t i = 0; i < len; ++i) s += (mask >> i & 1) ? -cur[i] : cur[i];
                    sums.insert(s);
                }
                Int l1 = 0;
                for (Int x : cur) l1 += x;
                const bool fills = static_cast<Int>(sums.size()) == l1 + 1;
                bad += is_changemaker(cur) != fills;
                ++checked;
                return;
            }
            for (Int x = lo; x <= 6; ++x) {
                cur.push_back(x);
                rec(x);
                cur.pop_back();
            }
        };
        rec(0);
    }
    return {bad == 0 && checked == 6435, std::to_string(checked) + " tails, " + std::to_string(bad) + " disagreements"};
}

Outcome discriminant_is_norm() {
    std::vector<Tau> pool;
    for (int n = -1; n <= 2; ++n) {
        EnumerationOptions o;
        o.norm_cap = 400;
        auto part = enumerate_e8_changemakers(n, o);
        pool.insert(pool.end(), part.begin(), part.end());
    }
    std::mt19937_64 rng(8);
    std::shuffle(pool.begin(), pool.end(), rng);
    std::size_t checked = 0, bad = 0;
    for (std::size_t i = 0; i < std::min<std::size_t>(pool.size(), 300); ++i) {
        auto& t = pool[i];
        auto c = orthogonal_complement(ambient_lattice(t.sigma.size()), t.ambient());
        bad += discriminant(c.lattice) != t.norm;
        ++checked;
    }
    return {bad == 0 && checked >= 100, std::to_string(checked) + " random taus, " + std::to_string(bad) + " mismatches"};
}

Outcome isometry_vs_lens() {
    std::size_t pairs = 0, bad = 0;
    for (Int p = 2; p <= 30; ++p)
        for (Int q = 1; q < p; ++q) {
            if (gcd(p, q) != 1) continue;
            GramLattice a(lambda_gram(p, q).gram);
            for (Int q2 = q; q2 < p; ++q2) {
                if (gcd(p, q2) != 1) continue;
                GramLattice b(lambda_gram(p, q2).gram);
                bad += isometric(a, b).has_value() != lens_equivalent(p, q, p, q2);
                ++pairs;
            }
        }
    return {bad == 0, std::to_string(pairs) + " pairs, " + std::to_string(bad) + " disagreements"};
}

Outcome irreducibles_are_intervals() {
    std::size_t lattices = 0, bad = 0;
    for (Int p = 2; p <= 30; ++p)
        for (Int q = 1; q < p; ++q) {
            if (gcd(p, q) != 1) continue;
            auto l = lambda_gram(p, q);
            const int len = static_cast<int>(l.norms.size());
            std::set<Vec> want;
            Int bound = 0;
            for (Int a : l.norms) bound += a;
            bound -= 2 * (len - 1);
            for (int lo = 1; lo <= len; ++lo)
                for (int hi = lo; hi <= len; ++hi) {
                    Vec x(static_cast<std::size_t>(len), 0);
                    for (int i = lo; i <= hi; ++i) x[static_cast<std::size_t>(i - 1)] = 1;
                    want.insert(x);
                    for (auto& v : x) v = -v;
                    want.insert(x);
                }
            auto got = irreducible_vectors(GramLattice(l.gram), bound + 2);
            bad += std::set<Vec>(got.begin(), got.end()) != want;
            ++lattices;
        }
    return {bad == 0, std::to_string(lattices) + " lattices, " + std::to_string(bad) + " mismatches"};
}

constexpr Int kBasisCap = 1000;

// Pass/fail uses the cumulative w4 rule; the literal recipe leaves gaps
// (pairing outside [-M, 0]), which are counted and printed.
Outcome standard_basis_n2() {
    std::size_t checked = 0, failed = 0, literal_gaps = 0;
    std::string first;
    // tails starting with 0 are the n = 1 cases padded with a zero
    for (auto& sigma : changemaker_tails(3)) {
        if (sigma[0] != 1) continue;
        for_each_e8_changemaker(sigma, kBasisCap, [&](const e8::Coords& sd) {
            auto t = Tau::from_dual(sd, sigma);
            auto rep = verify_standard_basis(t, W4Rule::cumulative);
            ++checked;
            if (!rep.pass) {
                if (first.empty()) first = to_string(t.ambient()) + ": " + rep.failures[0];
                ++failed;
            }
            literal_gaps += !verify_standard_basis(t, W4Rule::literal).pass;
            return true;
        });
    }
    std::string d = std::to_string(checked) + " taus with |tau| <= " + std::to_string(kBasisCap) + ", " + std::to_string(failed) +
                    " failures (literal w4 recipe: " + std::to_string(literal_gaps) + " gaps)";
    if (!first.empty()) d += " (first: " + first + ")";
    return {failed == 0 && checked > 0, d};
}

Outcome alexander_round_trip() {
    std::mt19937_64 rng(20261019);
    std::size_t bad = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t g = rng() % 40;
        std::vector<Int> t(g + 1, 0);
        for (std::size_t i = g; i-- > 0;) t[i] = t[i + 1] + static_cast<Int>(rng() % 3) + (i + 1 == g ? 1 : 0);
        auto a = alexander_from_torsion(t);
        bool ok = torsion_from_alexander(a) == t && alexander_at_one(a) == 1;
        for (std::size_t i = 1; i <= g; ++i) ok = ok && a[i] == t[i - 1] - 2 * t[i] + (i + 1 <= g ? t[i + 1] : 0);
        bad += !ok;
    }
    return {bad == 0, "1000 sequences, " + std::to_string(bad) + " failures"};
}

constexpr Int kTorsionCap[4] = {150, 150, 120, 90};  // n = -1, 0, 1, 2

Outcome torsion_zero_iff_genus() {
    std::size_t checked = 0, bad = 0;
    std::ostringstream caps;
    for (int n = -1; n <= 2; ++n) {
        EnumerationOptions o;
        o.norm_cap = kTorsionCap[n + 1];
        caps << (n < 0 ? "" : ", ") << "n=" << n << ": |tau| <= " << *o.norm_cap;
        for (auto& t : enumerate_e8_changemakers(n, o)) {
            auto tor = torsion_coefficients(t);
            const Int g = genus_from_tau(t);
            bool ok = static_cast<Int>(tor.size()) == g + 1 && tor.back() == 0;
            for (Int i = 0; ok && i < g; ++i) ok = tor[static_cast<std::size_t>(i)] > 0;
            bad += !ok;
            ++checked;
        }
    }
    return {bad == 0, std::to_string(checked) + " taus (" + caps.str() + "), " + std::to_string(bad) + " failures"};
}

}  // namespace

int main(int argc, char** argv) {
    unsigned jobs = 1;
    if (argc > 1) jobs = static_cast<unsigned>(std::max(1, std::atoi(argv[1])));
    const auto start = Clock::now();
    int failures = 0;

    auto line = [&](int id, const std::string& title, const Outcome& o, double secs) {
        failures += !o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << id << ": " << title << " [" << static_cast<long>(secs * 1000)
                  << " ms] " << o.detail << std::endl;
    };
    auto claims_line = [&](int id, const std::string& title, std::vector<std::string> ids) {
        const auto t0 = Clock::now();
        auto o = from_claims(ids, jobs);
        line(id, title, o, seconds_since(t0));
    };

    claims_line(1, "root system and lemma minimum", {"roots240", "lemma_minimum"});
    claims_line(2, "Gram matrix identities", {"gram_inverse"});
    claims_line(3, "E8-changemaker count", {"e8_count"});
    claims_line(4, "norm bound for n <= 1", {"max_norm_small_n"});
    claims_line(5, "two-summand complements", {"two_summand"});
    claims_line(6, "family tables", {"tange_tables"});
    claims_line(7, "Lambda(191,157)", {"lambda_191_157"});
    claims_line(8, "loaded pairings", {"loaded_pairings"});
    claims_line(9, "congruences and cable genus", {"congruences"});

    const std::vector<Suite> suites = {
        {"changemaker brute force", changemaker_brute_force},
        {"disc = |tau|", discriminant_is_norm},
        {"isometry iff lens equivalence", isometry_vs_lens},
        {"irreducibles are intervals", irreducibles_are_intervals},
        {"standard basis n = 2", standard_basis_n2},
        {"Alexander round trip", alexander_round_trip},
        {"torsion zero iff i >= g", torsion_zero_iff_genus},
    };
    const auto t10 = Clock::now();
    Outcome all;
    std::ostringstream d;
    for (auto& s : suites) {
        const auto t0 = Clock::now();
        Outcome o;
        try {
            o = s.run();
        } catch (const std::exception& e) {
            o = {false, std::string("threw: ") + e.what()};
        }
        all.pass = all.pass && o.pass;
        d << "\n    " << (o.pass ? "ok  " : "FAIL") << " " << s.name << ": " << o.detail << " [" << static_cast<long>(seconds_since(t0) * 1000)
          << " ms]";
    }
    all.detail = d.str();
    line(10, "property suites", all, seconds_since(t10));

    std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " FAILED") << " in " << static_cast<long>(seconds_since(start))
              << " s" << std::endl;
    return failures == 0 ? 0 : 1;
}

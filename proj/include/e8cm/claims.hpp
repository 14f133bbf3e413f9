#pragma once

#include <algorithm>
#include <chrono>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "e8cm/changemaker.hpp"
#include "e8cm/loaded_pairings.hpp"
#include "e8cm/surgery.hpp"

namespace e8cm {

using ojson = nlohmann::ordered_json;

// One replayable computational assertion: run() recomputes `actual` from
// scratch and the claim passes when it equals `expected`. `notes` carries
// extra numbers worth reporting that have nothing to compare against.
struct Claim {
    std::string id;
    std::string description;
    ojson expected;
    std::function<ojson(unsigned jobs, ojson& notes)> run;
};

struct ClaimResult {
    std::string id;
    ojson expected, actual, notes;
    bool pass = false;
    double millis = 0;
    std::string error;  // set when run() threw
};

namespace claims_detail {

inline ojson coords_json(const e8::Coords& c) { return ojson(std::vector<Int>(c.begin(), c.end())); }

inline ojson shape_json(const LinearShape& s) {
    ojson out = ojson::array();
    for (auto [p, q] : s) out.push_back({p, q});
    return out;
}

// Rows in the verified j range: group 1 j in {1,2,3}, groups 2-4 j in {2,3}.
inline std::vector<TangeFamilyRow> table_rows() {
    std::vector<TangeFamilyRow> out;
    for (auto& f : tange_families()) {
        const int lo = f.group == 1 ? 1 : 2;
        for (int j = lo; j <= 3; ++j) out.push_back(tange_family(f.name, j));
    }
    return out;
}

}  // namespace claims_detail

inline const std::vector<Claim>& claims() {
    using namespace claims_detail;
    static const std::vector<Claim> registry = {
        {"roots240", "E8 has 240 roots, 120 positive, and the regenerated positive roots equal the stored table",
         ojson{{"roots", 240}, {"positive", 120}, {"table_matches", true}},
         [](unsigned, ojson&) {
             auto all = e8::roots();
             std::size_t pos = 0;
             for (auto& r : all) pos += std::all_of(r.simple.begin(), r.simple.end(), [](Int x) { return x >= 0; });
             bool matches = true;
             try {
                 matches = e8::positive_roots().size() == 120;
             } catch (const std::logic_error&) {
                 matches = false;
             }
             return ojson{{"roots", all.size()}, {"positive", pos}, {"table_matches", matches}};
         }},
        {"lemma_minimum", "the positive roots not below R113 have the unique minimum R105",
         ojson{{"minimum", 105}, {"unique", true}},
         [](unsigned, ojson& notes) {
             std::vector<int> outside;
             for (int i = 1; i <= 120; ++i)
                 if (!e8::root_leq(e8::root(i), e8::root(113))) outside.push_back(i);
             std::vector<int> minima;
             for (int i : outside)
                 if (std::all_of(outside.begin(), outside.end(), [&](int j) { return e8::root_leq(e8::root(i), e8::root(j)); }))
                     minima.push_back(i);
             notes["hasse_edges"] = e8::hasse_edges().size();
             return ojson{{"minimum", minima.empty() ? 0 : minima.front()}, {"unique", minima.size() == 1}};
         }},
        {"gram_inverse", "A times the stored inverse is the identity; inverse diagonal",
         ojson{{"identity", true}, {"inverse_diagonal", {30, 8, 14, 4, 20, 12, 6, 2}}},
         [](unsigned, ojson&) {
             Matrix prod = e8::gram() * e8::gram_inverse();
             std::vector<Int> diag;
             for (std::size_t i = 0; i < 8; ++i) diag.push_back(e8::gram_inverse()(i, i));
             return ojson{{"identity", prod == Matrix::identity(8)}, {"inverse_diagonal", diag}};
         }},
        {"e8_count", "nonzero E8-changemakers in E8 alone", ojson(1003),
         [](unsigned jobs, ojson& notes) {
             EnumerationOptions o;
             o.jobs = jobs;
             const auto alone = enumerate_e8_changemakers(-1, o).size();
             // the other reading of the count: tails of length 1..3
             std::size_t total = 0;
             for (int n = 0; n <= 2; ++n) {
                 std::size_t c = 0;
                 std::optional<Int> cap;
                 if (n == 2) cap = 2000;
                 for (auto& sg : changemaker_tails(static_cast<std::size_t>(n + 1)))
                     for_each_e8_changemaker(sg, cap, [&](const e8::Coords&) {
                         ++c;
                         return true;
                     });
                 notes[n == 2 ? "n2_norm_cap_2000" : "n" + std::to_string(n)] = c;
                 total += c;
             }
             notes["n0_to_n2_total"] = total;
             return ojson(alone);
         }},
        {"max_norm_small_n", "largest |tau| over E8-changemakers with n in {-1,0,1}",
         ojson{{"norm", 25541}, {"s_star", {4, 4, 8, 28, 4, 4, 4, 4}}, {"sigma", {1, 2}}},
         [](unsigned jobs, ojson&) {
             auto [best, arg] = max_norm_small_n(jobs);
             return ojson{{"norm", best}, {"s_star", coords_json(arg.s_star())}, {"sigma", arg.sigma}};
         }},
        {"two_summand", "E8-changemakers in E8 whose complement is Lambda(p,q) + Lambda(2,1)",
         ojson{{"summands", {{7, 6}, {27, 16}}},
               {"s_star", {{0, 0, 1, 0, 0, 0, 0, 0}, {1, 0, 0, 1, 0, 0, 0, 0}}},
               {"genus", {7, 27}},
               {"undecided", 0}},
         [](unsigned, ojson&) {
             std::vector<std::pair<std::pair<Int, Int>, Tau>> hits;
             int undecided = 0;
             for (auto& t : enumerate_e8_changemakers(-1)) {
                 auto c = orthogonal_complement(e8::lattice(), t.s.simple_vec());
                 std::optional<LinearShape> shape;
                 try {
                     shape = recognize_linear(c.lattice);
                 } catch (const SearchBudgetExceeded&) {
                     ++undecided;
                     continue;
                 }
                 if (!shape || shape->size() != 2 || (*shape)[1] != std::pair<Int, Int>{2, 1}) continue;
                 hits.push_back({(*shape)[0], t});
             }
             std::sort(hits.begin(), hits.end(), [](auto& a, auto& b) { return a.first < b.first; });
             ojson sums = ojson::array(), stars = ojson::array(), genus = ojson::array();
             for (auto& [pq, t] : hits) {
                 sums.push_back({pq.first, pq.second});
                 stars.push_back(coords_json(t.s_star()));
                 genus.push_back(genus_from_tau(t));
             }
             return ojson{{"summands", sums}, {"s_star", stars}, {"genus", genus}, {"undecided", undecided}};
         }},
        {"tange_tables", "every family row (group 1: j = 1..3, groups 2-4: j = 2, 3) embeds as Lambda(p, -k^2 mod p)",
         ojson{{"rows", 94}, {"failures", ojson::array()}},
         [](unsigned, ojson&) {
             auto rows = table_rows();
             ojson failures = ojson::array();
             for (auto& r : rows) {
                 auto c = verify_family_row(r);
                 if (!c.pass) failures.push_back(r.family + " j=" + std::to_string(r.j) + ": " + c.stage + " " + c.detail);
             }
             return ojson{{"rows", rows.size()}, {"failures", failures}};
         }},
        {"lambda_191_157", "s* = (1,1,1,1,0,0,0,0), sigma = (1) has complement Lambda(191,157)",
         ojson{{"p", 191}, {"lens_equivalent_to_157", true}},
         [](unsigned, ojson& notes) {
             auto r = sporadic_191_157();
             auto c = verify_embedding(r.s_star, r.sigma, 191, 157);
             if (c.recognized) notes["recognized"] = shape_json(*c.recognized);
             Int p = c.recognized && c.recognized->size() == 1 ? (*c.recognized)[0].first : 0;
             return ojson{{"p", p}, {"lens_equivalent_to_157", c.pass}};
         }},
        {"loaded_pairings", "every loaded pairing case is certified", ojson{{"violations", 0}},
         [](unsigned, ojson& notes) {
             auto rep = check_loaded_pairings();
             notes["cases"] = rep.cases.size();
             notes["shapes"] = rep.shapes;
             return ojson{{"violations", rep.violations.size()}};
         }},
        {"congruences", "x^2 = +-r mod p solutions and the cable genus (p+1)/4",
         ojson{{"p7_r4", {2, 5}}, {"p27_r14", {11, 16}}, {"cable_genus_p7", 2}, {"cable_genus_p27", 7}},
         [](unsigned, ojson&) {
             return ojson{{"p7_r4", solve_quadratic_congruence(7, 4)},
                          {"p27_r14", solve_quadratic_congruence(27, 14)},
                          {"cable_genus_p7", cable_genus_relation(7, 7)},
                          {"cable_genus_p27", cable_genus_relation(27, 27)}};
         }},
    };
    return registry;
}

inline const Claim* find_claim(const std::string& id) {
    for (auto& c : claims())
        if (c.id == id) return &c;
    return nullptr;
}

inline ClaimResult run_claim(const Claim& c, unsigned jobs = 1) {
    ClaimResult r;
    r.id = c.id;
    r.expected = c.expected;
    r.notes = ojson::object();
    const auto t0 = std::chrono::steady_clock::now();
    try {
        r.actual = c.run(jobs, r.notes);
        r.pass = r.actual == r.expected;
    } catch (const std::exception& e) {
        r.error = e.what();
        r.pass = false;
    }
    r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

inline ojson report_json(const ClaimResult& r, bool with_time = true) {
    ojson out{{"claim", r.id}, {"expected", r.expected}, {"actual", r.actual}, {"pass", r.pass}};
    if (with_time) out["millis"] = static_cast<Int>(r.millis + 0.5);
    if (!r.notes.empty()) out["notes"] = r.notes;
    if (!r.error.empty()) out["error"] = r.error;
    return out;
}

}  // namespace e8cm

#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "e8cm/changemaker.hpp"
#include "support.hpp"

using namespace e8cm;

namespace {

Tau tau(e8::Coords s_star, Vec sigma) { return Tau::from_dual(s_star, std::move(sigma)); }

// Brute-force profile: every root, every sign vector, every position of the 3.
std::pair<std::set<Int>, std::set<Int>> brute_profile(const Tau& t) {
    const std::size_t k = t.sigma.size();
    std::set<Int> shorts, big;
    std::vector<Vec> chis;
    for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
        Vec chi(k);
        for (std::size_t i = 0; i < k; ++i) chi[i] = (mask >> i & 1) ? -1 : 1;
        chis.push_back(chi);
        shorts.insert(dot(chi, t.sigma));
    }
    for (auto& r : e8::roots()) {
        Int a = dot(r.simple_vec(), Vec(t.s.dual.begin(), t.s.dual.end()));
        for (auto& chi : chis) big.insert(2 * a + dot(chi, t.sigma));
    }
    for (auto chi : chis)
        for (std::size_t i = 0; i < k; ++i) {
            Vec c3 = chi;
            c3[i] *= 3;
            big.insert(dot(c3, t.sigma));
        }
    return {shorts, big};
}

}  // namespace

TEST(ParityInterval, Examples) {
    EXPECT_EQ(parity_interval(0, 0), (std::vector<Int>{0}));
    EXPECT_EQ(parity_interval(-4, 4), (std::vector<Int>{-4, -2, 0, 2, 4}));
    EXPECT_EQ(parity_interval(3, 7), (std::vector<Int>{3, 5, 7}));
    EXPECT_THROW(parity_interval(0, 3), InputError);
}

TEST(Changemaker, Examples) {
    EXPECT_TRUE(is_changemaker({1, 1, 2}));
    EXPECT_FALSE(is_changemaker({1, 3}));
    EXPECT_TRUE(is_changemaker({}));
    EXPECT_THROW(is_changemaker({2, 1}), InputError);
}

TEST(Changemaker, DefinitionEquivalenceBruteForce) {
    // every sorted sigma of length <= 8 with entries <= 6
    std::size_t checked = 0;
    for (std::size_t len = 0; len <= 8; ++len) {
        Vec cur;
        std::function<void(Int)> rec = [&](Int lo) {
            if (cur.size() == len) {
                std::set<Int> sums;
                for (std::size_t mask = 0; mask < (std::size_t{1} << len); ++mask) {
                    Int s = 0;
                    for (std::size_t i = 0; i < len; ++i) s += (mask >> i & 1) ? -cur[i] : cur[i];
                    sums.insert(s);
                }
                Int l1 = 0;
                for (Int x : cur) l1 += x;
                auto pi = parity_interval(-l1, l1);
                bool fills = std::vector<Int>(sums.begin(), sums.end()) == pi;
                EXPECT_EQ(is_changemaker(cur), fills) << to_string(cur);
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
    EXPECT_EQ(checked, 6435u);  // multisets of size <= 8 from 7 values: C(15,8)
}

TEST(ChangemakerTails, MatchFilter) {
    for (std::size_t len = 0; len <= 5; ++len) {
        auto tails = changemaker_tails(len);
        for (auto& t : tails) EXPECT_TRUE(is_changemaker(t));
        EXPECT_TRUE(std::is_sorted(tails.begin(), tails.end()));
    }
    EXPECT_EQ(changemaker_tails(2), (std::vector<Vec>{{0, 0}, {0, 1}, {1, 1}, {1, 2}}));
}

TEST(PairingProfile, Examples) {
    auto a = pairing_profile(tau({0, 0, 0, 0, 0, 0, 0, 0}, {1, 1, 2}));
    EXPECT_EQ(a.c, 4);
    EXPECT_EQ(a.C, 8);
    // highest root: its pairings with the simple roots
    Tau top = Tau::from_simple({6, 3, 4, 2, 5, 4, 3, 2}, {1});
    auto b = pairing_profile(top);
    EXPECT_EQ(b.c, 1);
    EXPECT_EQ(b.C, 5);
    auto c = pairing_profile(tau({0, 0, 1, 0, 0, 0, 0, 0}, {}));
    EXPECT_EQ(c.c, 0);
    EXPECT_EQ(c.C, 8);
}

TEST(PairingProfile, MatchesBruteForce) {
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<int> d(0, 3);
    for (int trial = 0; trial < 80; ++trial) {
        auto tails = changemaker_tails(static_cast<std::size_t>(trial % 4));
        Vec sigma = tails[static_cast<std::size_t>(trial) % tails.size()];
        e8::Coords s{};
        for (auto& x : s) x = d(rng) == 0 ? d(rng) : 0;
        Tau t = tau(s, sigma);
        auto pp = pairing_profile(t);
        auto [shorts, big] = brute_profile(t);
        EXPECT_EQ(std::set<Int>(pp.short_set.begin(), pp.short_set.end()), shorts);
        EXPECT_EQ(std::set<Int>(pp.Short_set.begin(), pp.Short_set.end()), big);
        for (Int v : pp.short_set) EXPECT_EQ(mod(v - t.norm, 2), 0);
    }
}

TEST(E8Changemaker, Examples) {
    EXPECT_TRUE(is_e8_changemaker(tau({0, 0, 0, 0, 0, 0, 0, 0}, {1, 1, 2})));
    EXPECT_TRUE(is_e8_changemaker(Tau::from_simple({6, 3, 4, 2, 5, 4, 3, 2}, {1})));
    EXPECT_FALSE(is_e8_changemaker(tau({3, 0, 0, 0, 0, 0, 0, 0}, {1})));
}

TEST(E8Changemaker, InvariantUnderNormalization) {
    std::mt19937_64 rng(2);
    std::uniform_int_distribution<int> coord(-2, 2), idx(0, 7);
    for (int trial = 0; trial < 300; ++trial) {
        auto tails = changemaker_tails(static_cast<std::size_t>(trial % 3 + 1));
        Vec sigma = tails[static_cast<std::size_t>(trial) % tails.size()];
        e8::Coords s{};
        for (auto& x : s) x = coord(rng);
        Tau base = Tau::from_simple(s, sigma);
        // random reflections and a signed shuffle of the tail
        e8::Coords w = s;
        for (int k = 0; k < 10; ++k) {
            int i = idx(rng);
            auto v = e8::Vector::from_simple(w);
            w[i] -= v.dual[i];
        }
        Vec shuffled = sigma;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        for (auto& x : shuffled) x = (rng() & 1) ? -x : x;
        Tau moved = Tau::from_simple(w, shuffled);
        EXPECT_EQ(moved, base);
        EXPECT_EQ(is_e8_changemaker(moved), is_e8_changemaker(base));
    }
}

TEST(LemmaConstraints, Examples) {
    EXPECT_TRUE(lemma_violations({0, 1, 3, 0, 0, 0, 0, 0}, 2).empty());
    EXPECT_EQ(lemma_violations({3, 0, 0, 0, 0, 0, 0, 0}, 1), (std::vector<int>{1}));
    EXPECT_TRUE(lemma_violations({2, 0, 0, 0, 0, 0, 0, 0}, 1).empty());
}

TEST(Enumeration, E8AloneCountAndWitnesses) {
    auto all = enumerate_e8_changemakers(-1);
    EXPECT_EQ(all.size(), 1003u);
    std::set<e8::Coords> stars;
    for (auto& t : all) stars.insert(t.s_star());
    EXPECT_TRUE(stars.count({0, 0, 1, 0, 0, 0, 0, 0}));
    EXPECT_TRUE(stars.count({1, 0, 0, 1, 0, 0, 0, 0}));
}

TEST(Enumeration, KernelAgreesWithDefinitionOnWholeBox) {
    // every chamber point in the Lemma box, both accepted and rejected ones
    for (Vec sigma : std::vector<Vec>{{}, {1}}) {
        EnumerationOptions o;
        o.sigma = sigma;
        auto got = enumerate_e8_changemakers(static_cast<int>(sigma.size()) - 1, o);
        std::set<e8::Coords> acc;
        for (auto& t : got) acc.insert(t.s_star());
        Int m = 0;
        for (Int x : sigma) m += x;
        m += 1;
        std::size_t accepted = 0;
        e8::Coords s{};
        std::function<void(int)> rec = [&](int i) {
            if (i == 8) {
                Tau t = tau(s, sigma);
                if (t.norm == 0) return;
                bool def = is_e8_changemaker(t);
                if (def) {
                    ++accepted;
                    EXPECT_TRUE(lemma_violations(s, m - 1).empty());
                }
                EXPECT_EQ(acc.count(s) == 1, def) << to_string(Vec(s.begin(), s.end()));
                return;
            }
            Int hi = (i == 1 ? 3 * m : i == 2 ? 2 * m : i == 3 ? 7 * m : m);
            for (s[static_cast<std::size_t>(i)] = 0; s[static_cast<std::size_t>(i)] <= hi; ++s[static_cast<std::size_t>(i)]) rec(i + 1);
            s[static_cast<std::size_t>(i)] = 0;
        };
        rec(0);
        EXPECT_EQ(accepted, got.size());
    }
}

TEST(Enumeration, NecessaryConditionsAndShortBound) {
    for (Vec sigma : std::vector<Vec>{{}, {1}, {1, 1}}) {
        EnumerationOptions o;
        o.sigma = sigma;
        auto all = enumerate_e8_changemakers(static_cast<int>(sigma.size()) - 1, o);
        for (auto& t : all) {
            ASSERT_TRUE(satisfies_lemma_constraints(t).empty());
            if (t.s.norm() >= 4) {
                // C(tau) <= |tau|
                Int top = 0;
                for (auto& r : e8::positive_roots()) top = std::max(top, e8::pair_with_dual(r.coords, t.s.dual));
                Int c = t.sigma_l1();
                Int big = std::max(2 * top + c, t.sigma.empty() ? c : c + 2 * t.sigma.back());
                EXPECT_LE(big, t.norm);
            }
        }
    }
}

TEST(Enumeration, CapLimitAndJobs) {
    EnumerationOptions o;
    o.sigma = Vec{1, 1, 2};
    o.norm_cap = 300;
    auto one = enumerate_e8_changemakers(2, o);
    for (auto& t : one) EXPECT_LE(t.norm, 300);
    o.jobs = 3;
    EXPECT_EQ(enumerate_e8_changemakers(2, o), one);
    o.limit = 5;
    try {
        enumerate_e8_changemakers(2, o);
        FAIL() << "expected a partial-result error";
    } catch (const PartialResultError& e) {
        EXPECT_EQ(e.partial.size(), 5u);
        EXPECT_EQ(e.partial[4], one[4]);
    }
}

TEST(Enumeration, MaxNormWitness) {
    EnumerationOptions o;
    o.sigma = Vec{1, 2};
    auto all = enumerate_e8_changemakers(1, o);
    Int best = 0;
    Tau arg;
    for (auto& t : all)
        if (t.norm > best) {
            best = t.norm;
            arg = t;
        }
    EXPECT_EQ(best, 25541);
    EXPECT_EQ(arg.s_star(), (e8::Coords{4, 4, 8, 28, 4, 4, 4, 4}));
}

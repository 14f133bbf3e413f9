#include <gtest/gtest.h>

#include <set>

#include "e8cm/linear.hpp"
#include "support.hpp"

using namespace e8cm;
using namespace testsupport;

namespace {

Vec from_dual(const Vec& dual) {
    static const Int inv[8][8] = {{30, 15, 20, 10, 24, 18, 12, 6}, {15, 8, 10, 5, 12, 9, 6, 3},
                                  {20, 10, 14, 7, 16, 12, 8, 4},  {10, 5, 7, 4, 8, 6, 4, 2},
                                  {24, 12, 16, 8, 20, 15, 10, 5}, {18, 9, 12, 6, 15, 12, 8, 4},
                                  {12, 6, 8, 4, 10, 8, 6, 3},     {6, 3, 4, 2, 5, 4, 3, 2}};
    Vec s(8, 0);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) s[i] += inv[i][j] * dual[j];
    return s;
}

Int gcd_plain(Int a, Int b) {
    while (b) {
        Int t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// p/q from the expansion by forward convergents: independent of hj_eval
std::pair<Int, Int> convergent(const std::vector<Int>& a) {
    // [a1..an]^- = P_n / Q_n with P_k = a_k P_{k-1} - P_{k-2}, Q likewise
    Int p2 = 1, p1 = a[0], q2 = 0, q1 = 1;
    for (std::size_t k = 1; k < a.size(); ++k) {
        Int p = a[k] * p1 - p2, q = a[k] * q1 - q2;
        p2 = p1;
        p1 = p;
        q2 = q1;
        q1 = q;
    }
    return {p1, q1};
}

std::vector<Interval> all_intervals(const LinearLattice& l, bool both_signs) {
    std::vector<Interval> out;
    const int n = static_cast<int>(l.norms.size());
    for (int lo = 1; lo <= n; ++lo)
        for (int hi = lo; hi <= n; ++hi) {
            out.push_back({lo, hi, 1});
            if (both_signs) out.push_back({lo, hi, -1});
        }
    return out;
}

std::vector<std::pair<Int, Int>> coprime_pairs(Int max_p) {
    std::vector<std::pair<Int, Int>> out;
    for (Int p = 2; p <= max_p; ++p)
        for (Int q = 1; q < p; ++q)
            if (gcd_plain(p, q) == 1) out.emplace_back(p, q);
    return out;
}

}  // namespace

TEST(HirzebruchJung, Examples) {
    EXPECT_EQ(hj_expand(3, 1), (std::vector<Int>{3}));
    EXPECT_EQ(hj_expand(7, 6), (std::vector<Int>{2, 2, 2, 2, 2, 2}));
    EXPECT_EQ(hj_expand(27, 16), (std::vector<Int>{2, 4, 2, 2, 2, 2}));
    EXPECT_EQ(hj_eval({2, 4, 2, 2, 2, 2}), (std::pair<Int, Int>{27, 16}));
    EXPECT_THROW(hj_expand(6, 4), InputError);
    EXPECT_THROW(hj_expand(3, 3), InputError);
    EXPECT_THROW(hj_expand(3, 0), InputError);
}

TEST(HirzebruchJung, RoundTripUpTo500) {
    for (auto [p, q] : coprime_pairs(500)) {
        auto a = hj_expand(p, q);
        for (Int x : a) ASSERT_GE(x, 2);
        ASSERT_EQ(hj_eval(a), (std::pair<Int, Int>{p, q})) << p << "/" << q;
        ASSERT_EQ(convergent(a), (std::pair<Int, Int>{p, q}));
    }
}

TEST(LambdaGram, Examples) {
    EXPECT_EQ(lambda_gram(2, 1).gram, Matrix::from_rows({{2}}));
    auto l = lambda_gram(27, 16);
    EXPECT_EQ(l.gram, testsupport::path_gram({2, 4, 2, 2, 2, 2}));
    EXPECT_EQ(determinant(lambda_gram(43, 28).gram), 43);
    for (auto [p, q] : coprime_pairs(60)) ASSERT_EQ(determinant(lambda_gram(p, q).gram), p);
}

TEST(LensEquivalent, Examples) {
    EXPECT_TRUE(lens_equivalent(7, 6, 7, 6));
    EXPECT_TRUE(lens_equivalent(7, 3, 7, 5));
    EXPECT_FALSE(lens_equivalent(12, 5, 12, 7));
    EXPECT_FALSE(lens_equivalent(7, 3, 8, 3));
    EXPECT_EQ(canonical_q(7, 5), 3);
    EXPECT_EQ(canonical_q(27, 16), 16);  // 16 * 22 = 352 = 13 * 27 + 1
}

TEST(LensEquivalent, MatchesIsometryUpTo30) {
    for (Int p = 2; p <= 30; ++p)
        for (Int q = 1; q < p; ++q) {
            if (gcd_plain(p, q) != 1) continue;
            GramLattice a(lambda_gram(p, q).gram);
            for (Int q2 = q; q2 < p; ++q2) {
                if (gcd_plain(p, q2) != 1) continue;
                GramLattice b(lambda_gram(p, q2).gram);
                ASSERT_EQ(isometric(a, b).has_value(), lens_equivalent(p, q, p, q2)) << p << " " << q << " " << q2;
            }
        }
}

TEST(RecognizeLinear, Examples) {
    GramLattice e8(e8_gram());
    auto a = orthogonal_complement(e8, from_dual({0, 0, 1, 0, 0, 0, 0, 0}));
    EXPECT_EQ(recognize_linear(a.lattice), (LinearShape{{7, 6}, {2, 1}}));
    auto b = orthogonal_complement(e8, from_dual({1, 0, 0, 1, 0, 0, 0, 0}));
    EXPECT_EQ(recognize_linear(b.lattice), (LinearShape{{27, 16}, {2, 1}}));
    EXPECT_FALSE(recognize_linear(e8).has_value());
    // D4 has a trivalent vertex
    EXPECT_FALSE(recognize_linear(GramLattice::from_rows({{2, -1, -1, -1}, {-1, 2, 0, 0}, {-1, 0, 2, 0}, {-1, 0, 0, 2}})).has_value());
    EXPECT_EQ(recognize_linear(GramLattice::from_rows({{1}})), std::nullopt);
}

TEST(RecognizeLinear, AllLensLatticesUpTo60) {
    for (auto [p, q] : coprime_pairs(60)) {
        auto got = recognize_linear(GramLattice(lambda_gram(p, q).gram));
        ASSERT_TRUE(got.has_value()) << p << "/" << q;
        ASSERT_EQ(*got, (LinearShape{{p, canonical_q(p, q)}})) << p << "/" << q;
    }
}

TEST(RecognizeLinear, OrthogonalSumsInAnyOrder) {
    Matrix g = block(lambda_gram(5, 2).gram, block(lambda_gram(11, 3).gram, lambda_gram(2, 1).gram));
    EXPECT_EQ(recognize_linear(GramLattice(g)), (LinearShape{{11, 3}, {5, 2}, {2, 1}}));
    // conjugate by a unimodular change of basis
    Matrix u = Matrix::identity(g.rows());
    u(0, 3) = 1;
    u(4, 1) = -2;
    u(4, 0) = 1;
    EXPECT_EQ(recognize_linear(GramLattice(congruent(g, u))), (LinearShape{{11, 3}, {5, 2}, {2, 1}}));
}

TEST(Intervals, Relations) {
    EXPECT_EQ(relation({1, 2}, {3, 5}), Relation::consecutive);
    EXPECT_EQ(relation({1, 3}, {2, 5}), Relation::crossing);
    EXPECT_EQ(relation({1, 3}, {1, 5}), Relation::share_endpoint);
    EXPECT_TRUE(precedes({1, 3}, {1, 5}));
    EXPECT_FALSE(precedes({1, 5}, {1, 3}));
    EXPECT_EQ(relation({2, 3}, {1, 5}), Relation::nested);
    EXPECT_EQ(relation({1, 1}, {3, 5}), Relation::distant);
    EXPECT_EQ(relation({2, 4}, {2, 4}), Relation::same);
    auto l = lambda_gram(27, 16);
    EXPECT_EQ(interval_sum(l, {2, 3, -1}), (Vec{0, -1, -1, 0, 0, 0}));
    EXPECT_EQ(interval_norm(l, {1, 3}), 4);
    EXPECT_EQ(as_interval(Vec{0, -1, -1, 0}), (Interval{2, 3, -1}));
    EXPECT_FALSE(as_interval(Vec{1, 0, 1}).has_value());
    EXPECT_FALSE(as_interval(Vec{1, -1}).has_value());
    EXPECT_THROW(interval_sum(l, {0, 2}), InputError);
}

TEST(Intervals, ExactlyOneRelationAndSymmetry) {
    for (int a = 1; a <= 6; ++a)
        for (int b = a; b <= 6; ++b)
            for (int c = 1; c <= 6; ++c)
                for (int d = c; d <= 6; ++d) {
                    Interval s{a, b}, t{c, d};
                    ASSERT_EQ(relation(s, t), relation(t, s));
                    // pairings of positive sums in the all-2 lattice
                    auto l = lambda_gram(7, 6);
                    Int pr = bilinear(l.gram, interval_sum(l, s), interval_sum(l, t));
                    Relation r = relation(s, t);
                    if (r == Relation::distant) { ASSERT_EQ(pr, 0); }
                    if (r == Relation::consecutive) { ASSERT_EQ(pr, -1); }
                    if (r == Relation::crossing || r == Relation::nested) { ASSERT_EQ(pr, 0); }
                    if (r == Relation::share_endpoint) { ASSERT_EQ(pr, 1); }
                }
}

TEST(Intervals, IrreduciblesAreExactlySignedIntervalsUpTo30) {
    for (auto [p, q] : coprime_pairs(30)) {
        auto l = lambda_gram(p, q);
        GramLattice g(l.gram);
        Int bound = 0;
        for (Int a : l.norms) bound += a;
        bound -= 2 * (static_cast<Int>(l.norms.size()) - 1);
        std::set<Vec> want;
        for (auto& t : all_intervals(l, true)) want.insert(interval_sum(l, t));
        // irreducible_vectors scans everything up to the largest interval
        // norm, so anything irreducible outside the interval set would show up
        auto got = irreducible_vectors(g, bound + 2);
        ASSERT_EQ(std::set<Vec>(got.begin(), got.end()), want) << p << "/" << q;
    }
}

TEST(Intervals, BreakableIffTwoHeavyVerticesUpTo30) {
    for (auto [p, q] : coprime_pairs(30)) {
        auto l = lambda_gram(p, q);
        GramLattice g(l.gram);
        for (auto& t : all_intervals(l, false))
            ASSERT_EQ(is_breakable(g, interval_sum(l, t)), interval_breakable(l, t)) << p << "/" << q << " [" << t.lo << "," << t.hi << "]";
    }
}

TEST(Intervals, CrossingSymmetricDifferenceIsReducible) {
    for (auto [p, q] : coprime_pairs(20)) {
        auto l = lambda_gram(p, q);
        GramLattice g(l.gram);
        // |[s\t] +- [t\s]| is at most the largest interval norm plus 2
        Int top = 2;
        for (Int a : l.norms) top += a - 2;
        ShortVectorTable table(g, (top + 2) / 2);
        for (auto& s : all_intervals(l, false))
            for (auto& t : all_intervals(l, false)) {
                if (relation(s, t) != Relation::crossing || s.lo > t.lo) continue;
                // s = [a..b], t = [c..d] with a < c <= b < d
                Vec left = interval_sum(l, {s.lo, t.lo - 1}), right = interval_sum(l, {s.hi + 1, t.hi});
                Vec sum(left.size()), diff(left.size());
                for (std::size_t i = 0; i < left.size(); ++i) {
                    sum[i] = left[i] + right[i];
                    diff[i] = left[i] - right[i];
                }
                ASSERT_FALSE(table.is_irreducible(sum));
                ASSERT_FALSE(table.is_irreducible(diff));
            }
    }
}

TEST(BreakablePairing, Examples) {
    LinearLattice l;
    l.norms = {3, 2, 3, 2, 2};
    l.gram = testsupport::path_gram(l.norms);
    auto r = breakable_pairing_case(l, {1, 3}, {4, 5});
    EXPECT_EQ(r.pairing, -1);
    EXPECT_TRUE(r.matches);
    EXPECT_EQ(relation({4, 5}, {1, 3}), Relation::consecutive);

    LinearLattice m;
    m.norms = {2, 4, 2, 3, 2, 2};
    m.gram = testsupport::path_gram(m.norms);
    // V = [1..2] precedes T = [1..4]: |V| = 4, pairing 3
    auto a = breakable_pairing_case(m, {1, 4}, {1, 2});
    EXPECT_EQ(a.clause, 1);
    EXPECT_EQ(a.pairing, 3);
    // V = [5..6] consecutive to T = [2..4]
    auto b = breakable_pairing_case(m, {2, 4}, {5, 6});
    EXPECT_EQ(b.pairing, -1);
    EXPECT_TRUE(b.matches);
    EXPECT_THROW(breakable_pairing_case(m, {1, 2}, {4, 4}), InputError);
    EXPECT_THROW(breakable_pairing_case(m, {2, 4}, {2, 4}), InputError);
}

TEST(BreakablePairing, CaseTableHoldsUpTo40) {
    std::size_t checked = 0;
    for (auto [p, q] : coprime_pairs(40)) {
        auto l = lambda_gram(p, q);
        auto ivs = all_intervals(l, false);
        for (auto& t : ivs) {
            if (!interval_breakable(l, t)) continue;
            for (auto& v : ivs) {
                if (interval_breakable(l, v) || interval_norm(l, v) < 2) continue;
                auto r = breakable_pairing_case(l, t, v);
                ASSERT_TRUE(r.matches) << p << "/" << q << " T=[" << t.lo << "," << t.hi << "] V=[" << v.lo << "," << v.hi << "]";
                ++checked;
            }
        }
    }
    EXPECT_GT(checked, 1000u);
}

TEST(SignErrors, IdentitiesHoldUpTo20) {
    std::size_t zero_case = 0, cross_case = 0;
    for (auto [p, q] : coprime_pairs(20)) {
        auto l = lambda_gram(p, q);
        auto ivs = all_intervals(l, true);
        std::vector<Interval> twos, heavy;
        for (auto& t : ivs) (interval_norm(l, t) == 2 ? twos : heavy).push_back(t);
        for (auto& x : heavy) {
            if (interval_norm(l, x) < 3) continue;
            for (auto& y : heavy) {
                if (interval_norm(l, y) < 3 || (x.lo == y.lo && x.hi == y.hi)) continue;
                for (auto& z : twos) {
                    auto r = sign_identity_holds(l, x, y, z);
                    if (!r) continue;
                    ASSERT_TRUE(*r) << p << "/" << q << " x=[" << x.lo << "," << x.hi << "]" << x.sign << " y=[" << y.lo << "," << y.hi << "]" << y.sign << " z=[" << z.lo << "," << z.hi << "]" << z.sign;
                    (bilinear(l.gram, interval_sum(l, x), interval_sum(l, y)) == 0 ? zero_case : cross_case)++;
                }
            }
        }
    }
    EXPECT_GT(zero_case, 0u);
    EXPECT_GT(cross_case, 0u);
}

TEST(GraphObstructions, Examples) {
    auto star = IntersectionGraph::from_edges({2, 2, 2, 2}, {{0, 1}, {0, 2}, {0, 3}});
    auto o = graph_obstructions(star);
    EXPECT_TRUE(o.has_claw);
    EXPECT_EQ(o.claw[0], 0u);
    EXPECT_FALSE(o.has_incomplete_cycle);

    auto c4 = IntersectionGraph::from_edges({2, 2, 2, 2}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    EXPECT_TRUE(graph_obstructions(c4).has_incomplete_cycle);
    EXPECT_FALSE(graph_obstructions(c4).has_claw);
    auto k4 = IntersectionGraph::from_edges({2, 2, 2, 2}, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    EXPECT_FALSE(graph_obstructions(k4).has_incomplete_cycle);

    // Dynkin graph of E8, vertex i is e_{i+1}
    Matrix a = e8_gram();
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = i + 1; j < 8; ++j)
            if (a(i, j) != 0) edges.emplace_back(i, j);
    auto e8 = graph_obstructions(IntersectionGraph::from_edges(std::vector<Int>(8, 2), edges));
    EXPECT_TRUE(e8.has_claw);
    EXPECT_EQ(e8.claw, (std::vector<std::size_t>{0, 1, 2, 4}));

    // heavy triple: path of three heavy vertices is separated by the middle one
    auto path = IntersectionGraph::from_edges({3, 3, 3}, {{0, 1}, {1, 2}});
    EXPECT_FALSE(graph_obstructions(path).has_heavy_triple);
    auto tri = IntersectionGraph::from_edges({3, 3, 3}, {{0, 1}, {1, 2}, {0, 2}});
    EXPECT_TRUE(graph_obstructions(tri).has_heavy_triple);
    auto spread = IntersectionGraph::from_edges({3, 2, 3, 2, 3}, {{0, 1}, {1, 2}, {1, 3}, {3, 4}});
    EXPECT_TRUE(graph_obstructions(spread).has_heavy_triple);
    auto apart = IntersectionGraph::from_edges({3, 3, 3}, {{0, 1}});
    EXPECT_FALSE(graph_obstructions(apart).has_heavy_triple);
}

// The vertex basis of Lambda(p,q) itself is free of all three obstructions.
TEST(GraphObstructions, VertexBasisIsClean) {
    for (auto [p, q] : coprime_pairs(40)) {
        auto l = lambda_gram(p, q);
        std::vector<Interval> verts;
        for (int i = 1; i <= static_cast<int>(l.norms.size()); ++i) verts.push_back({i, i});
        auto o = graph_obstructions(IntersectionGraph::of_intervals(l, verts));
        ASSERT_FALSE(o.has_claw);
        ASSERT_FALSE(o.has_incomplete_cycle);
        ASSERT_FALSE(o.has_heavy_triple) << p << "/" << q;
    }
}

// Block test against enumeration of every simple cycle on small random graphs.
TEST(GraphObstructions, IncompleteCycleMatchesBruteForce) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 400; ++trial) {
        const std::size_t n = 3 + rng() % 5;
        std::vector<std::pair<std::size_t, std::size_t>> edges;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (rng() % 3 == 0) edges.emplace_back(i, j);
        auto g = IntersectionGraph::from_edges(std::vector<Int>(n, 2), edges);
        // brute force: some simple cycle (as a vertex sequence) has a non-adjacent pair
        bool bad = false;
        std::vector<std::size_t> perm;
        std::function<void(std::size_t)> grow = [&](std::size_t start) {
            if (bad) return;
            std::size_t last = perm.back();
            if (perm.size() >= 3 && g.adj[last][start]) {
                for (std::size_t a = 0; a < perm.size() && !bad; ++a)
                    for (std::size_t b = a + 1; b < perm.size() && !bad; ++b)
                        if (!g.adj[perm[a]][perm[b]]) bad = true;
            }
            for (std::size_t v = start + 1; v < n; ++v)
                if (g.adj[last][v] && std::find(perm.begin(), perm.end(), v) == perm.end()) {
                    perm.push_back(v);
                    grow(start);
                    perm.pop_back();
                }
        };
        for (std::size_t s = 0; s < n && !bad; ++s) {
            perm = {s};
            grow(s);
        }
        ASSERT_EQ(graph_obstructions(g).has_incomplete_cycle, bad) << "trial " << trial;
    }
}

#include <gtest/gtest.h>

#include <map>
#include <random>

#include "e8cm/e8.hpp"
#include "support.hpp"

using namespace e8cm;

TEST(E8Matrices, Entries) {
    EXPECT_EQ(e8::gram()(0, 0), 2);
    EXPECT_EQ(e8::gram_inverse()(0, 0), 30);
    EXPECT_EQ(e8::gram_inverse()(2, 2), 14);
    EXPECT_EQ(e8::gram() * e8::gram_inverse(), Matrix::identity(8));
    EXPECT_EQ(e8::gram(), testsupport::e8_gram());
    Vec diag;
    for (std::size_t i = 0; i < 8; ++i) diag.push_back(e8::gram_inverse()(i, i));
    EXPECT_EQ(diag, (Vec{30, 8, 14, 4, 20, 12, 6, 2}));
}

TEST(E8Roots, CountsAndTable) {
    auto all = e8::roots();
    EXPECT_EQ(all.size(), 240u);
    for (auto& r : all) EXPECT_EQ(r.norm(), 2);
    const auto& pos = e8::positive_roots();
    ASSERT_EQ(pos.size(), 120u);
    EXPECT_EQ(pos.front().coords, (e8::Coords{0, 0, 0, 0, 0, 0, 0, 1}));
    EXPECT_EQ(pos.back().coords, (e8::Coords{6, 3, 4, 2, 5, 4, 3, 2}));
    EXPECT_EQ(e8::root(44), (e8::Coords{1, 1, 1, 1, 1, 1, 1, 1}));
    EXPECT_EQ(e8::root(105), (e8::Coords{4, 2, 3, 2, 3, 2, 1, 0}));
    EXPECT_EQ(e8::root(113), (e8::Coords{5, 3, 3, 1, 4, 3, 2, 1}));
    // positive and negative halves
    std::size_t neg = 0;
    for (auto& r : all) {
        bool n = true;
        for (Int x : r.simple) n = n && x <= 0;
        neg += n;
    }
    EXPECT_EQ(neg, 120u);
}

TEST(E8Poset, MaximumAndLemmaMinimum) {
    const auto& t = e8::root_table();
    for (auto& r : t) EXPECT_TRUE(e8::root_leq(e8::root(1), e8::root(120)) && e8::root_leq(r, e8::root(120)));
    std::vector<int> outside;
    for (int i = 1; i <= 120; ++i)
        if (!e8::root_leq(e8::root(i), e8::root(113))) outside.push_back(i);
    int minimal = 0, count = 0;
    for (int i : outside) {
        bool below_all = true;
        for (int j : outside) below_all = below_all && e8::root_leq(e8::root(i), e8::root(j));
        if (below_all) {
            minimal = i;
            ++count;
        }
    }
    EXPECT_EQ(count, 1);
    EXPECT_EQ(minimal, 105);
}

TEST(E8Poset, HasseEdgesAddOneSimpleRoot) {
    auto edges = e8::hasse_edges();
    std::map<int, int> indeg;
    for (auto [a, b] : edges) {
        Int diff = 0;
        for (int k = 0; k < 8; ++k) diff += e8::root(b)[k] - e8::root(a)[k];
        EXPECT_EQ(diff, 1);
        ++indeg[b];
    }
    // every non-simple root is reached from below, simple roots are the sources
    for (int i = 1; i <= 120; ++i) {
        Int height = 0;
        for (Int x : e8::root(i)) height += x;
        EXPECT_EQ(indeg.count(i) == 0, height == 1) << i;
    }
}

TEST(WeylReduce, Examples) {
    auto top = e8::Vector::from_simple({6, 3, 4, 2, 5, 4, 3, 2});
    EXPECT_TRUE(top.in_chamber());
    EXPECT_EQ(e8::weyl_reduce(top).vector, top);
    for (auto& r : e8::roots()) EXPECT_EQ(e8::weyl_reduce(r).vector, top);
    auto neg = e8::Vector::from_simple({-6, -3, -4, -2, -5, -4, -3, -2});
    EXPECT_EQ(e8::weyl_reduce(neg).vector, top);
}

TEST(WeylReduce, IdempotentNormPreservingTransform) {
    std::mt19937_64 rng(4);
    std::uniform_int_distribution<int> d(-5, 5);
    for (int trial = 0; trial < 300; ++trial) {
        e8::Coords c;
        for (auto& x : c) x = d(rng);
        auto v = e8::Vector::from_simple(c);
        auto r = e8::weyl_reduce(v);
        EXPECT_TRUE(r.vector.in_chamber());
        EXPECT_EQ(r.vector.norm(), v.norm());
        EXPECT_EQ(e8::weyl_reduce(r.vector).vector, r.vector);
        EXPECT_EQ(r.transform * v.simple_vec(), r.vector.simple_vec());
        EXPECT_EQ(congruent(e8::gram(), r.transform), e8::gram());
        for (auto& p : e8::positive_roots()) EXPECT_GE(e8::pair_with_dual(p.coords, r.vector.dual), 0);
    }
}

#pragma once

#include <array>
#include <utility>
#include <vector>

#include "e8cm/lattice.hpp"

namespace e8cm::e8 {

using Coords = std::array<Int, 8>;

// Simple roots e1..e8: e4-e3-e1-e5-e6-e7-e8 is a path and e2 hangs off e1.
inline const Matrix& gram() {
    static const Matrix a = Matrix::from_rows({{2, -1, -1, 0, -1, 0, 0, 0},
                                               {-1, 2, 0, 0, 0, 0, 0, 0},
                                               {-1, 0, 2, -1, 0, 0, 0, 0},
                                               {0, 0, -1, 2, 0, 0, 0, 0},
                                               {-1, 0, 0, 0, 2, -1, 0, 0},
                                               {0, 0, 0, 0, -1, 2, -1, 0},
                                               {0, 0, 0, 0, 0, -1, 2, -1},
                                               {0, 0, 0, 0, 0, 0, -1, 2}});
    return a;
}

inline const Matrix& gram_inverse() {
    static const Matrix b = Matrix::from_rows({{30, 15, 20, 10, 24, 18, 12, 6},
                                               {15, 8, 10, 5, 12, 9, 6, 3},
                                               {20, 10, 14, 7, 16, 12, 8, 4},
                                               {10, 5, 7, 4, 8, 6, 4, 2},
                                               {24, 12, 16, 8, 20, 15, 10, 5},
                                               {18, 9, 12, 6, 15, 12, 8, 4},
                                               {12, 6, 8, 4, 10, 8, 6, 3},
                                               {6, 3, 4, 2, 5, 4, 3, 2}});
    return b;
}

inline const GramLattice& lattice() {
    static const GramLattice l(gram());
    return l;
}

// A vector of E8 in simple-root coordinates together with its pairings
// against the simple roots (dual coordinates).
struct Vector {
    Coords simple{};
    Coords dual{};

    static Vector from_simple(const Coords& s) {
        Vector v;
        v.simple = s;
        Vec d = gram() * Vec(s.begin(), s.end());
        std::copy(d.begin(), d.end(), v.dual.begin());
        return v;
    }
    static Vector from_dual(const Coords& d) {
        Vector v;
        v.dual = d;
        Vec s = gram_inverse() * Vec(d.begin(), d.end());
        std::copy(s.begin(), s.end(), v.simple.begin());
        return v;
    }
    Vec simple_vec() const { return Vec(simple.begin(), simple.end()); }
    // |v| computed from the dual side, s*^T A^-1 s*
    Int norm() const {
        Vec d(dual.begin(), dual.end());
        return bilinear(gram_inverse(), d, d);
    }
    bool in_chamber() const {
        for (Int x : dual)
            if (x < 0) return false;
        return true;
    }
    bool operator==(const Vector&) const = default;
};

// <x, s> for x in simple coordinates and s given by dual coordinates.
inline Int pair_with_dual(const Coords& x, const Coords& dual) {
    Int s = 0;
    for (int i = 0; i < 8; ++i) s += x[i] * dual[i];
    return s;
}

// Positive roots as listed in the reference table, index i+1 at position i.
// The listing happens to be lexicographic in simple-root coordinates.
inline const std::vector<Coords>& root_table() {
    static const std::vector<Coords> t = {
    {0,0,0,0,0,0,0,1}, {0,0,0,0,0,0,1,0}, {0,0,0,0,0,0,1,1}, {0,0,0,0,0,1,0,0},
    {0,0,0,0,0,1,1,0}, {0,0,0,0,0,1,1,1}, {0,0,0,0,1,0,0,0}, {0,0,0,0,1,1,0,0},
    {0,0,0,0,1,1,1,0}, {0,0,0,0,1,1,1,1}, {0,0,0,1,0,0,0,0}, {0,0,1,0,0,0,0,0},
    {0,0,1,1,0,0,0,0}, {0,1,0,0,0,0,0,0}, {1,0,0,0,0,0,0,0}, {1,0,0,0,1,0,0,0},
    {1,0,0,0,1,1,0,0}, {1,0,0,0,1,1,1,0}, {1,0,0,0,1,1,1,1}, {1,0,1,0,0,0,0,0},
    {1,0,1,0,1,0,0,0}, {1,0,1,0,1,1,0,0}, {1,0,1,0,1,1,1,0}, {1,0,1,0,1,1,1,1},
    {1,0,1,1,0,0,0,0}, {1,0,1,1,1,0,0,0}, {1,0,1,1,1,1,0,0}, {1,0,1,1,1,1,1,0},
    {1,0,1,1,1,1,1,1}, {1,1,0,0,0,0,0,0}, {1,1,0,0,1,0,0,0}, {1,1,0,0,1,1,0,0},
    {1,1,0,0,1,1,1,0}, {1,1,0,0,1,1,1,1}, {1,1,1,0,0,0,0,0}, {1,1,1,0,1,0,0,0},
    {1,1,1,0,1,1,0,0}, {1,1,1,0,1,1,1,0}, {1,1,1,0,1,1,1,1}, {1,1,1,1,0,0,0,0},
    {1,1,1,1,1,0,0,0}, {1,1,1,1,1,1,0,0}, {1,1,1,1,1,1,1,0}, {1,1,1,1,1,1,1,1},
    {2,1,1,0,1,0,0,0}, {2,1,1,0,1,1,0,0}, {2,1,1,0,1,1,1,0}, {2,1,1,0,1,1,1,1},
    {2,1,1,0,2,1,0,0}, {2,1,1,0,2,1,1,0}, {2,1,1,0,2,1,1,1}, {2,1,1,0,2,2,1,0},
    {2,1,1,0,2,2,1,1}, {2,1,1,0,2,2,2,1}, {2,1,1,1,1,0,0,0}, {2,1,1,1,1,1,0,0},
    {2,1,1,1,1,1,1,0}, {2,1,1,1,1,1,1,1}, {2,1,1,1,2,1,0,0}, {2,1,1,1,2,1,1,0},
    {2,1,1,1,2,1,1,1}, {2,1,1,1,2,2,1,0}, {2,1,1,1,2,2,1,1}, {2,1,1,1,2,2,2,1},
    {2,1,2,1,1,0,0,0}, {2,1,2,1,1,1,0,0}, {2,1,2,1,1,1,1,0}, {2,1,2,1,1,1,1,1},
    {2,1,2,1,2,1,0,0}, {2,1,2,1,2,1,1,0}, {2,1,2,1,2,1,1,1}, {2,1,2,1,2,2,1,0},
    {2,1,2,1,2,2,1,1}, {2,1,2,1,2,2,2,1}, {3,1,2,1,2,1,0,0}, {3,1,2,1,2,1,1,0},
    {3,1,2,1,2,1,1,1}, {3,1,2,1,2,2,1,0}, {3,1,2,1,2,2,1,1}, {3,1,2,1,2,2,2,1},
    {3,1,2,1,3,2,1,0}, {3,1,2,1,3,2,1,1}, {3,1,2,1,3,2,2,1}, {3,1,2,1,3,3,2,1},
    {3,2,2,1,2,1,0,0}, {3,2,2,1,2,1,1,0}, {3,2,2,1,2,1,1,1}, {3,2,2,1,2,2,1,0},
    {3,2,2,1,2,2,1,1}, {3,2,2,1,2,2,2,1}, {3,2,2,1,3,2,1,0}, {3,2,2,1,3,2,1,1},
    {3,2,2,1,3,2,2,1}, {3,2,2,1,3,3,2,1}, {4,2,2,1,3,2,1,0}, {4,2,2,1,3,2,1,1},
    {4,2,2,1,3,2,2,1}, {4,2,2,1,3,3,2,1}, {4,2,2,1,4,3,2,1}, {4,2,3,1,3,2,1,0},
    {4,2,3,1,3,2,1,1}, {4,2,3,1,3,2,2,1}, {4,2,3,1,3,3,2,1}, {4,2,3,1,4,3,2,1},
    {4,2,3,2,3,2,1,0}, {4,2,3,2,3,2,1,1}, {4,2,3,2,3,2,2,1}, {4,2,3,2,3,3,2,1},
    {4,2,3,2,4,3,2,1}, {5,2,3,1,4,3,2,1}, {5,2,3,2,4,3,2,1}, {5,2,4,2,4,3,2,1},
    {5,3,3,1,4,3,2,1}, {5,3,3,2,4,3,2,1}, {5,3,4,2,4,3,2,1}, {6,3,4,2,4,3,2,1},
    {6,3,4,2,5,3,2,1}, {6,3,4,2,5,4,2,1}, {6,3,4,2,5,4,3,1}, {6,3,4,2,5,4,3,2},
    };
    return t;
}

// All 240 roots, lexicographic.
inline std::vector<Vector> roots() {
    std::vector<Vector> out;
    for (auto& v : short_vectors(lattice(), 2)) {
        Coords c;
        std::copy(v.begin(), v.end(), c.begin());
        out.push_back(Vector::from_simple(c));
    }
    return out;
}

struct PositiveRoot {
    int index;  // 1..120
    Coords coords;
};

// Regenerates the positive roots and checks them against the table; the
// table supplies the indices.
inline const std::vector<PositiveRoot>& positive_roots() {
    static const std::vector<PositiveRoot> pr = [] {
        std::vector<Coords> gen;
        for (auto& r : roots()) {
            bool pos = true;
            for (Int x : r.simple) pos = pos && x >= 0;
            if (pos) gen.push_back(r.simple);
        }
        std::sort(gen.begin(), gen.end());
        if (gen != root_table()) throw std::logic_error("regenerated positive roots disagree with the table");
        std::vector<PositiveRoot> out;
        for (std::size_t i = 0; i < gen.size(); ++i) out.push_back({static_cast<int>(i + 1), gen[i]});
        return out;
    }();
    return pr;
}

inline const Coords& root(int index) { return root_table().at(static_cast<std::size_t>(index - 1)); }

inline bool root_leq(const Coords& a, const Coords& b) {
    for (int i = 0; i < 8; ++i)
        if (a[i] > b[i]) return false;
    return true;
}

// Covering pairs (i, j), R_i < R_j with nothing strictly between.
inline std::vector<std::pair<int, int>> hasse_edges() {
    const auto& t = root_table();
    std::vector<std::pair<int, int>> out;
    for (std::size_t i = 0; i < t.size(); ++i)
        for (std::size_t j = 0; j < t.size(); ++j) {
            if (i == j || !root_leq(t[i], t[j])) continue;
            bool covered = true;
            for (std::size_t k = 0; k < t.size() && covered; ++k)
                if (k != i && k != j && root_leq(t[i], t[k]) && root_leq(t[k], t[j])) covered = false;
            if (covered) out.emplace_back(static_cast<int>(i + 1), static_cast<int>(j + 1));
        }
    return out;
}

struct WeylResult {
    Vector vector;
    Matrix transform;  // simple coords: out = transform * in
};

// Simple reflections v -> v - <v,e_i> e_i, lowest violated index first.
inline WeylResult weyl_reduce(const Vector& v) {
    Coords s = v.simple;
    Matrix w = Matrix::identity(8);
    const Matrix& a = gram();
    for (std::size_t steps = 0;; ++steps) {
        if (steps > 100000) throw std::logic_error("Weyl reduction did not terminate");
        Vector cur = Vector::from_simple(s);
        int bad = -1;
        for (int i = 0; i < 8; ++i)
            if (cur.dual[i] < 0) {
                bad = i;
                break;
            }
        if (bad < 0) return {cur, w};
        s[bad] -= cur.dual[bad];
        // w <- (I - e_bad A_bad) w
        Matrix next = w;
        for (std::size_t j = 0; j < 8; ++j) {
            Int acc = 0;
            for (std::size_t k = 0; k < 8; ++k) acc += a(static_cast<std::size_t>(bad), k) * w(k, j);
            next(static_cast<std::size_t>(bad), j) = w(static_cast<std::size_t>(bad), j) - acc;
        }
        w = next;
    }
}

}  // namespace e8cm::e8

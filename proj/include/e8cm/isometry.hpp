#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "e8cm/lattice.hpp"

namespace e8cm {

struct SearchBudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultIsometryBudget = 50000000;

namespace detail {

struct Candidate {
    Int norm;
    Vec x;
    Vec gx;  // G x, so pairings are plain dot products
};

class IsometrySearch {
public:
    IsometrySearch(const Matrix& target, std::vector<Candidate> pool, std::size_t budget)
        : target_(target), pool_(std::move(pool)), r_(target.rows()), budget_(budget) {}

    std::optional<std::vector<std::size_t>> run() {
        std::vector<std::vector<std::size_t>> lists(r_);
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t c = 0; c < pool_.size(); ++c)
                if (pool_[c].norm == target_(i, i)) lists[i].push_back(c);
        std::vector<std::size_t> chosen(r_, SIZE_MAX);
        if (extend(lists, chosen, 0)) return chosen;
        return std::nullopt;
    }

private:
    bool extend(const std::vector<std::vector<std::size_t>>& lists, std::vector<std::size_t>& chosen, std::size_t depth) {
        if (depth == r_) return true;
        if (++steps_ > budget_) throw SearchBudgetExceeded("isometry search step budget exhausted");
        // most constrained unassigned target first; lowest index breaks ties
        std::size_t best = SIZE_MAX;
        for (std::size_t i = 0; i < r_; ++i)
            if (chosen[i] == SIZE_MAX && (best == SIZE_MAX || lists[i].size() < lists[best].size())) best = i;
        if (lists[best].empty()) return false;
        for (std::size_t c : lists[best]) {
            const Vec& gx = pool_[c].gx;
            std::vector<std::vector<std::size_t>> next(r_);
            bool dead = false;
            for (std::size_t k = 0; k < r_ && !dead; ++k) {
                if (chosen[k] != SIZE_MAX || k == best) continue;
                Int want = target_(k, best);
                for (std::size_t d : lists[k])
                    if (d != c && dot(pool_[d].x, gx) == want) next[k].push_back(d);
                dead = next[k].empty();
            }
            if (dead) continue;
            chosen[best] = c;
            if (extend(next, chosen, depth + 1)) return true;
            chosen[best] = SIZE_MAX;
        }
        return false;
    }

    const Matrix& target_;
    std::vector<Candidate> pool_;
    std::size_t r_;
    std::size_t budget_;
    std::size_t steps_ = 0;
};

}  // namespace detail

// Returns U with U^T G1 U = G2 (columns of U are the images of the basis of
// L2, written in the basis of L1), or nothing if the lattices differ.
// Throws SearchBudgetExceeded when the backtracking runs past `budget` steps.
inline std::optional<Matrix> isometric(const GramLattice& l1, const GramLattice& l2, std::size_t budget = kDefaultIsometryBudget) {
    if (l1.rank() != l2.rank()) return std::nullopt;
    if (discriminant(l1) != discriminant(l2)) return std::nullopt;
    if (l1.gram() == l2.gram()) return Matrix::identity(l1.rank());
    Reduced r1 = lll_reduce(l1.gram());
    Reduced r2 = lll_reduce(l2.gram());
    GramLattice a(r1.gram), b(r2.gram);
    Int bound = 0;
    for (std::size_t i = 0; i < b.rank(); ++i) bound = std::max(bound, r2.gram(i, i));
    if (norm_counts(a, bound) != norm_counts(b, bound)) return std::nullopt;

    std::vector<detail::Candidate> pool;
    for_each_short_vector(a, bound, [&](const Vec& x, Int nx) {
        pool.push_back({nx, x, a.gram() * x});
        return true;
    });
    std::sort(pool.begin(), pool.end(), [](const auto& p, const auto& q) {
        return p.norm != q.norm ? p.norm < q.norm : p.x < q.x;
    });
    detail::IsometrySearch search(r2.gram, pool, budget);
    auto pick = search.run();
    if (!pick) return std::nullopt;
    Matrix img(a.rank(), a.rank());
    for (std::size_t j = 0; j < a.rank(); ++j)
        for (std::size_t i = 0; i < a.rank(); ++i) img(i, j) = pool[(*pick)[j]].x[i];
    Matrix u = r1.transform * img * inverse_unimodular(r2.transform);
    if (!(congruent(l1.gram(), u) == l2.gram())) throw std::logic_error("isometry witness failed verification");
    return u;
}

}  // namespace e8cm

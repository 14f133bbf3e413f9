#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "e8cm/lll.hpp"

namespace e8cm {

// Fincke-Pohst enumeration of the integer points y with
//   (y - c)^T G (y - c) <= bound
// for a real center c. Pruning uses long double with a small slack, so the
// visitor may see a few points just outside the ellipsoid and must do the
// exact acceptance test itself. Returning false from the visitor stops.
class EllipsoidEnumerator {
public:
    explicit EllipsoidEnumerator(const Matrix& g) : n_(g.rows()), q_(n_, std::vector<long double>(n_, 0)) {
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) q_[i][j] = static_cast<long double>(g(i, j));
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t j = i + 1; j < n_; ++j) {
                q_[j][i] = q_[i][j];
                q_[i][j] /= q_[i][i];
            }
            for (std::size_t k = i + 1; k < n_; ++k)
                for (std::size_t l = k; l < n_; ++l) q_[k][l] -= q_[k][i] * q_[i][l];
        }
    }

    template <class Visit>
    void run(const std::vector<long double>& center, long double bound, Visit&& visit) const {
        if (n_ == 0) {
            Vec empty;
            visit(empty);
            return;
        }
        const long double slack = 1e-9L * (bound > 1 ? bound : 1) + 1e-9L;
        Vec y(n_, 0);
        std::vector<long double> rem(n_ + 1, 0), mid(n_, 0);
        std::vector<Int> hi(n_, 0);
        rem[n_] = bound + slack;
        std::size_t i = n_ - 1;
        auto open = [&](std::size_t lvl) {
            long double c = center[lvl];
            for (std::size_t j = lvl + 1; j < n_; ++j) c -= q_[lvl][j] * (static_cast<long double>(y[j]) - center[j]);
            mid[lvl] = c;
            long double r = rem[lvl + 1] / q_[lvl][lvl];
            long double w = r > 0 ? std::sqrt(r) : 0;
            y[lvl] = static_cast<Int>(std::ceil(c - w - 1e-12L));
            hi[lvl] = static_cast<Int>(std::floor(c + w + 1e-12L));
        };
        open(i);
        while (true) {
            if (y[i] > hi[i]) {
                if (i == n_ - 1) return;
                ++i;
                ++y[i];
                continue;
            }
            long double d = static_cast<long double>(y[i]) - mid[i];
            long double r = rem[i + 1] - q_[i][i] * d * d;
            if (r < 0) {
                // only possible at the rounded edges
                ++y[i];
                continue;
            }
            if (i == 0) {
                if (!visit(static_cast<const Vec&>(y))) return;
                ++y[0];
                continue;
            }
            rem[i] = r;
            --i;
            open(i);
        }
    }

    // Zig-zag order from the center outward at each level, so good points
    // come early. The visitor returns the radius to keep searching with
    // (anything >= the current one leaves it alone); only points strictly
    // inside the new radius, up to the slack, are visited afterwards.
    template <class Visit>
    void run_shrinking(const std::vector<long double>& center, long double bound, Visit&& visit) const {
        if (n_ == 0) {
            Vec empty;
            visit(empty);
            return;
        }
        auto slack_of = [](long double b) { return 1e-9L * (b > 1 ? b : 1) + 1e-9L; };
        long double limit = bound + slack_of(bound);
        Vec y(n_, 0);
        std::vector<Int> step(n_, 0);
        std::vector<long double> part(n_ + 1, 0), mid(n_, 0);
        std::size_t i = n_ - 1;
        auto open = [&](std::size_t lvl) {
            long double c = center[lvl];
            for (std::size_t j = lvl + 1; j < n_; ++j) c -= q_[lvl][j] * (static_cast<long double>(y[j]) - center[j]);
            mid[lvl] = c;
            y[lvl] = static_cast<Int>(std::llround(c));
            step[lvl] = c >= static_cast<long double>(y[lvl]) ? 1 : -1;
        };
        auto advance = [&](std::size_t lvl) {
            y[lvl] += step[lvl];
            step[lvl] = step[lvl] > 0 ? -step[lvl] - 1 : -step[lvl] + 1;
        };
        open(i);
        while (true) {
            const long double d = static_cast<long double>(y[i]) - mid[i];
            const long double dist = part[i + 1] + q_[i][i] * d * d;
            if (dist > limit) {
                // zig-zag visits |y - mid| in nondecreasing order: level done
                if (i == n_ - 1) return;
                ++i;
                advance(i);
                continue;
            }
            if (i == 0) {
                const long double nb = visit(static_cast<const Vec&>(y));
                if (nb < 0) return;
                if (nb < limit) limit = nb + slack_of(nb);
                advance(0);
                continue;
            }
            part[i] = dist;
            --i;
            open(i);
        }
    }

private:
    std::size_t n_;
    std::vector<std::vector<long double>> q_;
};

}  // namespace e8cm

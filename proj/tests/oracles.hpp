// SPDX-License-Identifier: Apache-2.0
//
// swipt-relay: rate optimization for wirelessly powered MIMO relays
// Copyright (C) 2026 The swipt-relay authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// Reference computations used only by the tests. Nothing here calls into the
// solver code paths being checked: water-filling is solved by sorting, rates
// are summed directly, and optima come from closed forms or 1-D searches.

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <vector>

namespace oracle
{
    inline double half_log2(double x)
    {
        return 0.5 * std::log2(1.0 + x);
    }

    // Water-filling by sorting the inverse gains and growing the active set.
    inline std::vector<double> waterfill_sorted(double budget, const std::vector<double> &gains)
    {
        std::vector<double> q(gains.size(), 0.0);
        if (budget <= 0.0 || gains.empty())
            return q;
        std::vector<double> inv(gains.size());
        for (std::size_t i = 0; i < gains.size(); ++i)
            inv[i] = 1.0 / gains[i];
        std::vector<double> sorted = inv;
        std::sort(sorted.begin(), sorted.end());

        double level = 0.0, prefix = 0.0;
        for (std::size_t k = 0; k < sorted.size(); ++k)
        {
            prefix += sorted[k];
            level = (budget + prefix) / static_cast<double>(k + 1);
            if (k + 1 == sorted.size() || level <= sorted[k + 1])
                break;
        }
        for (std::size_t i = 0; i < gains.size(); ++i)
            q[i] = std::max(level - inv[i], 0.0);
        return q;
    }

    // Largest violation of the water-filling KKT conditions: budget balance,
    // equal level on the active set, inactive modes above the level.
    inline double waterfill_kkt_residual(const std::vector<double> &q, const std::vector<double> &gains,
                                         double budget)
    {
        const double scale = std::max(1.0, budget);
        double level = -1.0;
        for (std::size_t i = 0; i < q.size(); ++i)
            if (q[i] > 0.0)
                level = std::max(level, q[i] + 1.0 / gains[i]);
        double worst = std::abs(std::accumulate(q.begin(), q.end(), 0.0) - budget) / scale;
        for (std::size_t i = 0; i < q.size(); ++i)
        {
            worst = std::max(worst, std::max(-q[i], 0.0) / scale);
            if (level < 0.0)
                continue;
            if (q[i] > 0.0)
                worst = std::max(worst, std::abs(q[i] + 1.0 / gains[i] - level) / scale);
            else
                worst = std::max(worst, std::max(level - 1.0 / gains[i], 0.0) / scale);
        }
        return worst;
    }

    struct Siso
    {
        double rho;
        double rate;
    };

    // Single antenna per node: the hop rates cross where (1 - rho) = eta rho lambda_G.
    inline Siso siso_optimum(double lambda_h, double lambda_g, double ps, double eta = 1.0)
    {
        const double rho = 1.0 / (1.0 + eta * lambda_g);
        return {rho, half_log2(ps * lambda_h * (1.0 - rho))};
    }

    // Plain grid over rho for the same single-antenna link.
    inline Siso siso_grid(double lambda_h, double lambda_g, double ps, int points, double eta = 1.0)
    {
        Siso best{0.0, -1.0};
        for (int k = 0; k < points; ++k)
        {
            const double rho = (k + 0.5) / points;
            const double r = std::min(half_log2((1.0 - rho) * ps * lambda_h), half_log2(eta * rho * ps * lambda_h * lambda_g));
            if (r > best.rate)
                best = {rho, r};
        }
        return best;
    }

    inline double sum_rate(const std::vector<double> &x, const std::vector<double> &gains)
    {
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i)
            s += half_log2(x[i] * gains[i]);
        return s;
    }

    // Optimum of the eigenmode problem with gains sorted descending: a decoding
    // budget A is water-filled over all source modes and the rest of the source
    // power is harvested on the strongest mode (the best conversion rate), then
    // water-filled over the relay modes. R1 grows and R2 shrinks with A, so the
    // optimum is their crossing, found by bisection.
    inline double balanced_rate(const std::vector<double> &lh, const std::vector<double> &lg, double ps,
                                double eta = 1.0)
    {
        auto r1 = [&](double a) { return sum_rate(waterfill_sorted(a, lh), lh); };
        auto r2 = [&](double a) { return sum_rate(waterfill_sorted(eta * lh.front() * (ps - a), lg), lg); };
        double lo = 0.0, hi = ps;
        for (int it = 0; it < 200; ++it)
        {
            const double mid = 0.5 * (lo + hi);
            (r1(mid) < r2(mid) ? lo : hi) = mid;
        }
        return std::min(r1(lo), r2(lo));
    }

    // Maximum of a function sampled on a uniform grid over [a, b].
    inline double grid_max(const std::function<double(double)> &f, double a, double b, int points)
    {
        double best = -INFINITY;
        for (int k = 0; k < points; ++k)
            best = std::max(best, f(a + (b - a) * k / (points - 1)));
        return best;
    }
}

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

// Property checks shared by the unit tests and the acceptance runner.

#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "swipt/duals.hpp"
#include "swipt/ellipsoid.hpp"
#include "swipt/rates.hpp"

namespace props
{
    using namespace swipt;

    // Random point on the boundary of the feasible set: the whole source budget is
    // spent and the relay transmits everything it harvests.
    inline PrimalPoint random_feasible(std::mt19937_64 &rng, const EigenChannel &ec, double ps)
    {
        std::uniform_real_distribution<double> u(0.0, 1.0);
        PrimalPoint x;
        double sum = 0.0;
        for (std::size_t i = 0; i < ec.k1(); ++i)
        {
            x.rho.push_back(u(rng));
            x.p.push_back(u(rng));
            sum += x.p.back();
        }
        for (double &v : x.p)
            v *= ps / sum;
        std::vector<double> w(ec.k2());
        double wsum = 0.0;
        for (double &v : w)
            wsum += (v = u(rng));
        const double h = harvested_power(x, ec, ec.eta);
        for (double &v : w)
            v *= h / wsum;
        x.q = w;
        refresh_rate(x, ec);
        return x;
    }

    // Convex combination in the decoded / harvested power coordinates
    // a = (1 - rho) p and b = rho p, where every constraint is linear or concave.
    inline PrimalPoint combine_power_coords(const PrimalPoint &x, const PrimalPoint &y, double t,
                                            const EigenChannel &ec)
    {
        PrimalPoint z;
        for (std::size_t i = 0; i < x.p.size(); ++i)
        {
            const double a = t * (1.0 - x.rho[i]) * x.p[i] + (1.0 - t) * (1.0 - y.rho[i]) * y.p[i];
            const double b = t * x.rho[i] * x.p[i] + (1.0 - t) * y.rho[i] * y.p[i];
            z.p.push_back(a + b);
            z.rho.push_back(a + b > 0.0 ? b / (a + b) : 0.0);
        }
        for (std::size_t i = 0; i < x.q.size(); ++i)
            z.q.push_back(t * x.q[i] + (1.0 - t) * y.q[i]);
        refresh_rate(z, ec);
        return z;
    }

    // Convex combination taken directly in (rho, p, q).
    inline PrimalPoint combine_raw(const PrimalPoint &x, const PrimalPoint &y, double t, const EigenChannel &ec)
    {
        PrimalPoint z;
        for (std::size_t i = 0; i < x.p.size(); ++i)
        {
            z.rho.push_back(t * x.rho[i] + (1.0 - t) * y.rho[i]);
            z.p.push_back(t * x.p[i] + (1.0 - t) * y.p[i]);
        }
        for (std::size_t i = 0; i < x.q.size(); ++i)
            z.q.push_back(t * x.q[i] + (1.0 - t) * y.q[i]);
        refresh_rate(z, ec);
        return z;
    }

    // Largest complementary-slackness product at the returned pair, in bps/Hz:
    // nu (P_s - sum p) and mu (harvest - sum q).
    inline double complementary_slackness(const SolveResult &r, const EigenChannel &ec, double ps)
    {
        double sum_p = 0.0, sum_q = 0.0;
        for (double v : r.primal.p)
            sum_p += v;
        for (double v : r.primal.q)
            sum_q += v;
        const double harvest = harvested_power(r.primal, ec, ec.eta);
        return std::max(std::abs(r.dual.nu * (ps - sum_p)), std::abs(r.dual.mu * (harvest - sum_q))) /
               std::numbers::ln2;
    }
}

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

#include "swipt/rates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "swipt/errors.hpp"

namespace swipt
{
    namespace
    {
        void check_dims(const PrimalPoint &pt, const EigenChannel &ec, const char *who)
        {
            if (pt.rho.size() != ec.k1() || pt.p.size() != ec.k1() || pt.q.size() != ec.k2())
                throw DimensionMismatch(std::string(who) + ": rho/p must have length K1 and q length K2");
        }

        double half_log2_1p(double x)
        {
            return 0.5 * std::log1p(x) / std::numbers::ln2;
        }
    }

    double FeasibilityReport::max_residual() const
    {
        return std::max({rate_hop1, rate_hop2, source_power, relay_power, rho_box, p_box, q_box});
    }

    HopRates hop_rates(const PrimalPoint &pt, const EigenChannel &ec)
    {
        check_dims(pt, ec, "hop_rates");
        HopRates r;
        for (std::size_t i = 0; i < ec.k1(); ++i)
            r.r1 += half_log2_1p((1.0 - pt.rho[i]) * pt.p[i] * ec.lambda_h[i]);
        for (std::size_t i = 0; i < ec.k2(); ++i)
            r.r2 += half_log2_1p(pt.q[i] * ec.lambda_g[i]);
        return r;
    }

    double harvested_power(const PrimalPoint &pt, const EigenChannel &ec, double eta)
    {
        if (pt.rho.size() != ec.k1() || pt.p.size() != ec.k1())
            throw DimensionMismatch("harvested_power: rho/p must have length K1");
        double s = 0.0;
        for (std::size_t i = 0; i < ec.k1(); ++i)
            s += pt.rho[i] * pt.p[i] * ec.lambda_h[i];
        return eta * s;
    }

    std::vector<double> waterfill(double budget, std::span<const double> gains)
    {
        if (!std::isfinite(budget))
            throw std::invalid_argument("waterfill: budget must be finite");
        std::vector<double> q(gains.size(), 0.0);
        if (budget <= 0.0 || gains.empty())
            return q;

        double inv_min = std::numeric_limits<double>::infinity();
        double inv_max = 0.0;
        for (double g : gains)
        {
            if (!(g > 0.0))
                throw std::invalid_argument("waterfill: gains must be positive");
            inv_min = std::min(inv_min, 1.0 / g);
            inv_max = std::max(inv_max, 1.0 / g);
        }

        auto filled = [&](double w)
        {
            double s = 0.0;
            for (double g : gains)
                s += std::max(w - 1.0 / g, 0.0);
            return s;
        };

        const double tol = 1e-12 * std::max(1.0, budget);
        double lo = inv_min;
        double hi = budget + inv_max;
        double w = 0.5 * (lo + hi);
        for (int it = 0; it < 200; ++it)
        {
            w = 0.5 * (lo + hi);
            const double s = filled(w);
            if (std::abs(s - budget) <= tol || w <= lo || w >= hi)
                break;
            (s < budget ? lo : hi) = w;
        }

        // Solve the level exactly on the active set found by the search. Each q_i is
        // formed from differences of inverse gains rather than as level - 1/g_i, which
        // would cancel when the level is far above the budget.
        std::vector<std::size_t> active;
        for (std::size_t i = 0; i < gains.size(); ++i)
            if (1.0 / gains[i] < w)
                active.push_back(i);
        const double count = static_cast<double>(active.size());
        for (std::size_t i : active)
        {
            double s = budget;
            for (std::size_t j : active)
                s += 1.0 / gains[j] - 1.0 / gains[i];
            q[i] = std::max(s / count, 0.0);
        }
        return q;
    }

    Precoders reconstruct_precoders(const PrimalPoint &pt, const EigenChannel &ec)
    {
        check_dims(pt, ec, "reconstruct_precoders");
        if (ec.v_h.cols() != static_cast<Eigen::Index>(ec.k1()) ||
            ec.v_g.cols() != static_cast<Eigen::Index>(ec.k2()))
            throw DimensionMismatch("reconstruct_precoders: singular vectors do not match the gains");

        const Eigen::Map<const Eigen::VectorXd> p(pt.p.data(), static_cast<Eigen::Index>(pt.p.size()));
        const Eigen::Map<const Eigen::VectorXd> q(pt.q.data(), static_cast<Eigen::Index>(pt.q.size()));

        Precoders w;
        w.w_s = ec.v_h * p.cast<std::complex<double>>().asDiagonal() * ec.v_h.adjoint();
        w.w_r = ec.v_g * q.cast<std::complex<double>>().asDiagonal() * ec.v_g.adjoint();
        return w;
    }

    FeasibilityReport check_feasibility(const PrimalPoint &pt, const EigenChannel &ec, double ps)
    {
        const HopRates r = hop_rates(pt, ec);
        const double harvest = harvested_power(pt, ec, ec.eta);

        double sum_p = 0.0, sum_q = 0.0;
        FeasibilityReport rep;
        rep.rho_box = -std::numeric_limits<double>::infinity();
        rep.p_box = -std::numeric_limits<double>::infinity();
        rep.q_box = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < ec.k1(); ++i)
        {
            sum_p += pt.p[i];
            rep.rho_box = std::max({rep.rho_box, -pt.rho[i], pt.rho[i] - 1.0});
            rep.p_box = std::max(rep.p_box, -pt.p[i]);
        }
        for (double qi : pt.q)
        {
            sum_q += qi;
            rep.q_box = std::max(rep.q_box, -qi);
        }

        rep.rate_hop1 = pt.rate - r.r1;
        rep.rate_hop2 = pt.rate - r.r2;
        rep.source_power = (sum_p - ps) / std::max(1.0, ps);
        rep.relay_power = (sum_q - harvest) / std::max(1.0, harvest);
        return rep;
    }

    void refresh_rate(PrimalPoint &pt, const EigenChannel &ec)
    {
        pt.rate = hop_rates(pt, ec).min();
    }
}

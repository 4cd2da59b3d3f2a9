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

#include "swipt/duals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "swipt/errors.hpp"

namespace swipt
{
    std::vector<double> p_from_dual(const DualPoint &d, std::span<const double> rho, const EigenChannel &ec)
    {
        if (rho.size() != ec.k1())
            throw DimensionMismatch("p_from_dual: rho must have length K1");

        std::vector<double> p(ec.k1());
        for (std::size_t i = 0; i < ec.k1(); ++i)
        {
            const double lam = ec.lambda_h[i];
            const double den = 2.0 * d.nu - 2.0 * d.mu * ec.eta * rho[i] * lam;
            if (!(den > 0.0))
                throw UnboundedLagrangian("p_from_dual: 2 nu - 2 mu rho_i lambda_i <= 0",
                                          {0.0, -1.0, ec.eta * rho[i] * lam});
            p[i] = std::max(d.alpha / den - 1.0 / ((1.0 - rho[i]) * lam), 0.0);
        }
        return p;
    }

    std::vector<double> q_from_dual(const DualPoint &d, const EigenChannel &ec)
    {
        std::vector<double> q(ec.k2(), 0.0);
        if (!(d.mu > 0.0))
        {
            if (d.alpha < 1.0)
                throw UnboundedLagrangian("q_from_dual: mu = 0 leaves relay power unpriced", {0.0, 0.0, -1.0});
            return q;
        }
        const double level = (1.0 - d.alpha) / (2.0 * d.mu);
        for (std::size_t i = 0; i < ec.k2(); ++i)
            q[i] = std::max(level - 1.0 / ec.lambda_g[i], 0.0);
        return q;
    }

    std::vector<double> rho_from_dual(const DualPoint &d, std::span<const double> p, const EigenChannel &ec,
                                      double eps)
    {
        if (p.size() != ec.k1())
            throw DimensionMismatch("rho_from_dual: p must have length K1");

        // alpha / (2 mu eta), the information-decoding water level.
        const double den = 2.0 * d.mu * ec.eta;
        double level;
        if (den > 0.0)
            level = d.alpha / den;
        else
            level = d.alpha > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;

        std::vector<double> rho(ec.k1());
        for (std::size_t i = 0; i < ec.k1(); ++i)
        {
            double r = 1.0 - eps;
            if (p[i] > 0.0)
                r = 1.0 - (level - 1.0) / (p[i] * ec.lambda_h[i]);
            rho[i] = std::clamp(r, eps, 1.0 - eps);
        }
        return rho;
    }

    namespace
    {
        struct Sums
        {
            double r1_nats = 0.0;
            double r2_nats = 0.0;
            double sum_p = 0.0;
            double sum_q = 0.0;
            double harvest = 0.0;
        };

        Sums sums(const PrimalPoint &pt, const EigenChannel &ec)
        {
            Sums s;
            for (std::size_t i = 0; i < ec.k1(); ++i)
            {
                const double lp = pt.p[i] * ec.lambda_h[i];
                if (lp > 0.0)
                    s.r1_nats += 0.5 * std::log1p((1.0 - pt.rho[i]) * lp);
                s.sum_p += pt.p[i];
                s.harvest += pt.rho[i] * lp;
            }
            s.harvest *= ec.eta;
            for (std::size_t i = 0; i < ec.k2(); ++i)
            {
                if (pt.q[i] > 0.0)
                    s.r2_nats += 0.5 * std::log1p(pt.q[i] * ec.lambda_g[i]);
                s.sum_q += pt.q[i];
            }
            return s;
        }

        double lagrangian_nats(const Sums &s, const DualPoint &d, double ps)
        {
            return d.alpha * s.r1_nats + (1.0 - d.alpha) * s.r2_nats - d.nu * (s.sum_p - ps) -
                   d.mu * (s.sum_q - s.harvest);
        }

        void finish(const DualPoint &d, double ps, const EigenChannel &ec, DualEval &ev)
        {
            constexpr double ln2 = std::numbers::ln2;
            const Sums s = sums(ev.primal, ec);

            ev.value = lagrangian_nats(s, d, ps) / ln2;
            ev.subgrad = {(s.r1_nats - s.r2_nats) / ln2, (ps - s.sum_p) / ln2, (s.harvest - s.sum_q) / ln2};
            ev.r1 = s.r1_nats / ln2;
            ev.r2 = s.r2_nats / ln2;
            ev.primal.rate = std::min(ev.r1, ev.r2);
        }

        void require_box(const DualPoint &d, const char *who)
        {
            if (!d.in_box())
                throw std::invalid_argument(std::string(who) + ": dual point outside alpha in [0,1], nu, mu >= 0");
        }

        void require_domain(const DualPoint &d, const EigenChannel &ec, double rho_max)
        {
            if (auto cut = dual_domain_cut(d, ec, rho_max))
                throw UnboundedLagrangian((*cut)[2] == -1.0 ? "eval_dual: mu = 0 leaves relay power unpriced"
                                                             : "eval_dual: harvesting pays more than source power costs",
                                          *cut);
        }
    }

    // sup over p is finite only if nu > mu eta rho lambda_max; sup over q needs mu > 0.
    // A relative margin keeps 1 / (nu - mu eta rho lambda) finite after rounding.
    std::optional<std::array<double, 3>> dual_domain_cut(const DualPoint &d, const EigenChannel &ec, double rho_max)
    {
        if (!(d.mu > 0.0) && d.alpha < 1.0)
            return std::array<double, 3>{0.0, 0.0, -1.0};
        const double slope = ec.eta * rho_max * ec.lambda_h.front();
        if (!(d.nu - d.mu * slope > kDomainMargin * d.nu))
            return std::array<double, 3>{0.0, -1.0, slope};
        return std::nullopt;
    }

    double lagrangian(const PrimalPoint &pt, const DualPoint &d, const EigenChannel &ec, double ps)
    {
        if (pt.rho.size() != ec.k1() || pt.p.size() != ec.k1() || pt.q.size() != ec.k2())
            throw DimensionMismatch("lagrangian: rho/p must have length K1 and q length K2");
        return lagrangian_nats(sums(pt, ec), d, ps) / std::numbers::ln2;
    }

    void eval_dual_into(const DualPoint &d, const EigenChannel &ec, double ps, std::optional<double> pinned_rho,
                        double eps, DualEval &out)
    {
        require_box(d, pinned_rho ? "eval_dual_fixed_rho" : "eval_dual");
        require_domain(d, ec, pinned_rho.value_or(1.0 - eps));

        PrimalPoint &pt = out.primal;
        const std::size_t k1 = ec.k1();
        pt.rho.resize(k1);
        pt.p.resize(k1);
        pt.q.resize(ec.k2());

        // Inside the domain every p denominator is positive.
        for (std::size_t i = 0; i < k1; ++i)
        {
            const double lam = ec.lambda_h[i];
            const double r = pinned_rho ? *pinned_rho : (d.nu - d.mu * ec.eta * lam >= 0.0 ? eps : 1.0 - eps);
            pt.rho[i] = r;
            pt.p[i] = std::max(d.alpha / (2.0 * d.nu - 2.0 * d.mu * ec.eta * r * lam) - 1.0 / ((1.0 - r) * lam), 0.0);
        }
        const double level = d.mu > 0.0 ? (1.0 - d.alpha) / (2.0 * d.mu) : 0.0;
        for (std::size_t i = 0; i < ec.k2(); ++i)
            pt.q[i] = std::max(level - 1.0 / ec.lambda_g[i], 0.0);
        finish(d, ps, ec, out);
    }

    DualEval eval_dual(const DualPoint &d, const EigenChannel &ec, double ps, double eps)
    {
        DualEval ev;
        eval_dual_into(d, ec, ps, std::nullopt, eps, ev);
        return ev;
    }

    DualEval eval_dual_fixed_rho(const DualPoint &d, const EigenChannel &ec, double ps, double rho)
    {
        DualEval ev;
        eval_dual_into(d, ec, ps, rho, kRhoClamp, ev);
        return ev;
    }
}

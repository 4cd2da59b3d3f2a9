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

#include "swipt/ellipsoid.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "swipt/errors.hpp"

namespace swipt
{
    EllipsoidState ellipsoid_cut(const EllipsoidState &state, const Eigen::Vector3d &g)
    {
        constexpr double n = 3.0;
        const Eigen::Vector3d pg = state.shape * g;
        const double gpg = g.dot(pg);
        if (!(gpg > 0.0) || !std::isfinite(gpg))
            throw DegenerateCut("ellipsoid_cut: g^T P g is not positive");

        const Eigen::Vector3d step = pg / std::sqrt(gpg); // P g~
        EllipsoidState next;
        next.center = state.center - step / (n + 1.0);
        next.shape = (n * n / (n * n - 1.0)) * (state.shape - (2.0 / (n + 1.0)) * step * step.transpose());
        next.shape = 0.5 * (next.shape + next.shape.transpose()).eval();
        next.iter = state.iter + 1;
        return next;
    }

    const char *to_string(CutKind kind)
    {
        return kind == CutKind::Objective ? "objective" : "feasibility";
    }

    void SolverConfig::validate() const
    {
        if (!(eps0 > 0.0))
            throw std::invalid_argument("SolverConfig: eps0 must be > 0");
        if (!(eps_rho > 0.0 && eps_rho < 0.5))
            throw std::invalid_argument("SolverConfig: eps_rho must lie in (0, 0.5)");
        if (max_iter < 1)
            throw std::invalid_argument("SolverConfig: max_iter must be >= 1");
        if (init_radius && !(init_radius->minCoeff() > 0.0))
            throw std::invalid_argument("SolverConfig: init_radius must be positive");
    }

    namespace
    {
        using Clock = std::chrono::steady_clock;

        double half_ln_sum(const std::vector<double> &x, std::span<const double> gains)
        {
            double s = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i)
                s += 0.5 * std::log1p(x[i] * gains[i]);
            return s;
        }

        // Splitting policy shared by solve() and solve_fixed_rho().
        struct Policy
        {
            bool pinned = false;
            double rho = 0.0; // pinned value
            double eps = kRhoClamp;

            double rho_max() const { return pinned ? rho : 1.0 - eps; }

            void eval(const DualPoint &d, const EigenChannel &ec, double ps, DualEval &out) const
            {
                eval_dual_into(d, ec, ps, pinned ? std::optional<double>(rho) : std::nullopt, eps, out);
            }
        };

        // Upper bound (nats) on the optimal rate: hop 1 with the whole budget for
        // decoding, hop 2 with the whole budget harvested on the strongest mode.
        double rate_upper_bound(const EigenChannel &ec, double ps, const Policy &pol)
        {
            std::vector<double> g1(ec.lambda_h);
            const double id_share = pol.pinned ? 1.0 - pol.rho : 1.0;
            for (double &x : g1)
                x *= id_share;
            const double r1 = half_ln_sum(waterfill(ps, g1), g1);
            const double h = ec.eta * pol.rho_max() * ec.lambda_h.front() * ps;
            const double r2 = half_ln_sum(waterfill(h, ec.lambda_g), ec.lambda_g);
            return std::min(r1, r2);
        }

        // Relay power follows the harvest exactly, allocated by water-filling.
        void fill_relay(PrimalPoint &pt, const EigenChannel &ec)
        {
            pt.q = waterfill(harvested_power(pt, ec, ec.eta), ec.lambda_g);
        }

        // Moves the splitting ratio of mode j until both hop rates agree (or a clamp
        // bound is reached); R1 falls and R2 rises monotonically in rho_j.
        void balance_mode(PrimalPoint &pt, const EigenChannel &ec, std::size_t j, double eps)
        {
            auto excess = [&](double r)
            {
                pt.rho[j] = r;
                fill_relay(pt, ec);
                const HopRates hr = hop_rates(pt, ec);
                return hr.r1 - hr.r2;
            };

            double a = eps, b = 1.0 - eps;
            double fa = excess(a);
            if (fa <= 0.0 || !(pt.p[j] > 0.0))
                return;
            double fb = excess(b);
            if (fb >= 0.0)
                return;

            // Illinois variant of regula falsi on [a, b], f(a) > 0 > f(b).
            int side = 0;
            for (int it = 0; it < 100; ++it)
            {
                const double c = b - fb * (b - a) / (fb - fa);
                const double fc = excess(c);
                if (fc == 0.0 || std::abs(b - a) <= 1e-15)
                    return;
                if ((fc > 0.0) == (fa > 0.0))
                {
                    a = c;
                    fa = fc;
                    if (side == -1)
                        fb *= 0.5;
                    side = -1;
                }
                else
                {
                    b = c;
                    fb = fc;
                    if (side == 1)
                        fa *= 0.5;
                    side = 1;
                }
                if (std::abs(fc) <= 1e-13)
                    break;
            }
            // Settle on the bracket end with the larger end-to-end rate.
            const double fa_true = excess(a);
            const PrimalPoint at_a = pt;
            const double fb_true = excess(b);
            const double ra = fa_true > 0.0 ? hop_rates(at_a, ec).r2 : hop_rates(at_a, ec).r1;
            const double rb = fb_true > 0.0 ? hop_rates(pt, ec).r2 : hop_rates(pt, ec).r1;
            if (ra > rb)
                pt = at_a;
        }

        // Source powers maximizing R1 for a given harvest floor, spending the whole
        // budget: p_i = (a_i w - 1 / c_i)^+ with c_i = (1 - rho) lambda_i and weights
        // a_i = 1 / (1 - s lambda_i / lambda_1). s = 0 is plain water-filling and
        // s -> 1 moves all power onto the strongest mode.
        void frontier_p(std::vector<double> &p, double s, double rho, const EigenChannel &ec, double ps)
        {
            const std::size_t k1 = ec.k1();
            std::vector<bool> on(k1, true);
            for (std::size_t round = 0; round <= k1; ++round)
            {
                double inv_c = 0.0, weight = 0.0;
                for (std::size_t i = 0; i < k1; ++i)
                    if (on[i])
                    {
                        inv_c += 1.0 / ((1.0 - rho) * ec.lambda_h[i]);
                        weight += 1.0 / (1.0 - s * ec.lambda_h[i] / ec.lambda_h.front());
                    }
                const double w = (ps + inv_c) / weight;
                bool dropped = false;
                for (std::size_t i = 0; i < k1; ++i)
                {
                    const double a = 1.0 / (1.0 - s * ec.lambda_h[i] / ec.lambda_h.front());
                    p[i] = on[i] ? a * w - 1.0 / ((1.0 - rho) * ec.lambda_h[i]) : 0.0;
                    if (on[i] && p[i] <= 0.0)
                    {
                        on[i] = false;
                        dropped = true;
                    }
                }
                if (!dropped)
                    break;
            }
            for (double &x : p)
                x = std::max(x, 0.0);
        }

        // Optimal primal point for a pinned splitting ratio. The relay rate grows
        // with the harvest alone, so the optimum lies on the frontier above; a
        // bisection on s equalizes the hop rates when the ends do not already
        // settle it.
        void balance_pinned(PrimalPoint &pt, const EigenChannel &ec, double ps)
        {
            const double rho = pt.rho.front();
            auto excess = [&](double s)
            {
                if (s >= 1.0)
                {
                    std::fill(pt.p.begin(), pt.p.end(), 0.0);
                    pt.p.front() = ps;
                }
                else
                    frontier_p(pt.p, s, rho, ec, ps);
                fill_relay(pt, ec);
                const HopRates hr = hop_rates(pt, ec);
                return hr.r1 - hr.r2;
            };

            if (excess(0.0) <= 0.0 || excess(1.0) >= 0.0)
                return;
            double a = 0.0, b = 1.0;
            for (int it = 0; it < 200 && b - a > 1e-16; ++it)
            {
                const double c = 0.5 * (a + b);
                (excess(c) > 0.0 ? a : b) = c;
            }
            // Keep the end whose worse hop is better.
            const double fa = excess(a);
            const PrimalPoint at_a = pt;
            const double fb = excess(b);
            const double ra = fa > 0.0 ? hop_rates(at_a, ec).r2 : hop_rates(at_a, ec).r1;
            const double rb = fb > 0.0 ? hop_rates(pt, ec).r2 : hop_rates(pt, ec).r1;
            if (ra > rb)
                pt = at_a;
        }

        // Primal point from the maximizer at the best dual center. Complementary
        // slackness fixes the free harvested share of the strongest mode: it takes
        // the source budget left over by the other modes, its ratio follows the
        // rho closed form, and a final 1-D adjustment of that ratio equalizes the
        // hop rates.
        PrimalPoint recover_primal(const DualPoint &d, const DualEval &ev, const EigenChannel &ec, double ps,
                                   const Policy &pol)
        {
            PrimalPoint pt = ev.primal;
            const std::size_t k1 = ec.k1();

            if (pol.pinned)
            {
                balance_pinned(pt, ec, ps);
                refresh_rate(pt, ec);
                return pt;
            }

            constexpr std::size_t j = 0;
            double others = 0.0;
            for (std::size_t i = 0; i < k1; ++i)
                if (i != j)
                    others += pt.p[i];
            if (others > ps)
            {
                for (std::size_t i = 0; i < k1; ++i)
                    if (i != j)
                        pt.p[i] *= ps / others;
                pt.p[j] = 0.0;
            }
            else
            {
                pt.p[j] = ps - others;
            }
            pt.rho[j] = rho_from_dual(d, pt.p, ec, pol.eps)[j];

            balance_mode(pt, ec, j, pol.eps);
            fill_relay(pt, ec);
            refresh_rate(pt, ec);
            return pt;
        }

        SolveResult run(const EigenChannel &ec, double ps, const SolverConfig &cfg, const Policy &pol)
        {
            const auto t0 = Clock::now();
            cfg.validate();
            if (ec.k1() == 0 || ec.k2() == 0)
                throw std::invalid_argument("solve: channel has no active eigenmodes");
            if (!(ps > 0.0) || !std::isfinite(ps))
                throw std::invalid_argument("solve: source budget must be positive and finite");

            SolveResult res;
            auto elapsed = [&]
            { return std::max(std::chrono::duration<double>(Clock::now() - t0).count(), 1e-9); };

            const double slope = ec.eta * pol.rho_max() * ec.lambda_h.front();
            const double u = rate_upper_bound(ec, ps, pol);
            if (!(slope > 0.0) || !(u > 0.0))
            {
                // Nothing can be harvested (or sent): the optimum is R = 0.
                res.primal.rho.assign(ec.k1(), pol.rho_max());
                res.primal.p = waterfill(ps, ec.lambda_h);
                res.primal.q.assign(ec.k2(), 0.0);
                res.converged = true;
                res.wall_time = elapsed();
                return res;
            }

            // nu* <= g(d*) / P_s <= u / P_s because the Lagrangian at p = q = 0 is
            // nu P_s; mu* < nu* / slope by the domain of the dual function.
            const double nu_max = u / ps;
            const double mu_max = nu_max / slope;
            EllipsoidState state;
            state.center = cfg.init_center.value_or(Eigen::Vector3d(0.5, 0.5 * nu_max, 0.5 * mu_max));
            const Eigen::Vector3d radius =
                cfg.init_radius.value_or(std::sqrt(3.0) * Eigen::Vector3d(0.5, 0.5 * nu_max, 0.5 * mu_max));
            state.shape = radius.cwiseProduct(radius).asDiagonal();

            DualEval best, cur;
            DualPoint best_d;
            bool have_best = false;
            bool width_ok = false;
            int it = 0;
            for (; it < cfg.max_iter; ++it)
            {
                const Eigen::Vector3d &c = state.center;
                const DualPoint d{c(0), c(1), c(2)};
                Eigen::Vector3d g;
                CutKind kind = CutKind::Feasibility;
                double value = std::numeric_limits<double>::quiet_NaN();

                if (d.alpha < 0.0)
                    g = {-1.0, 0.0, 0.0};
                else if (d.alpha > 1.0)
                    g = {1.0, 0.0, 0.0};
                else if (d.nu < 0.0)
                    g = {0.0, -1.0, 0.0};
                else if (d.mu < 0.0)
                    g = {0.0, 0.0, -1.0};
                else if (auto cut = dual_domain_cut(d, ec, pol.rho_max()))
                    g = {(*cut)[0], (*cut)[1], (*cut)[2]};
                else
                {
                    try
                    {
                        pol.eval(d, ec, ps, cur);
                        kind = CutKind::Objective;
                        value = cur.value;
                        g = {cur.subgrad[0], cur.subgrad[1], cur.subgrad[2]};
                        if (!have_best || cur.value < best.value)
                        {
                            std::swap(best, cur);
                            best_d = d;
                            have_best = true;
                        }
                    }
                    catch (const UnboundedLagrangian &e)
                    {
                        g = {e.cut[0], e.cut[1], e.cut[2]};
                    }
                }

                const double width = std::sqrt(std::max(g.dot(state.shape * g), 0.0));
                if (kind == CutKind::Objective && (width <= cfg.eps0 || g.isZero(0.0)))
                {
                    width_ok = true;
                    break;
                }

                const double det_before = cfg.trace ? state.shape.determinant() : 0.0;
                try
                {
                    state = ellipsoid_cut(state, g);
                }
                catch (const DegenerateCut &e)
                {
                    res.message = e.what();
                    break;
                }
                if (cfg.trace)
                    cfg.trace({it, d, kind, value, width, det_before, state.shape.determinant()});
            }
            res.iters = it;

            if (!have_best)
            {
                res.primal.rho.assign(ec.k1(), pol.rho_max());
                res.primal.p.assign(ec.k1(), 0.0);
                res.primal.q.assign(ec.k2(), 0.0);
                res.dual_value = std::numeric_limits<double>::infinity();
                res.gap = std::numeric_limits<double>::infinity();
                if (res.message.empty())
                    res.message = "no dual point inside the domain was found";
                res.wall_time = elapsed();
                return res;
            }

            res.primal = recover_primal(best_d, best, ec, ps, pol);
            res.dual = best_d;
            res.dual_value = best.value;
            res.gap = std::abs(best.value - res.primal.rate);
            const bool feasible = check_feasibility(res.primal, ec, ps).feasible();
            res.converged = width_ok && feasible && res.gap <= 10.0 * cfg.eps0;
            if (!res.converged && res.message.empty())
            {
                if (!width_ok)
                    res.message = "iteration limit reached";
                else if (!feasible)
                    res.message = "recovered primal point is infeasible";
                else
                    res.message = "duality gap above tolerance";
            }
            res.wall_time = elapsed();
            return res;
        }
    }

    SolveResult solve(const EigenChannel &ec, double ps, const SolverConfig &cfg)
    {
        return run(ec, ps, cfg, Policy{false, 0.0, cfg.eps_rho});
    }

    SolveResult solve_fixed_rho(const EigenChannel &ec, double ps, double rho_fixed, const SolverConfig &cfg)
    {
        if (!(rho_fixed > 0.0 && rho_fixed < 1.0))
            throw std::invalid_argument("solve_fixed_rho: rho must lie in (0, 1)");
        return run(ec, ps, cfg, Policy{true, rho_fixed, cfg.eps_rho});
    }
}

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

#include "swipt/baselines.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "parallel.hpp"
#include "swipt/errors.hpp"

namespace swipt
{
    void OracleConfig::validate() const
    {
        if (rho_grid < 3 || p_grid < 3)
            throw std::invalid_argument("OracleConfig: grids need at least 3 points");
        if (refine_rounds < 0)
            throw std::invalid_argument("OracleConfig: refine_rounds must be >= 0");
    }

    namespace
    {
        using Clock = std::chrono::steady_clock;

        double seconds_since(Clock::time_point t0)
        {
            return std::max(std::chrono::duration<double>(Clock::now() - t0).count(), 1e-9);
        }

        double half_log2_sum(const std::vector<double> &x, const std::vector<double> &gains)
        {
            double s = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i)
                s += 0.5 * std::log1p(x[i] * gains[i]);
            return s / std::numbers::ln2;
        }

        void require_instance(const EigenChannel &ec, double ps, const char *who)
        {
            if (ec.k1() == 0 || ec.k2() == 0)
                throw std::invalid_argument(std::string(who) + ": channel has no active eigenmodes");
            if (!(ps > 0.0) || !std::isfinite(ps))
                throw std::invalid_argument(std::string(who) + ": source budget must be positive and finite");
        }

        // Records every inner solve and remembers the best one.
        struct UniformSearch
        {
            const EigenChannel &ec;
            double ps;
            const SolverConfig &cfg;
            UniformResult best;
            bool have = false;
            int iters = 0;
            bool all_converged = true;

            // Evaluated at logit t; rho = 1 / (1 + exp(-t)).
            double operator()(double t)
            {
                const double rho = std::clamp(1.0 / (1.0 + std::exp(-t)), cfg.eps_rho, 1.0 - cfg.eps_rho);
                SolveResult r = solve_fixed_rho(ec, ps, rho, cfg);
                iters += r.iters;
                all_converged = all_converged && r.converged;
                const double rate = r.primal.rate;
                if (!have || rate > best.result.primal.rate)
                {
                    best.result = std::move(r);
                    best.rho_star = rho;
                    have = true;
                }
                return rate;
            }
        };

        constexpr int kMaxRecentres = 50;

        constexpr double kGolden = 0.6180339887498949; // (sqrt(5) - 1) / 2

        void golden(UniformSearch &f, double a, double b, double tol)
        {
            double c = b - kGolden * (b - a);
            double d = a + kGolden * (b - a);
            double fc = f(c);
            double fd = f(d);
            while (b - a > tol)
            {
                if (fc >= fd)
                {
                    b = d;
                    d = c;
                    fd = fc;
                    c = b - kGolden * (b - a);
                    fc = f(c);
                }
                else
                {
                    a = c;
                    c = d;
                    fc = fd;
                    d = a + kGolden * (b - a);
                    fd = f(d);
                }
            }
        }

        // True when the samples rise (weakly) and then fall (weakly).
        bool unimodal(const std::vector<double> &v)
        {
            std::size_t i = 0;
            while (i + 1 < v.size() && v[i + 1] >= v[i])
                ++i;
            while (i + 1 < v.size() && v[i + 1] <= v[i])
                ++i;
            return i + 1 == v.size();
        }
    }

    UniformResult uniform_solve(const EigenChannel &ec, double ps, const SolverConfig &cfg)
    {
        const auto t0 = Clock::now();
        cfg.validate();
        require_instance(ec, ps, "uniform_solve");

        // The optimum often sits within 1e-4 of rho = 1, so the search runs in
        // t = log(rho / (1 - rho)) where both ends are resolved.
        const double hi = std::log((1.0 - cfg.eps_rho) / cfg.eps_rho);
        const double lo = -hi;
        constexpr double tol = 1e-4;
        UniformSearch f{ec, ps, cfg, {}};

        std::vector<double> scan;
        for (int k = 0; k < 5; ++k)
            scan.push_back(f(lo + k * (hi - lo) / 4.0));

        if (unimodal(scan))
        {
            golden(f, lo, hi, tol);
        }
        else
        {
            constexpr int grid = 101;
            const double step = (hi - lo) / (grid - 1);
            int best_k = 0;
            double best_v = -std::numeric_limits<double>::infinity();
            for (int k = 0; k < grid; ++k)
            {
                const double v = f(lo + k * step);
                if (v > best_v)
                {
                    best_v = v;
                    best_k = k;
                }
            }
            const double x = lo + best_k * step;
            golden(f, std::max(lo, x - step), std::min(hi, x + step), tol);
        }

        UniformResult out = std::move(f.best);
        out.result.iters = f.iters;
        out.result.converged = f.all_converged;
        out.result.wall_time = seconds_since(t0);
        return out;
    }

    SolveResult split_grid_solve(const EigenChannel &ec, double ps, int grid_points)
    {
        const auto t0 = Clock::now();
        if (grid_points < 2)
            throw std::invalid_argument("split_grid_solve: grid_points must be >= 2");
        require_instance(ec, ps, "split_grid_solve");

        constexpr double eps = kRhoClamp;
        const std::size_t k1 = ec.k1();
        std::vector<double> gains1(k1);

        SolveResult res;
        double best = -std::numeric_limits<double>::infinity();
        for (int k = 0; k < grid_points; ++k)
        {
            const double rho = eps + k * (1.0 - 2.0 * eps) / (grid_points - 1);
            for (std::size_t i = 0; i < k1; ++i)
                gains1[i] = (1.0 - rho) * ec.lambda_h[i];
            std::vector<double> p = waterfill(ps, gains1);
            double harvest = 0.0;
            for (std::size_t i = 0; i < k1; ++i)
                harvest += rho * p[i] * ec.lambda_h[i];
            harvest *= ec.eta;
            std::vector<double> q = waterfill(harvest, ec.lambda_g);

            const double rate = std::min(half_log2_sum(p, gains1), half_log2_sum(q, ec.lambda_g));
            if (rate > best)
            {
                best = rate;
                res.primal.rho.assign(k1, rho);
                res.primal.p = std::move(p);
                res.primal.q = std::move(q);
            }
        }
        refresh_rate(res.primal, ec);
        res.iters = grid_points;
        res.dual_value = std::numeric_limits<double>::quiet_NaN();
        res.gap = std::numeric_limits<double>::quiet_NaN();
        res.converged = true;
        res.wall_time = seconds_since(t0);
        return res;
    }

    namespace
    {
        // Oracle coordinates: logit(rho_i) for each mode, then the first K1 - 1
        // source-power fractions (the last mode takes the remainder).
        constexpr std::size_t kMaxCoords = 2 * kOracleMaxModes - 1;
        using Coords = std::array<double, kMaxCoords>;

        struct Axis
        {
            double lo = 0.0;
            double hi = 0.0;
            int points = 0;

            double at(int k) const { return points == 1 ? lo : lo + k * (hi - lo) / (points - 1); }
            double cell() const { return points <= 1 ? 0.0 : (hi - lo) / (points - 1); }
        };

        struct Candidate
        {
            double rate = -std::numeric_limits<double>::infinity();
            Coords x{};
        };

        class OracleGrid
        {
        public:
            OracleGrid(const EigenChannel &ec, double ps) : ec_(ec), ps_(ps), k1_(ec.k1()) {}

            std::size_t dims() const { return 2 * k1_ - 1; }

            PrimalPoint point(const Coords &x) const
            {
                PrimalPoint pt;
                pt.rho.resize(k1_);
                pt.p.resize(k1_);
                double used = 0.0;
                for (std::size_t i = 0; i < k1_; ++i)
                {
                    pt.rho[i] = std::clamp(1.0 / (1.0 + std::exp(-x[i])), kRhoClamp, 1.0 - kRhoClamp);
                    if (i + 1 < k1_)
                    {
                        pt.p[i] = ps_ * x[k1_ + i];
                        used += x[k1_ + i];
                    }
                }
                pt.p[k1_ - 1] = ps_ * std::max(1.0 - used, 0.0);
                pt.q = waterfill(harvested_power(pt, ec_, ec_.eta), ec_.lambda_g);
                refresh_rate(pt, ec_);
                return pt;
            }

            // Best point of the tensor grid spanned by `axes`; simplex points with
            // fractions summing above 1 are skipped.
            Candidate search(const std::vector<Axis> &axes) const
            {
                const std::size_t d = dims();
                const std::size_t outer = static_cast<std::size_t>(axes[0].points);
                std::vector<Candidate> partial(outer);
                detail::parallel_for(outer, [&](std::size_t i0)
                {
                    Candidate local;
                    std::array<int, kMaxCoords> idx{};
                    idx[0] = static_cast<int>(i0);
                    Coords x{};
                    while (true)
                    {
                        double frac = 0.0;
                        for (std::size_t k = 0; k < d; ++k)
                        {
                            x[k] = axes[k].at(idx[k]);
                            if (k >= k1_)
                                frac += x[k];
                        }
                        if (frac <= 1.0 + 1e-12)
                        {
                            const double rate = point(x).rate;
                            if (rate > local.rate)
                                local = {rate, x};
                        }
                        // Odometer over every axis but the first.
                        std::size_t k = 1;
                        for (; k < d; ++k)
                        {
                            if (++idx[k] < axes[k].points)
                                break;
                            idx[k] = 0;
                        }
                        if (k >= d)
                            break;
                    }
                    partial[i0] = local;
                });

                Candidate best;
                for (const Candidate &c : partial)
                    if (c.rate > best.rate)
                        best = c;
                return best;
            }

        private:
            const EigenChannel &ec_;
            double ps_;
            std::size_t k1_;
        };
    }

    PrimalPoint oracle_solve(const EigenChannel &ec, double ps, const OracleConfig &cfg)
    {
        cfg.validate();
        require_instance(ec, ps, "oracle_solve");
        if (ec.k1() > kOracleMaxModes)
            throw OracleTooLarge("oracle_solve: at most " + std::to_string(kOracleMaxModes) +
                                 " source modes are supported, got " + std::to_string(ec.k1()));

        const std::size_t k1 = ec.k1();
        const double logit_max = std::log((1.0 - kRhoClamp) / kRhoClamp);

        OracleGrid grid(ec, ps);
        std::vector<Axis> axes(grid.dims());
        for (std::size_t k = 0; k < axes.size(); ++k)
            axes[k] = k < k1 ? Axis{-logit_max, logit_max, cfg.rho_grid} : Axis{0.0, 1.0, cfg.p_grid};

        auto domain = [&](std::size_t k) { return k < k1 ? Axis{-logit_max, logit_max, 0} : Axis{0.0, 1.0, 0}; };

        Candidate best = grid.search(axes);
        for (int round = 0; round < cfg.refine_rounds; ++round)
        {
            // One cell of the previous grid either side of the incumbent, same point
            // count. While the incumbent lands on an interior window edge the window
            // follows it, so a pass can travel along the ridge R1 = R2.
            const std::vector<Axis> prev = axes;
            for (int moves = 0; moves < kMaxRecentres; ++moves)
            {
                for (std::size_t k = 0; k < axes.size(); ++k)
                {
                    const double h = prev[k].cell();
                    axes[k] = Axis{std::max(domain(k).lo, best.x[k] - h), std::min(domain(k).hi, best.x[k] + h),
                                   prev[k].points};
                }
                const Candidate c = grid.search(axes);
                if (!(c.rate > best.rate))
                    break;
                best = c;
                bool on_edge = false;
                for (std::size_t k = 0; k < axes.size(); ++k)
                {
                    const bool at_lo = best.x[k] <= axes[k].lo && axes[k].lo > domain(k).lo;
                    const bool at_hi = best.x[k] >= axes[k].hi && axes[k].hi < domain(k).hi;
                    on_edge = on_edge || at_lo || at_hi;
                }
                if (!on_edge)
                    break;
            }
        }
        return grid.point(best.x);
    }
}

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

#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "swipt/channel.hpp"
#include "swipt/rates.hpp"

namespace swipt
{
    // Splitting ratios are kept inside [eps, 1 - eps].
    inline constexpr double kRhoClamp = 1e-6;

    // Relative distance from the boundary of the dual domain below which a point
    // is treated as outside it.
    inline constexpr double kDomainMargin = 1e-9;

    // Multipliers of the hop-1 rate constraint (alpha; the hop-2 multiplier is
    // 1 - alpha), the source power budget (nu) and the harvest budget (mu).
    //
    // The closed-form maps below are the stationarity conditions of the Lagrangian
    // written with natural-log rates, so nu and mu are measured in nats per unit
    // power. Dual values and subgradients are reported in bits (divided by ln 2).
    struct DualPoint
    {
        double alpha = 0.5;
        double nu = 0.0;
        double mu = 0.0;

        bool in_box() const { return alpha >= 0.0 && alpha <= 1.0 && nu >= 0.0 && mu >= 0.0; }
    };

    struct DualEval
    {
        double value = 0.0;               // g(alpha, nu, mu) in bps/Hz
        std::array<double, 3> subgrad{};  // d value / d(alpha, nu, mu)
        PrimalPoint primal;               // maximizer of the Lagrangian
        double r1 = 0.0;
        double r2 = 0.0;
    };

    // p_i = (alpha / (2 nu - 2 mu eta rho_i lambda_i) - 1 / ((1 - rho_i) lambda_i))^+.
    // Throws UnboundedLagrangian when a denominator is not positive.
    std::vector<double> p_from_dual(const DualPoint &d, std::span<const double> rho, const EigenChannel &ec);

    // q_i = ((1 - alpha) / (2 mu) - 1 / lambda_G,i)^+, water-filling at a common level.
    // Throws UnboundedLagrangian for mu <= 0 with alpha < 1.
    std::vector<double> q_from_dual(const DualPoint &d, const EigenChannel &ec);

    // rho_i = 1 - (alpha / (2 mu eta) - 1) / (p_i lambda_i), clamped to [eps, 1 - eps];
    // modes without source power are harvest-only (1 - eps).
    std::vector<double> rho_from_dual(const DualPoint &d, std::span<const double> p, const EigenChannel &ec,
                                      double eps = kRhoClamp);

    // Feasibility cut for points outside the domain of the dual function (where the
    // Lagrangian is unbounded above), or nullopt inside it. rho_max is the largest
    // splitting ratio the inner maximization may use.
    std::optional<std::array<double, 3>> dual_domain_cut(const DualPoint &d, const EigenChannel &ec,
                                                         double rho_max);

    // Lagrangian value in bps/Hz at an arbitrary primal point.
    double lagrangian(const PrimalPoint &pt, const DualPoint &d, const EigenChannel &ec, double ps);

    // Dual function and its subgradient. The inner maximization runs over
    // rho_i in [eps, 1 - eps], p >= 0, q >= 0 and is solved exactly: the Lagrangian
    // is linear in the harvested share rho_i p_i, so each rho_i sits at a clamp
    // bound chosen by the sign of nu - mu eta lambda_i, and p, q follow from the
    // closed forms. Throws UnboundedLagrangian outside the dual domain.
    DualEval eval_dual(const DualPoint &d, const EigenChannel &ec, double ps, double eps = kRhoClamp);

    // Same with every rho_i pinned to `rho` (uniform power splitting).
    DualEval eval_dual_fixed_rho(const DualPoint &d, const EigenChannel &ec, double ps, double rho);

    // Allocation-free form of the two evaluations above for iterative callers:
    // `out` is overwritten and its vectors reused. A pinned_rho selects the
    // uniform-splitting variant.
    void eval_dual_into(const DualPoint &d, const EigenChannel &ec, double ps, std::optional<double> pinned_rho,
                        double eps, DualEval &out);
}

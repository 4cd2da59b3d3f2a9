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

#include <span>
#include <vector>

#include "swipt/channel.hpp"

namespace swipt
{
    // Absolute tolerance on rate residuals (bps/Hz) and relative tolerance on the
    // power-budget residuals reported by check_feasibility().
    inline constexpr double kFeasibilityTol = 1e-8;

    // Candidate solution in the eigenmode domain: per-mode power-splitting ratios
    // and source powers (length K1), relay powers (length K2), and the achieved
    // end-to-end rate in bps/Hz.
    struct PrimalPoint
    {
        std::vector<double> rho;
        std::vector<double> p;
        std::vector<double> q;
        double rate = 0.0;
    };

    struct HopRates
    {
        double r1 = 0.0;
        double r2 = 0.0;

        double min() const { return r1 < r2 ? r1 : r2; }
    };

    struct Precoders
    {
        ComplexMatrix w_s;
        ComplexMatrix w_r;
    };

    // Signed constraint residuals; a constraint holds when its residual is <= 0.
    // Power residuals are divided by max(1, budget).
    struct FeasibilityReport
    {
        double rate_hop1 = 0.0;    // R - R1
        double rate_hop2 = 0.0;    // R - R2
        double source_power = 0.0; // sum p - P_s
        double relay_power = 0.0;  // sum q - eta * sum rho p lambda_H
        double rho_box = 0.0;      // max(-rho_i, rho_i - 1)
        double p_box = 0.0;        // max(-p_i)
        double q_box = 0.0;        // max(-q_i)

        double max_residual() const;
        bool feasible(double tol = kFeasibilityTol) const { return max_residual() <= tol; }
    };

    HopRates hop_rates(const PrimalPoint &pt, const EigenChannel &ec);

    double harvested_power(const PrimalPoint &pt, const EigenChannel &ec, double eta);

    // Water-filling: q_i = (w - 1/gains_i)^+ with sum q = budget. The level w is
    // bracketed by bisection until the active set is fixed, then solved exactly.
    std::vector<double> waterfill(double budget, std::span<const double> gains);

    Precoders reconstruct_precoders(const PrimalPoint &pt, const EigenChannel &ec);

    FeasibilityReport check_feasibility(const PrimalPoint &pt, const EigenChannel &ec, double ps);

    // Sets pt.rate to min(R1, R2) recomputed from the point.
    void refresh_rate(PrimalPoint &pt, const EigenChannel &ec);
}

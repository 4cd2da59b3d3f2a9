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

#include <cstddef>

#include "swipt/channel.hpp"
#include "swipt/ellipsoid.hpp"
#include "swipt/rates.hpp"

namespace swipt
{
    struct OracleConfig
    {
        int rho_grid = 41;      // points per splitting-ratio dimension
        int p_grid = 41;        // points per simplex dimension
        int refine_rounds = 2;  // local refinement passes around the incumbent

        void validate() const;
    };

    struct UniformResult
    {
        SolveResult result;
        double rho_star = 0.0;
    };

    // Best common splitting ratio. Golden-section search over rho in
    // [eps, 1 - eps], parametrized by log(rho / (1 - rho)) and run to a bracket of
    // 1e-4 in that coordinate; each point is solved by solve_fixed_rho(). A
    // five-point scan runs first; if it is not unimodal the search falls back to a
    // 101-point grid followed by golden refinement around the best grid point.
    UniformResult uniform_solve(const EigenChannel &ec, double ps, const SolverConfig &cfg = {});

    // Decoupled heuristic: for each common ratio on a grid, water-fill the source
    // power for the first hop alone, harvest what it yields and water-fill the relay
    // power with that budget. Returns the best grid point; gap is NaN.
    SolveResult split_grid_solve(const EigenChannel &ec, double ps, int grid_points = 101);

    // Brute-force reference: exhaustive grid over per-mode splitting ratios and
    // source powers on the simplex sum p = P_s (the rate and the harvest both grow
    // with p, so the budget is always spent), relay power by water-filling, then
    // local refinement around the incumbent. Ratios are gridded uniformly in
    // log(rho / (1 - rho)) so both ends of [eps, 1 - eps] are resolved.
    // Throws OracleTooLarge for more than three source modes.
    PrimalPoint oracle_solve(const EigenChannel &ec, double ps, const OracleConfig &cfg = {});

    inline constexpr std::size_t kOracleMaxModes = 3;
}

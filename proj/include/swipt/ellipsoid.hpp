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

#include <functional>
#include <optional>
#include <string>

#include <Eigen/Dense>

#include "swipt/channel.hpp"
#include "swipt/duals.hpp"
#include "swipt/rates.hpp"

namespace swipt
{
    // Ellipsoid {x : (x - center)^T shape^{-1} (x - center) <= 1} over (alpha, nu, mu).
    struct EllipsoidState
    {
        Eigen::Vector3d center = Eigen::Vector3d::Zero();
        Eigen::Matrix3d shape = Eigen::Matrix3d::Identity();
        int iter = 0;
    };

    // Central cut keeping {x : g^T (x - center) <= 0}. The determinant of the shape
    // shrinks by exactly (9/8)^3 / 2 per cut. Throws DegenerateCut when g^T P g is
    // not positive (g = 0, or the shape lost definiteness numerically).
    EllipsoidState ellipsoid_cut(const EllipsoidState &state, const Eigen::Vector3d &g);

    enum class CutKind
    {
        Objective,
        Feasibility,
    };

    struct TraceEntry
    {
        int iter = 0;
        DualPoint dual;
        CutKind cut = CutKind::Objective;
        double value = 0.0;     // dual value, NaN for feasibility cuts
        double cut_width = 0.0; // sqrt(g^T P g) before the cut
        double det_before = 0.0;
        double det_after = 0.0;
    };

    const char *to_string(CutKind kind);

    struct SolverConfig
    {
        double eps0 = 1e-5;
        double eps_rho = kRhoClamp;
        int max_iter = 2000;
        // Overrides for the starting ellipsoid (center and semi-axes). By default the
        // ellipsoid circumscribes a box known to contain the dual optimum.
        std::optional<Eigen::Vector3d> init_center;
        std::optional<Eigen::Vector3d> init_radius;
        std::function<void(const TraceEntry &)> trace;

        void validate() const;
    };

    struct SolveResult
    {
        PrimalPoint primal;
        DualPoint dual;
        double dual_value = 0.0; // best (lowest) dual value seen, bps/Hz
        double gap = 0.0;        // |dual_value - primal.rate|
        int iters = 0;
        double wall_time = 0.0;  // seconds
        bool converged = false;
        std::string message;     // diagnostic when not converged
    };

    // Primal-dual ellipsoid solver for the non-uniform splitting problem.
    SolveResult solve(const EigenChannel &ec, double ps, const SolverConfig &cfg = {});

    // Same machinery with every splitting ratio pinned to rho_fixed.
    SolveResult solve_fixed_rho(const EigenChannel &ec, double ps, double rho_fixed, const SolverConfig &cfg = {});
}

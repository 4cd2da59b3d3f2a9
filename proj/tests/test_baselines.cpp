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

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "swipt/baselines.hpp"
#include "swipt/errors.hpp"

using namespace swipt;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{
    Instance seeded(int n, double ps_dbm, std::uint64_t seed)
    {
        const SystemParams p = SystemParams::symmetric(n, ps_dbm);
        return make_instance(generate_channels(p, seed), p);
    }
}

TEST_CASE("oracle configuration", "[baselines]")
{
    CHECK_NOTHROW(OracleConfig{}.validate());
    CHECK_THROWS_AS((OracleConfig{2, 41, 2}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((OracleConfig{41, 41, -1}.validate()), std::invalid_argument);
}

TEST_CASE("uniform splitting on a single antenna is optimal", "[baselines]")
{
    const EigenChannel ec = EigenChannel::from_gains({1.5}, {0.8});
    const UniformResult u = uniform_solve(ec, 6.0);
    const oracle::Siso want = oracle::siso_optimum(1.5, 0.8, 6.0);
    CHECK_THAT(u.result.primal.rate, WithinAbs(want.rate, 1e-4));
    CHECK_THAT(u.rho_star, WithinAbs(want.rho, 1e-3));
    CHECK(u.result.primal.rho[0] == u.rho_star);
}

TEST_CASE("uniform splitting is dominated by non-uniform splitting", "[baselines]")
{
    int strictly_below = 0;
    const int draws = 40;
    for (std::uint64_t seed = 0; seed < draws; ++seed)
    {
        const Instance inst = seeded(4, 25.0, seed);
        const double full = solve(inst.channel, inst.ps).primal.rate;
        const UniformResult u = uniform_solve(inst.channel, inst.ps);
        CHECK(u.result.primal.rate <= full + 1e-6);
        CHECK(check_feasibility(u.result.primal, inst.channel, inst.ps).feasible());
        strictly_below += u.result.primal.rate < full - 1e-6 ? 1 : 0;
    }
    CHECK(strictly_below >= 0.9 * draws);
}

TEST_CASE("split grid", "[baselines]")
{
    const double lh = 2.0, lg = 0.5, ps = 10.0;
    const EigenChannel siso = EigenChannel::from_gains({lh}, {lg});
    const SolveResult fine = split_grid_solve(siso, ps, 2001);
    const oracle::Siso want = oracle::siso_optimum(lh, lg, ps);
    CHECK_THAT(fine.primal.rho[0], WithinAbs(want.rho, 1.0 / 2000.0));
    CHECK(std::isnan(fine.gap));

    // Both ends of the grid starve one hop; the better end is the harvest-heavy one.
    const double eps = kRhoClamp;
    const double ends = std::max(std::min(oracle::half_log2((1.0 - eps) * ps * lh), oracle::half_log2(eps * ps * lh * lg)),
                                 std::min(oracle::half_log2(eps * ps * lh), oracle::half_log2((1.0 - eps) * ps * lh * lg)));
    CHECK_THAT(split_grid_solve(siso, ps, 2).primal.rate, WithinRel(ends, 1e-9));
    CHECK(ends < 2e-5);
    CHECK_THROWS_AS(split_grid_solve(siso, ps, 1), std::invalid_argument);

    for (std::uint64_t seed = 0; seed < 20; ++seed)
    {
        const Instance inst = seeded(3, 30.0, seed);
        const SolveResult s = split_grid_solve(inst.channel, inst.ps);
        const double u = uniform_solve(inst.channel, inst.ps).result.primal.rate;
        CHECK(s.primal.rate <= u + 1e-6);
        CHECK(s.primal.rate <= solve(inst.channel, inst.ps).primal.rate + 1e-6);
        CHECK(check_feasibility(s.primal, inst.channel, inst.ps).feasible());
    }
}

TEST_CASE("grid oracle", "[baselines][slow]")
{
    const EigenChannel siso = EigenChannel::from_gains({2.0}, {0.5});
    const PrimalPoint o = oracle_solve(siso, 10.0);
    const oracle::Siso want = oracle::siso_optimum(2.0, 0.5, 10.0);
    CHECK_THAT(o.rate, WithinAbs(want.rate, 1e-3));
    CHECK(std::abs(std::log(o.rho[0] / (1.0 - o.rho[0])) - std::log(want.rho / (1.0 - want.rho))) <
          2.0 * std::log((1.0 - kRhoClamp) / kRhoClamp) / 40.0);

    for (std::uint64_t seed = 0; seed < 5; ++seed)
    {
        const Instance inst = seeded(2, 30.0, seed);
        const PrimalPoint g = oracle_solve(inst.channel, inst.ps);
        CHECK(check_feasibility(g, inst.channel, inst.ps).feasible());
        const SolveResult r = solve(inst.channel, inst.ps);
        CHECK_THAT(g.rate, WithinAbs(r.primal.rate, 5e-3));
        // Grid points are feasible, so the oracle never beats the dual bound.
        CHECK(g.rate <= r.dual_value + 1e-9);
    }

    CHECK_THROWS_AS(oracle_solve(EigenChannel::from_gains({1, 1, 1, 1}, {1}), 1.0), OracleTooLarge);
}

TEST_CASE("grid oracle stays below the dual bound at every resolution", "[baselines][slow]")
{
    for (std::uint64_t seed = 0; seed < 4; ++seed)
    {
        const Instance inst = seeded(2, 30.0, seed);
        const SolveResult r = solve(inst.channel, inst.ps);
        for (const OracleConfig &cfg : {OracleConfig{21, 21, 2}, OracleConfig{41, 41, 2}})
        {
            const PrimalPoint g = oracle_solve(inst.channel, inst.ps, cfg);
            CHECK(check_feasibility(g, inst.channel, inst.ps).feasible());
            CHECK(g.rate <= r.dual_value + 1e-9);
            if (cfg.rho_grid >= OracleConfig{}.rho_grid)
                CHECK_THAT(g.rate, WithinAbs(r.primal.rate, 5e-3));
        }
    }
}

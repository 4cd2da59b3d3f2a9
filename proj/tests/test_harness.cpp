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

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "swipt/errors.hpp"
#include "swipt/harness.hpp"

using namespace swipt;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{
    bool same_except_time(const ExperimentRecord &a, const ExperimentRecord &b)
    {
        const bool gaps = (std::isnan(a.gap) && std::isnan(b.gap)) || a.gap == b.gap;
        return a.n == b.n && a.ps_dbm == b.ps_dbm && a.method == b.method && a.seed == b.seed && a.rate == b.rate &&
               a.iters == b.iters && gaps && a.converged == b.converged;
    }

    std::filesystem::path temp_path(const std::string &name)
    {
        return std::filesystem::temp_directory_path() / ("swipt_test_" + name);
    }

    std::string slurp(const std::filesystem::path &p)
    {
        std::ifstream is(p);
        std::stringstream ss;
        ss << is.rdbuf();
        return ss.str();
    }

    ExperimentConfig small_config()
    {
        ExperimentConfig cfg;
        cfg.n_values = {2, 3};
        cfg.ps_dbm_values = {25.0, 40.0};
        cfg.realizations = 4;
        cfg.base_seed = 99;
        cfg.methods = {Method::PrimalDual, Method::Uniform, Method::SplitGrid};
        return cfg;
    }
}

TEST_CASE("method and format names", "[harness]")
{
    for (Method m : {Method::PrimalDual, Method::Uniform, Method::SplitGrid, Method::Oracle})
        CHECK(parse_method(to_string(m)) == m);
    CHECK_THROWS_AS(parse_method("cvx"), std::invalid_argument);
    CHECK(parse_format("csv") == Format::Csv);
    CHECK(parse_format("jsonl") == Format::Jsonl);
    CHECK_THROWS_AS(parse_format("xml"), std::invalid_argument);
}

TEST_CASE("configuration validation", "[harness]")
{
    ExperimentConfig cfg;
    CHECK(cfg.realizations == 500);
    CHECK_NOTHROW(cfg.validate());
    cfg.realizations = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = {};
    cfg.methods.clear();
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("paired seeds and ordering", "[harness]")
{
    const ExperimentConfig cfg = small_config();
    const auto recs = run_experiment(cfg);
    REQUIRE(recs.size() == 2 * 2 * 4 * 3);

    std::size_t k = 0;
    for (int n : cfg.n_values)
        for (std::size_t pi = 0; pi < cfg.ps_dbm_values.size(); ++pi)
            for (int r = 0; r < cfg.realizations; ++r)
            {
                const std::uint64_t seed = realization_seed(cfg.base_seed, n, pi, r);
                const double pd = recs[k].rate;
                for (Method m : cfg.methods)
                {
                    const ExperimentRecord &rec = recs[k++];
                    CHECK(rec.n == n);
                    CHECK(rec.ps_dbm == cfg.ps_dbm_values[pi]);
                    CHECK(rec.method == m);
                    CHECK(rec.seed == seed);
                    CHECK(rec.wall_time > 0.0);
                    CHECK(rec.rate >= 0.0);
                    CHECK(rec.rate <= pd + 1e-6);
                }
            }
    CHECK(realization_seed(1, 2, 0, 0) != realization_seed(1, 2, 0, 1));
    CHECK(realization_seed(1, 2, 0, 0) != realization_seed(1, 2, 1, 0));
    CHECK(realization_seed(1, 2, 0, 0) != realization_seed(1, 3, 0, 0));
}

TEST_CASE("repeat and thread-count independence", "[harness]")
{
    ExperimentConfig cfg = small_config();
    cfg.realizations = 2;
    const auto a = run_experiment(cfg);
    ::setenv("SWIPT_THREADS", "1", 1);
    const auto b = run_experiment(cfg);
    ::unsetenv("SWIPT_THREADS");
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        CHECK(same_except_time(a[i], b[i]));
}

TEST_CASE("failures are captured per record", "[harness]")
{
    ExperimentConfig cfg;
    cfg.n_values = {4};
    cfg.ps_dbm_values = {30.0};
    cfg.realizations = 1;
    cfg.methods = {Method::Oracle, Method::PrimalDual};
    const auto recs = run_experiment(cfg);
    REQUIRE(recs.size() == 2);
    CHECK_FALSE(recs[0].converged);
    CHECK(recs[0].rate == 0.0);
    CHECK(recs[1].converged);
}

TEST_CASE("more source power raises the mean rate", "[harness]")
{
    ExperimentConfig cfg;
    cfg.n_values = {2};
    cfg.ps_dbm_values = {25.0, 40.0};
    cfg.realizations = 30;
    cfg.methods = {Method::PrimalDual};
    const auto rows = aggregate(run_experiment(cfg));
    REQUIRE(rows.size() == 2);
    CHECK(rows[1].mean_rate > rows[0].mean_rate);
}

TEST_CASE("aggregation", "[harness]")
{
    CHECK_THROWS_AS(aggregate({}), std::invalid_argument);

    ExperimentRecord r{2, 30.0, Method::Uniform, 1, 3.5, 0.25, 10, 0.0, true};
    auto one = aggregate({r});
    REQUIRE(one.size() == 1);
    CHECK(one[0].mean_rate == 3.5);
    CHECK(one[0].std_rate == 0.0);
    CHECK(one[0].median_wall_time == 0.25);
    CHECK(one[0].converged_fraction == 1.0);

    ExperimentRecord s = r;
    s.wall_time = 0.75;
    s.converged = false;
    auto two = aggregate({r, s});
    CHECK(two[0].std_rate == 0.0);
    CHECK(two[0].median_wall_time == 0.5);
    CHECK(two[0].converged_fraction == 0.5);

    ExperimentRecord t = r;
    t.method = Method::PrimalDual;
    t.rate = 1.5;
    auto rows = aggregate({r, t, s});
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].method == Method::PrimalDual);
    CHECK(rows[1].count == 2);
}

TEST_CASE("mean of 500 realizations agrees with 5000", "[harness][statistical][slow]")
{
    ExperimentConfig cfg;
    cfg.n_values = {2};
    cfg.ps_dbm_values = {30.0};
    cfg.methods = {Method::PrimalDual};
    cfg.realizations = 5000;
    const auto big = run_experiment(cfg);
    // The first 500 realizations form the desk-scale run.
    const std::vector<ExperimentRecord> small(big.begin(), big.begin() + 500);
    const SummaryRow b = aggregate(big)[0];
    const SummaryRow s = aggregate(small)[0];
    CHECK(std::abs(s.mean_rate - b.mean_rate) <= 3.0 * s.std_rate / std::sqrt(500.0));
}

TEST_CASE("csv and jsonl round trips", "[harness]")
{
    ExperimentConfig cfg = small_config();
    cfg.realizations = 2;
    auto recs = run_experiment(cfg);
    recs[1].gap = std::nan("");

    for (Format f : {Format::Csv, Format::Jsonl})
    {
        const auto path = temp_path(std::string("roundtrip.") + to_string(f));
        export_records(recs, path, f);
        const auto back = import_records(path, f);
        REQUIRE(back.size() == recs.size());
        for (std::size_t i = 0; i < recs.size(); ++i)
        {
            CHECK(same_except_time(recs[i], back[i]));
            CHECK(recs[i].wall_time == back[i].wall_time);
        }
        std::filesystem::remove(path);
    }
}

TEST_CASE("column order is stable", "[harness]")
{
    const auto path = temp_path("golden.csv");
    const ExperimentRecord r{4, 25.0, Method::SplitGrid, 12345, 1.25, 0.5, 101, std::nan(""), true};
    export_records({r}, path, Format::Csv);
    CHECK(slurp(path) == "n,ps_dbm,method,seed,rate,wall_time,iters,gap,converged\n"
                         "4,25,split_grid,12345,1.25,0.5,101,nan,1\n");

    export_summary({}, path, Format::Csv);
    CHECK(slurp(path) ==
          "n,ps_dbm,method,count,mean_rate,std_rate,mean_wall_time,median_wall_time,converged_fraction\n");
    std::filesystem::remove(path);
}

TEST_CASE("io errors name the path", "[harness]")
{
    const std::filesystem::path missing = "/nonexistent-dir/records.csv";
    try
    {
        export_records({}, missing, Format::Csv);
        FAIL("expected an error");
    }
    catch (const Error &e)
    {
        CHECK(std::string(e.what()).find(missing.string()) != std::string::npos);
    }
    CHECK_THROWS_AS(import_records(missing, Format::Csv), Error);

    const auto bad = temp_path("bad.csv");
    std::ofstream(bad) << "n,ps_dbm\n1,2\n";
    CHECK_THROWS_AS(import_records(bad, Format::Csv), Error);
    std::filesystem::remove(bad);
}

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
#include <filesystem>
#include <fstream>

#include "swipt/errors.hpp"
#include "swipt/serialize.hpp"

using namespace swipt;

TEST_CASE("channel matrices round-trip through JSON", "[serialize]")
{
    const SystemParams p = SystemParams::symmetric(3, 30.0);
    const ChannelMatrices ch = generate_channels(p, 8);
    const Json j = to_json(ch);
    CHECK(j["h"].size() == 3);
    CHECK(j["h"][0][0].size() == 2);
    const ChannelMatrices back = channel_from_json(Json::parse(j.dump()));
    CHECK(back.h == ch.h);
    CHECK(back.g == ch.g);
}

TEST_CASE("malformed channel JSON is rejected", "[serialize]")
{
    CHECK_THROWS_AS(channel_from_json(Json::parse(R"({"h": [[[1, 0]]]})")), Error);
    CHECK_THROWS_AS(channel_from_json(Json::parse(R"({"h": [[[1, 0], [2]]], "g": [[[1, 0]]]})")), Error);
    CHECK_THROWS_AS(channel_from_json(Json::parse(R"({"h": [[[1, 0]], [[1, 0], [1, 0]]], "g": [[[1, 0]]]})")),
                    Error);
    CHECK_THROWS_AS(channel_from_json(Json::parse(R"({"h": [[[1, 0]]], "g": [[[1, 0], [1, 0]]]})")),
                    DimensionMismatch);
    CHECK_THROWS_AS(load_channel_file("/nonexistent/channel.json"), Error);
}

TEST_CASE("non-finite numbers become null", "[serialize]")
{
    SolveResult r;
    r.gap = std::nan("");
    r.dual_value = INFINITY;
    const Json j = to_json(r);
    CHECK(j["gap"].is_null());
    CHECK(j["dual_value"].is_null());
    CHECK(j["converged"] == false);

    ExperimentRecord rec{2, 25.0, Method::Uniform, 7, 1.0, 0.1, 3, std::nan(""), true};
    const ExperimentRecord back = record_from_json(Json::parse(to_json(rec).dump()));
    CHECK(std::isnan(back.gap));
    CHECK(back.seed == 7);
    CHECK(back.method == Method::Uniform);
}

TEST_CASE("system parameters from JSON", "[serialize]")
{
    const SystemParams p = params_from_json(Json::parse(R"({"eta": 0.5, "d_rd": 5, "sigma_r_sq": 2e-10})"));
    CHECK(p.eta == 0.5);
    CHECK(p.d_rd == 5.0);
    CHECK(p.sigma_r_sq.value() == 2e-10);
    CHECK(p.gamma == 3.2);
    CHECK_THROWS_AS(params_from_json(Json::parse(R"({"etta": 0.5})")), Error);
    CHECK_THROWS_AS(params_from_json(Json::parse(R"({"n_s": 1.5})")), Error);
    const Json round = to_json(p);
    CHECK(params_from_json(round).d_rd == 5.0);
}

TEST_CASE("experiment configuration files", "[serialize]")
{
    const auto path = std::filesystem::temp_directory_path() / "swipt_test_config.json";
    std::ofstream(path) << R"({"n_values": [2, 8], "ps_dbm_values": [30], "realizations": 7,
                               "base_seed": 5, "methods": ["primal_dual", "split_grid"],
                               "oracle": {"rho_grid": 11}, "params": {"eta": 0.9}})";
    const ExperimentConfig cfg = load_experiment_config(path);
    CHECK(cfg.n_values == std::vector<int>{2, 8});
    CHECK(cfg.ps_dbm_values == std::vector<double>{30.0});
    CHECK(cfg.realizations == 7);
    CHECK(cfg.base_seed == 5);
    CHECK(cfg.methods == std::vector<Method>{Method::PrimalDual, Method::SplitGrid});
    CHECK(cfg.oracle.rho_grid == 11);
    CHECK(cfg.oracle.p_grid == 41);
    CHECK(cfg.params.eta == 0.9);

    std::ofstream(path) << R"({"realisations": 7})";
    CHECK_THROWS_AS(load_experiment_config(path), Error);
    std::ofstream(path) << "{not json";
    CHECK_THROWS_AS(load_experiment_config(path), Error);
    std::filesystem::remove(path);
}

TEST_CASE("trace entries", "[serialize]")
{
    TraceEntry t;
    t.iter = 3;
    t.cut = CutKind::Feasibility;
    t.value = std::nan("");
    const Json j = to_json(t);
    CHECK(j["iter"] == 3);
    CHECK(j["cut"] == "feasibility");
    CHECK(j["value"].is_null());
}

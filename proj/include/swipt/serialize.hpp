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

#include <filesystem>

#include <json.hpp>

#include "swipt/channel.hpp"
#include "swipt/duals.hpp"
#include "swipt/ellipsoid.hpp"
#include "swipt/harness.hpp"
#include "swipt/rates.hpp"

// JSON forms of the public types. Non-finite doubles are written as null and
// read back as NaN. Complex matrices are row-major arrays of [re, im] pairs.
// Readers throw swipt::Error with the offending key on malformed input.
namespace swipt
{
    using Json = nlohmann::json;

    Json to_json(const ComplexMatrix &m);
    ComplexMatrix complex_matrix_from_json(const Json &j, const char *name);

    Json to_json(const ChannelMatrices &ch);
    ChannelMatrices channel_from_json(const Json &j);
    // Reads a channel file: {"h": ..., "g": ...}.
    ChannelMatrices load_channel_file(const std::filesystem::path &path);

    Json to_json(const SystemParams &p);
    // Missing keys keep the values already in `base`.
    SystemParams params_from_json(const Json &j, SystemParams base = {});

    Json to_json(const PrimalPoint &pt);
    Json to_json(const DualPoint &d);
    Json to_json(const DualEval &ev);
    Json to_json(const SolveResult &r);
    Json to_json(const TraceEntry &t);

    Json to_json(const ExperimentRecord &r);
    ExperimentRecord record_from_json(const Json &j);
    Json to_json(const SummaryRow &s);

    // Experiment configuration file. Recognized keys: n_values, ps_dbm_values,
    // realizations, base_seed, methods, split_grid_points, eps0, max_iter,
    // oracle {rho_grid, p_grid, refine_rounds}, params {...}. Unknown keys are
    // rejected.
    ExperimentConfig experiment_config_from_json(const Json &j, ExperimentConfig base = {});
    ExperimentConfig load_experiment_config(const std::filesystem::path &path, ExperimentConfig base = {});
}

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

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "swipt/baselines.hpp"
#include "swipt/channel.hpp"
#include "swipt/ellipsoid.hpp"

namespace swipt
{
    enum class Method
    {
        PrimalDual,
        Uniform,
        SplitGrid,
        Oracle,
    };

    const char *to_string(Method m);
    // Accepts primal_dual, uniform, split_grid, oracle. Throws std::invalid_argument.
    Method parse_method(std::string_view name);

    struct ExperimentConfig
    {
        SystemParams params;              // geometry, noise and efficiency; antenna counts come from n_values
        std::vector<int> n_values{2, 4, 6};
        std::vector<double> ps_dbm_values{25.0, 40.0};
        int realizations = 500;
        std::uint64_t base_seed = 0;
        std::vector<Method> methods{Method::PrimalDual, Method::Uniform};
        SolverConfig solver;
        int split_grid_points = 101;
        OracleConfig oracle;

        void validate() const;
    };

    struct ExperimentRecord
    {
        int n = 0;
        double ps_dbm = 0.0;
        Method method = Method::PrimalDual;
        std::uint64_t seed = 0;
        double rate = 0.0;      // bps/Hz
        double wall_time = 0.0; // seconds, solver only
        int iters = 0;
        double gap = 0.0;       // NaN where a method has no dual bound
        bool converged = false;
    };

    // Channel seed of realization r at antenna count n and power index ps_index.
    std::uint64_t realization_seed(std::uint64_t base_seed, int n, std::size_t ps_index, int r);

    // Every (n, ps, realization) triple draws one channel that all selected methods
    // share. Records come out ordered by n, ps, realization, then method, whatever
    // the thread count (capped by SWIPT_THREADS). A method that throws yields a
    // record with converged = false and rate 0.
    std::vector<ExperimentRecord> run_experiment(const ExperimentConfig &cfg);

    struct SummaryRow
    {
        int n = 0;
        double ps_dbm = 0.0;
        Method method = Method::PrimalDual;
        std::size_t count = 0;
        double mean_rate = 0.0;
        double std_rate = 0.0; // sample standard deviation, 0 for a single record
        double mean_wall_time = 0.0;
        double median_wall_time = 0.0;
        double converged_fraction = 0.0;
    };

    // One row per (n, ps, method), sorted by n, ps, then method. Throws
    // std::invalid_argument on an empty input.
    std::vector<SummaryRow> aggregate(const std::vector<ExperimentRecord> &records);

    enum class Format
    {
        Csv,
        Jsonl,
    };

    const char *to_string(Format f);
    Format parse_format(std::string_view name);

    // Fixed column orders, shared by the CSV header and the JSON-lines keys.
    inline constexpr std::string_view kRecordColumns = "n,ps_dbm,method,seed,rate,wall_time,iters,gap,converged";
    inline constexpr std::string_view kSummaryColumns =
        "n,ps_dbm,method,count,mean_rate,std_rate,mean_wall_time,median_wall_time,converged_fraction";

    // Writers and readers; IO and parse failures throw swipt::Error naming the path.
    void export_records(const std::vector<ExperimentRecord> &records, const std::filesystem::path &path, Format f);
    void export_summary(const std::vector<SummaryRow> &rows, const std::filesystem::path &path, Format f);
    std::vector<ExperimentRecord> import_records(const std::filesystem::path &path, Format f);

    std::string record_csv_line(const ExperimentRecord &r);
    std::string summary_csv_line(const SummaryRow &s);
}

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

// swipt-relay command-line frontend. Machine-readable JSON goes to stdout and a
// short human summary to stderr. Exit codes: 0 success, 1 usage or input error,
// 2 numerical non-convergence.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "swipt/baselines.hpp"
#include "swipt/channel.hpp"
#include "swipt/ellipsoid.hpp"
#include "swipt/errors.hpp"
#include "swipt/harness.hpp"
#include "swipt/serialize.hpp"

namespace
{
    using namespace swipt;

    constexpr int kExitOk = 0;
    constexpr int kExitInput = 1;
    constexpr int kExitNumeric = 2;

    // Physical flags shared by every subcommand; unset flags keep the defaults.
    struct PhysicalFlags
    {
        std::optional<double> n0_dbm, eta, gamma, d_sr, d_rd;

        void add(CLI::App *cmd)
        {
            cmd->add_option("--n0-dbm", n0_dbm, "Noise floor in dBm (default -100)");
            cmd->add_option("--eta", eta, "Harvesting efficiency in [0, 1] (default 1)");
            cmd->add_option("--gamma", gamma, "Path-loss exponent (default 3.2)");
            cmd->add_option("--d-sr", d_sr, "Source-relay distance in m (default 2)");
            cmd->add_option("--d-rd", d_rd, "Relay-destination distance in m (default 10)");
        }

        void apply(SystemParams &p) const
        {
            if (n0_dbm)
                p.n0_dbm = *n0_dbm;
            if (eta)
                p.eta = *eta;
            if (gamma)
                p.gamma = *gamma;
            if (d_sr)
                p.d_sr = *d_sr;
            if (d_rd)
                p.d_rd = *d_rd;
        }
    };

    struct SolveFlags
    {
        PhysicalFlags phys;
        int n = 2;
        double ps_dbm = 30.0;
        std::uint64_t seed = 0;
        std::string channel_file;
        std::string trace;
        double eps0 = 1e-5;
    };

    struct SweepFlags
    {
        PhysicalFlags phys;
        std::vector<int> n_values;
        std::vector<double> ps_dbm_values;
        std::optional<int> realizations;
        std::optional<std::uint64_t> seed;
        std::vector<std::string> methods;
        std::string out;
        std::string format = "csv";
        std::string config;
        std::optional<double> eps0;
    };

    void print_json(const Json &j)
    {
        std::cout << j.dump(2) << '\n';
    }

    int cmd_solve(const SolveFlags &f)
    {
        SystemParams params = SystemParams::symmetric(f.n, f.ps_dbm);
        f.phys.apply(params);

        ChannelMatrices ch;
        if (!f.channel_file.empty())
        {
            ch = load_channel_file(f.channel_file);
            params.n_s = static_cast<int>(ch.h.cols());
            params.n_r = static_cast<int>(ch.h.rows());
            params.n_d = static_cast<int>(ch.g.rows());
        }
        else
        {
            params.validate();
            ch = generate_channels(params, f.seed);
        }
        const Instance inst = make_instance(ch, params);

        SolverConfig cfg;
        cfg.eps0 = f.eps0;
        std::unique_ptr<std::ofstream> trace_file;
        std::ostream *trace_os = nullptr;
        if (f.trace == "-")
            trace_os = &std::cerr;
        else if (!f.trace.empty())
        {
            trace_file = std::make_unique<std::ofstream>(f.trace);
            if (!*trace_file)
                throw Error("cannot open '" + f.trace + "' for writing");
            trace_os = trace_file.get();
        }
        if (trace_os)
            cfg.trace = [trace_os](const TraceEntry &t) { *trace_os << to_json(t).dump() << '\n'; };

        const SolveResult r = solve(inst.channel, inst.ps, cfg);

        Json out = to_json(r);
        out["ps"] = inst.ps;
        out["lambda_h"] = inst.channel.lambda_h;
        out["lambda_g"] = inst.channel.lambda_g;
        print_json(out);

        std::fprintf(stderr, "rate %.6f bps/Hz  gap %.2e  iters %d  %s\n", r.primal.rate, r.gap, r.iters,
                     r.converged ? "converged" : ("NOT converged: " + r.message).c_str());
        return r.converged ? kExitOk : kExitNumeric;
    }

    ExperimentConfig sweep_config(const SweepFlags &f, const std::vector<Method> &default_methods,
                                  const std::vector<int> &default_n, const std::vector<double> &default_ps)
    {
        ExperimentConfig cfg;
        cfg.n_values = default_n;
        cfg.ps_dbm_values = default_ps;
        cfg.methods = default_methods;
        if (!f.config.empty())
            cfg = load_experiment_config(f.config, cfg);
        f.phys.apply(cfg.params);
        if (!f.n_values.empty())
            cfg.n_values = f.n_values;
        if (!f.ps_dbm_values.empty())
            cfg.ps_dbm_values = f.ps_dbm_values;
        if (f.realizations)
            cfg.realizations = *f.realizations;
        if (f.seed)
            cfg.base_seed = *f.seed;
        if (f.eps0)
            cfg.solver.eps0 = *f.eps0;
        if (!f.methods.empty())
        {
            cfg.methods.clear();
            for (const std::string &m : f.methods)
                cfg.methods.push_back(parse_method(m));
        }
        cfg.validate();
        return cfg;
    }

    void print_table(const std::vector<SummaryRow> &rows)
    {
        std::fprintf(stderr, "%4s %8s %-12s %6s %12s %10s %14s %8s\n", "n", "ps_dbm", "method", "count", "mean_rate",
                     "std_rate", "median_time_s", "conv");
        for (const SummaryRow &s : rows)
            std::fprintf(stderr, "%4d %8.2f %-12s %6zu %12.6f %10.6f %14.3e %8.3f\n", s.n, s.ps_dbm,
                         to_string(s.method), s.count, s.mean_rate, s.std_rate, s.median_wall_time,
                         s.converged_fraction);
    }

    int cmd_sweep(const char *name, const SweepFlags &f, const std::vector<Method> &default_methods,
                  const std::vector<int> &default_n, const std::vector<double> &default_ps)
    {
        const Format format = parse_format(f.format);
        const ExperimentConfig cfg = sweep_config(f, default_methods, default_n, default_ps);
        const std::vector<ExperimentRecord> records = run_experiment(cfg);
        const std::vector<SummaryRow> rows = aggregate(records);

        Json out{{"command", name}, {"records", records.size()}, {"base_seed", cfg.base_seed},
                 {"realizations", cfg.realizations}};
        if (!f.out.empty())
        {
            export_records(records, f.out, format);
            const std::string summary_path = f.out + ".summary." + to_string(format);
            export_summary(rows, summary_path, format);
            out["out"] = f.out;
            out["summary_out"] = summary_path;
        }
        else
        {
            out["out"] = nullptr;
            out["summary_out"] = nullptr;
        }

        const auto converged = std::count_if(records.begin(), records.end(), [](const ExperimentRecord &r)
                                             { return r.converged; });
        const double fraction = static_cast<double>(converged) / static_cast<double>(records.size());
        out["converged_fraction"] = fraction;
        Json summary = Json::array();
        for (const SummaryRow &s : rows)
            summary.push_back(to_json(s));
        out["summary"] = std::move(summary);
        print_json(out);

        print_table(rows);
        if (fraction < 0.95)
        {
            std::fprintf(stderr, "only %.1f%% of records converged\n", 100.0 * fraction);
            return kExitNumeric;
        }
        return kExitOk;
    }

    int cmd_oracle_check(const SweepFlags &f)
    {
        ExperimentConfig cfg = sweep_config(f, {Method::PrimalDual, Method::Oracle}, {2}, {30.0});
        cfg.methods = {Method::PrimalDual, Method::Oracle};
        for (int n : cfg.n_values)
            if (n > static_cast<int>(kOracleMaxModes))
                throw std::invalid_argument("oracle-check supports n <= " + std::to_string(kOracleMaxModes));

        const std::vector<ExperimentRecord> records = run_experiment(cfg);
        constexpr double tolerance = 5e-3;
        double worst = 0.0;
        bool all_ok = true;
        for (std::size_t i = 0; i + 1 < records.size(); i += 2)
        {
            const ExperimentRecord &a = records[i];
            const ExperimentRecord &o = records[i + 1];
            all_ok = all_ok && a.converged && o.converged;
            worst = std::max(worst, std::abs(a.rate - o.rate));
        }
        const bool within = all_ok && worst <= tolerance;
        print_json(Json{{"command", "oracle-check"},
                        {"instances", records.size() / 2},
                        {"max_abs_rate_diff", worst},
                        {"tolerance", tolerance},
                        {"within_tolerance", within}});
        std::fprintf(stderr, "max |solve - oracle| = %.3e bps/Hz over %zu instances (tolerance %.0e)\n", worst,
                     records.size() / 2, tolerance);
        return within ? kExitOk : kExitNumeric;
    }

    void add_sweep_options(CLI::App *cmd, SweepFlags &f)
    {
        f.phys.add(cmd);
        cmd->add_option("--n", f.n_values, "Antenna counts N for N x N x N links, comma separated")
            ->delimiter(',');
        cmd->add_option("--ps-dbm", f.ps_dbm_values, "Source powers in dBm, comma separated")->delimiter(',');
        cmd->add_option("--realizations", f.realizations, "Channel realizations per (n, ps)")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--seed", f.seed, "Base seed");
        cmd->add_option("--methods", f.methods, "primal_dual, uniform, split_grid, oracle")->delimiter(',');
        cmd->add_option("--out", f.out, "Write records here; the summary goes to <out>.summary.<format>");
        cmd->add_option("--format", f.format, "Output format")->check(CLI::IsMember({"csv", "jsonl"}));
        cmd->add_option("--config", f.config, "Experiment configuration JSON file");
        cmd->add_option("--eps0", f.eps0, "Solver stopping width")->check(CLI::PositiveNumber);
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"Rate optimization for a wirelessly powered decode-and-forward MIMO relay"};
    app.require_subcommand(1);

    SolveFlags solve_flags;
    CLI::App *solve_cmd = app.add_subcommand("solve", "Solve one instance with the primal-dual method");
    solve_flags.phys.add(solve_cmd);
    solve_cmd->add_option("--n", solve_flags.n, "Antennas at every node")->check(CLI::PositiveNumber);
    solve_cmd->add_option("--ps-dbm", solve_flags.ps_dbm, "Source power in dBm");
    solve_cmd->add_option("--seed", solve_flags.seed, "Channel seed");
    solve_cmd->add_option("--channel-file", solve_flags.channel_file, "JSON file with matrices h and g");
    solve_cmd->add_option("--trace", solve_flags.trace, "Write per-iteration JSON lines here ('-' for stderr)");
    solve_cmd->add_option("--eps0", solve_flags.eps0, "Stopping width")->check(CLI::PositiveNumber);

    SweepFlags sweep_flags, bench_flags, compare_flags, oracle_flags;
    CLI::App *sweep_cmd = app.add_subcommand("sweep", "Monte Carlo sweep over n and source power");
    add_sweep_options(sweep_cmd, sweep_flags);
    CLI::App *bench_cmd = app.add_subcommand("bench", "Wall-time comparison of primal_dual and split_grid");
    add_sweep_options(bench_cmd, bench_flags);
    CLI::App *compare_cmd = app.add_subcommand("compare", "Rate comparison of primal_dual, uniform and split_grid");
    add_sweep_options(compare_cmd, compare_flags);
    CLI::App *oracle_cmd = app.add_subcommand("oracle-check", "Agreement between primal_dual and the grid oracle");
    add_sweep_options(oracle_cmd, oracle_flags);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    try
    {
        if (*solve_cmd)
            return cmd_solve(solve_flags);
        if (*sweep_cmd)
            return cmd_sweep("sweep", sweep_flags, {Method::PrimalDual, Method::Uniform}, {2, 4, 6}, {25.0, 40.0});
        if (*bench_cmd)
            return cmd_sweep("bench", bench_flags, {Method::PrimalDual, Method::SplitGrid}, {2, 4, 8}, {30.0});
        if (*compare_cmd)
            return cmd_sweep("compare", compare_flags, {Method::PrimalDual, Method::Uniform, Method::SplitGrid},
                             {2}, {30.0});
        if (*oracle_cmd)
            return cmd_oracle_check(oracle_flags);
    }
    catch (const std::exception &e)
    {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInput;
    }
    return kExitInput;
}

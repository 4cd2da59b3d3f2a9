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

#include "swipt/harness.hpp"

#include <algorithm>
#include <chrono>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "parallel.hpp"
#include "swipt/errors.hpp"
#include "swipt/serialize.hpp"

namespace swipt
{
    namespace
    {
        constexpr std::array<std::pair<Method, std::string_view>, 4> kMethodNames{{
            {Method::PrimalDual, "primal_dual"},
            {Method::Uniform, "uniform"},
            {Method::SplitGrid, "split_grid"},
            {Method::Oracle, "oracle"},
        }};
    }

    const char *to_string(Method m)
    {
        for (const auto &[k, name] : kMethodNames)
            if (k == m)
                return name.data();
        return "unknown";
    }

    Method parse_method(std::string_view name)
    {
        for (const auto &[k, n] : kMethodNames)
            if (n == name)
                return k;
        throw std::invalid_argument("unknown method '" + std::string(name) +
                                    "' (expected primal_dual, uniform, split_grid or oracle)");
    }

    const char *to_string(Format f)
    {
        return f == Format::Csv ? "csv" : "jsonl";
    }

    Format parse_format(std::string_view name)
    {
        if (name == "csv")
            return Format::Csv;
        if (name == "jsonl")
            return Format::Jsonl;
        throw std::invalid_argument("unknown format '" + std::string(name) + "' (expected csv or jsonl)");
    }

    void ExperimentConfig::validate() const
    {
        if (realizations < 1)
            throw std::invalid_argument("ExperimentConfig: realizations must be >= 1");
        if (methods.empty())
            throw std::invalid_argument("ExperimentConfig: methods must not be empty");
        if (n_values.empty() || ps_dbm_values.empty())
            throw std::invalid_argument("ExperimentConfig: n_values and ps_dbm_values must not be empty");
        for (int n : n_values)
            if (n < 1)
                throw std::invalid_argument("ExperimentConfig: antenna counts must be >= 1");
        for (double ps : ps_dbm_values)
            if (!std::isfinite(ps))
                throw std::invalid_argument("ExperimentConfig: source powers must be finite");
        if (split_grid_points < 2)
            throw std::invalid_argument("ExperimentConfig: split_grid_points must be >= 2");
        params.validate();
        solver.validate();
        oracle.validate();
    }

    std::uint64_t realization_seed(std::uint64_t base_seed, int n, std::size_t ps_index, int r)
    {
        std::uint64_t h = splitmix64(static_cast<std::uint64_t>(n));
        h = splitmix64(h ^ static_cast<std::uint64_t>(ps_index));
        h = splitmix64(h ^ static_cast<std::uint64_t>(r));
        return base_seed ^ h;
    }

    namespace
    {
        using Clock = std::chrono::steady_clock;

        void run_method(Method m, const Instance &inst, const ExperimentConfig &cfg, ExperimentRecord &rec)
        {
            const auto t0 = Clock::now();
            switch (m)
            {
            case Method::PrimalDual:
            {
                const SolveResult r = solve(inst.channel, inst.ps, cfg.solver);
                rec.rate = r.primal.rate;
                rec.iters = r.iters;
                rec.gap = r.gap;
                rec.converged = r.converged;
                break;
            }
            case Method::Uniform:
            {
                const UniformResult u = uniform_solve(inst.channel, inst.ps, cfg.solver);
                rec.rate = u.result.primal.rate;
                rec.iters = u.result.iters;
                rec.gap = u.result.gap;
                rec.converged = u.result.converged;
                break;
            }
            case Method::SplitGrid:
            {
                const SolveResult r = split_grid_solve(inst.channel, inst.ps, cfg.split_grid_points);
                rec.rate = r.primal.rate;
                rec.iters = r.iters;
                rec.gap = r.gap;
                rec.converged = r.converged;
                break;
            }
            case Method::Oracle:
            {
                const PrimalPoint pt = oracle_solve(inst.channel, inst.ps, cfg.oracle);
                rec.rate = pt.rate;
                rec.gap = std::numeric_limits<double>::quiet_NaN();
                rec.converged = true;
                break;
            }
            }
            rec.wall_time = std::max(std::chrono::duration<double>(Clock::now() - t0).count(), 1e-9);
        }
    }

    std::vector<ExperimentRecord> run_experiment(const ExperimentConfig &cfg)
    {
        cfg.validate();
        const std::size_t n_ps = cfg.ps_dbm_values.size();
        const std::size_t reals = static_cast<std::size_t>(cfg.realizations);
        const std::size_t n_methods = cfg.methods.size();
        const std::size_t tasks = cfg.n_values.size() * n_ps * reals;

        std::vector<ExperimentRecord> out(tasks * n_methods);
        detail::parallel_for(tasks, [&](std::size_t t)
        {
            const std::size_t r = t % reals;
            const std::size_t ps_index = (t / reals) % n_ps;
            const int n = cfg.n_values[t / (reals * n_ps)];
            const double ps_dbm = cfg.ps_dbm_values[ps_index];
            const std::uint64_t seed = realization_seed(cfg.base_seed, n, ps_index, static_cast<int>(r));

            SystemParams params = cfg.params;
            params.n_s = params.n_r = params.n_d = n;
            params.p_s_dbm = ps_dbm;

            Instance inst;
            std::string setup_error;
            try
            {
                inst = make_instance(generate_channels(params, seed), params);
            }
            catch (const std::exception &e)
            {
                setup_error = e.what();
            }

            for (std::size_t m = 0; m < n_methods; ++m)
            {
                ExperimentRecord &rec = out[t * n_methods + m];
                rec.n = n;
                rec.ps_dbm = ps_dbm;
                rec.method = cfg.methods[m];
                rec.seed = seed;
                if (!setup_error.empty())
                {
                    rec.gap = std::numeric_limits<double>::quiet_NaN();
                    rec.wall_time = 1e-9;
                    continue;
                }
                const auto t0 = Clock::now();
                try
                {
                    run_method(cfg.methods[m], inst, cfg, rec);
                }
                catch (const std::exception &)
                {
                    rec.rate = 0.0;
                    rec.iters = 0;
                    rec.gap = std::numeric_limits<double>::quiet_NaN();
                    rec.converged = false;
                    rec.wall_time = std::max(std::chrono::duration<double>(Clock::now() - t0).count(), 1e-9);
                }
            }
        });
        return out;
    }

    std::vector<SummaryRow> aggregate(const std::vector<ExperimentRecord> &records)
    {
        if (records.empty())
            throw std::invalid_argument("aggregate: no records");

        using Key = std::tuple<int, double, int>;
        std::map<Key, std::vector<const ExperimentRecord *>> groups;
        for (const ExperimentRecord &r : records)
            groups[{r.n, r.ps_dbm, static_cast<int>(r.method)}].push_back(&r);

        std::vector<SummaryRow> rows;
        rows.reserve(groups.size());
        for (const auto &[key, group] : groups)
        {
            SummaryRow s;
            s.n = std::get<0>(key);
            s.ps_dbm = std::get<1>(key);
            s.method = static_cast<Method>(std::get<2>(key));
            s.count = group.size();

            const double count = static_cast<double>(group.size());
            double sum = 0.0, sum_t = 0.0, conv = 0.0;
            std::vector<double> times;
            times.reserve(group.size());
            for (const ExperimentRecord *r : group)
            {
                sum += r->rate;
                sum_t += r->wall_time;
                conv += r->converged ? 1.0 : 0.0;
                times.push_back(r->wall_time);
            }
            s.mean_rate = sum / count;
            double ss = 0.0;
            for (const ExperimentRecord *r : group)
                ss += (r->rate - s.mean_rate) * (r->rate - s.mean_rate);
            s.std_rate = group.size() > 1 ? std::sqrt(ss / (count - 1.0)) : 0.0;
            s.mean_wall_time = sum_t / count;

            std::sort(times.begin(), times.end());
            const std::size_t mid = times.size() / 2;
            s.median_wall_time = times.size() % 2 ? times[mid] : 0.5 * (times[mid - 1] + times[mid]);
            s.converged_fraction = conv / count;
            rows.push_back(s);
        }
        return rows;
    }

    namespace
    {
        std::string num(double x)
        {
            if (std::isnan(x))
                return "nan";
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.17g", x);
            return buf;
        }

        std::ofstream open_out(const std::filesystem::path &path)
        {
            std::ofstream os(path, std::ios::binary | std::ios::trunc);
            if (!os)
                throw Error("cannot open '" + path.string() + "' for writing");
            return os;
        }

        void finish_out(std::ofstream &os, const std::filesystem::path &path)
        {
            os.flush();
            if (!os)
                throw Error("write to '" + path.string() + "' failed");
        }

        std::vector<std::string> split_csv(const std::string &line)
        {
            std::vector<std::string> cells;
            std::stringstream ss(line);
            std::string cell;
            while (std::getline(ss, cell, ','))
                cells.push_back(cell);
            if (!line.empty() && line.back() == ',')
                cells.emplace_back();
            return cells;
        }

        double parse_double(const std::string &s)
        {
            std::size_t used = 0;
            const double v = std::stod(s, &used);
            if (used != s.size())
                throw std::invalid_argument("trailing characters");
            return v;
        }

        ExperimentRecord record_from_cells(const std::vector<std::string> &c)
        {
            if (c.size() != 9)
                throw std::invalid_argument("expected 9 columns, got " + std::to_string(c.size()));
            ExperimentRecord r;
            r.n = std::stoi(c[0]);
            r.ps_dbm = parse_double(c[1]);
            r.method = parse_method(c[2]);
            r.seed = std::stoull(c[3]);
            r.rate = parse_double(c[4]);
            r.wall_time = parse_double(c[5]);
            r.iters = std::stoi(c[6]);
            r.gap = parse_double(c[7]);
            if (c[8] != "0" && c[8] != "1")
                throw std::invalid_argument("converged must be 0 or 1");
            r.converged = c[8] == "1";
            return r;
        }
    }

    std::string record_csv_line(const ExperimentRecord &r)
    {
        return std::to_string(r.n) + ',' + num(r.ps_dbm) + ',' + to_string(r.method) + ',' + std::to_string(r.seed) +
               ',' + num(r.rate) + ',' + num(r.wall_time) + ',' + std::to_string(r.iters) + ',' + num(r.gap) + ',' +
               (r.converged ? "1" : "0");
    }

    std::string summary_csv_line(const SummaryRow &s)
    {
        return std::to_string(s.n) + ',' + num(s.ps_dbm) + ',' + to_string(s.method) + ',' + std::to_string(s.count) +
               ',' + num(s.mean_rate) + ',' + num(s.std_rate) + ',' + num(s.mean_wall_time) + ',' +
               num(s.median_wall_time) + ',' + num(s.converged_fraction);
    }

    void export_records(const std::vector<ExperimentRecord> &records, const std::filesystem::path &path, Format f)
    {
        std::ofstream os = open_out(path);
        if (f == Format::Csv)
        {
            os << kRecordColumns << '\n';
            for (const ExperimentRecord &r : records)
                os << record_csv_line(r) << '\n';
        }
        else
        {
            for (const ExperimentRecord &r : records)
                os << to_json(r).dump() << '\n';
        }
        finish_out(os, path);
    }

    void export_summary(const std::vector<SummaryRow> &rows, const std::filesystem::path &path, Format f)
    {
        std::ofstream os = open_out(path);
        if (f == Format::Csv)
        {
            os << kSummaryColumns << '\n';
            for (const SummaryRow &s : rows)
                os << summary_csv_line(s) << '\n';
        }
        else
        {
            for (const SummaryRow &s : rows)
                os << to_json(s).dump() << '\n';
        }
        finish_out(os, path);
    }

    std::vector<ExperimentRecord> import_records(const std::filesystem::path &path, Format f)
    {
        std::ifstream is(path, std::ios::binary);
        if (!is)
            throw Error("cannot open '" + path.string() + "' for reading");

        std::vector<ExperimentRecord> out;
        std::string line;
        std::size_t lineno = 0;
        if (f == Format::Csv)
        {
            if (!std::getline(is, line) || line != kRecordColumns)
                throw Error("'" + path.string() + "': missing or unexpected CSV header");
            ++lineno;
        }
        while (std::getline(is, line))
        {
            ++lineno;
            if (line.empty())
                continue;
            try
            {
                out.push_back(f == Format::Csv ? record_from_cells(split_csv(line))
                                               : record_from_json(Json::parse(line)));
            }
            catch (const std::exception &e)
            {
                throw Error("'" + path.string() + "' line " + std::to_string(lineno) + ": " + e.what());
            }
        }
        return out;
    }
}

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

#include "swipt/serialize.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <string>

#include "swipt/errors.hpp"

namespace swipt
{
    namespace
    {
        Json number(double x)
        {
            return std::isfinite(x) ? Json(x) : Json(nullptr);
        }

        double as_number(const Json &j, const std::string &key)
        {
            if (j.is_null())
                return std::numeric_limits<double>::quiet_NaN();
            if (!j.is_number())
                throw Error("'" + key + "' must be a number");
            return j.get<double>();
        }

        const Json &array_field(const Json &j, const char *key)
        {
            if (!j[key].is_array())
                throw Error(std::string("'") + key + "' must be an array");
            return j[key];
        }

        const Json &field(const Json &j, const char *key)
        {
            if (!j.is_object() || !j.contains(key))
                throw Error(std::string("missing key '") + key + "'");
            return j.at(key);
        }

        int as_int(const Json &j, const std::string &key)
        {
            if (!j.is_number_integer())
                throw Error("'" + key + "' must be an integer");
            return j.get<int>();
        }

        template <class T>
        Json vec(const std::vector<T> &v)
        {
            Json a = Json::array();
            for (const T &x : v)
                a.push_back(number(x));
            return a;
        }

        Json read_file(const std::filesystem::path &path)
        {
            std::ifstream is(path, std::ios::binary);
            if (!is)
                throw Error("cannot open '" + path.string() + "' for reading");
            try
            {
                return Json::parse(is);
            }
            catch (const Json::parse_error &e)
            {
                throw Error("'" + path.string() + "': " + e.what());
            }
        }

        void reject_unknown(const Json &j, const std::set<std::string> &known, const char *where)
        {
            for (const auto &[key, _] : j.items())
                if (!known.contains(key))
                    throw Error(std::string(where) + ": unknown key '" + key + "'");
        }
    }

    Json to_json(const ComplexMatrix &m)
    {
        Json rows = Json::array();
        for (Eigen::Index r = 0; r < m.rows(); ++r)
        {
            Json row = Json::array();
            for (Eigen::Index c = 0; c < m.cols(); ++c)
                row.push_back(Json::array({number(m(r, c).real()), number(m(r, c).imag())}));
            rows.push_back(std::move(row));
        }
        return rows;
    }

    ComplexMatrix complex_matrix_from_json(const Json &j, const char *name)
    {
        const std::string who(name);
        if (!j.is_array() || j.empty() || !j.front().is_array() || j.front().empty())
            throw Error("'" + who + "' must be a non-empty array of rows");
        const auto rows = static_cast<Eigen::Index>(j.size());
        const auto cols = static_cast<Eigen::Index>(j.front().size());
        ComplexMatrix m(rows, cols);
        for (Eigen::Index r = 0; r < rows; ++r)
        {
            const Json &row = j[static_cast<std::size_t>(r)];
            if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
                throw Error("'" + who + "': rows must all have " + std::to_string(cols) + " entries");
            for (Eigen::Index c = 0; c < cols; ++c)
            {
                const Json &e = row[static_cast<std::size_t>(c)];
                if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
                    throw Error("'" + who + "': entries must be [re, im] number pairs");
                m(r, c) = {e[0].get<double>(), e[1].get<double>()};
            }
        }
        return m;
    }

    Json to_json(const ChannelMatrices &ch)
    {
        return Json{{"h", to_json(ch.h)}, {"g", to_json(ch.g)}};
    }

    ChannelMatrices channel_from_json(const Json &j)
    {
        ChannelMatrices ch;
        ch.h = complex_matrix_from_json(field(j, "h"), "h");
        ch.g = complex_matrix_from_json(field(j, "g"), "g");
        if (ch.g.cols() != ch.h.rows())
            throw DimensionMismatch("channel: columns of g must equal rows of h (relay antennas)");
        return ch;
    }

    ChannelMatrices load_channel_file(const std::filesystem::path &path)
    {
        const Json j = read_file(path);
        try
        {
            return channel_from_json(j);
        }
        catch (const Error &e)
        {
            throw Error("'" + path.string() + "': " + e.what());
        }
    }

    Json to_json(const SystemParams &p)
    {
        Json j{{"n_s", p.n_s},     {"n_r", p.n_r},         {"n_d", p.n_d},     {"p_s_dbm", p.p_s_dbm},
               {"n0_dbm", p.n0_dbm}, {"eta", p.eta},       {"gamma", p.gamma}, {"d_sr", p.d_sr},
               {"d_rd", p.d_rd}};
        j["sigma_r_sq"] = p.sigma_r_sq ? Json(*p.sigma_r_sq) : Json(nullptr);
        j["sigma_d_sq"] = p.sigma_d_sq ? Json(*p.sigma_d_sq) : Json(nullptr);
        return j;
    }

    SystemParams params_from_json(const Json &j, SystemParams p)
    {
        if (!j.is_object())
            throw Error("params must be an object");
        reject_unknown(j, {"n_s", "n_r", "n_d", "p_s_dbm", "n0_dbm", "eta", "gamma", "d_sr", "d_rd", "sigma_r_sq",
                           "sigma_d_sq"},
                       "params");
        auto get_int = [&](const char *k, int &dst)
        {
            if (j.contains(k))
                dst = as_int(j[k], k);
        };
        auto get_num = [&](const char *k, double &dst)
        {
            if (j.contains(k))
                dst = as_number(j[k], k);
        };
        auto get_opt = [&](const char *k, std::optional<double> &dst)
        {
            if (j.contains(k))
                dst = j[k].is_null() ? std::nullopt : std::optional<double>(as_number(j[k], k));
        };
        get_int("n_s", p.n_s);
        get_int("n_r", p.n_r);
        get_int("n_d", p.n_d);
        get_num("p_s_dbm", p.p_s_dbm);
        get_num("n0_dbm", p.n0_dbm);
        get_num("eta", p.eta);
        get_num("gamma", p.gamma);
        get_num("d_sr", p.d_sr);
        get_num("d_rd", p.d_rd);
        get_opt("sigma_r_sq", p.sigma_r_sq);
        get_opt("sigma_d_sq", p.sigma_d_sq);
        return p;
    }

    Json to_json(const PrimalPoint &pt)
    {
        return Json{{"rate", number(pt.rate)}, {"rho", vec(pt.rho)}, {"p", vec(pt.p)}, {"q", vec(pt.q)}};
    }

    Json to_json(const DualPoint &d)
    {
        return Json{{"alpha", number(d.alpha)}, {"nu", number(d.nu)}, {"mu", number(d.mu)}};
    }

    Json to_json(const DualEval &ev)
    {
        return Json{{"value", number(ev.value)},
                    {"subgradient", Json::array({number(ev.subgrad[0]), number(ev.subgrad[1]), number(ev.subgrad[2])})},
                    {"r1", number(ev.r1)},
                    {"r2", number(ev.r2)},
                    {"primal", to_json(ev.primal)}};
    }

    Json to_json(const SolveResult &r)
    {
        Json j{{"rate", number(r.primal.rate)},
               {"rho", vec(r.primal.rho)},
               {"p", vec(r.primal.p)},
               {"q", vec(r.primal.q)},
               {"dual", to_json(r.dual)},
               {"dual_value", number(r.dual_value)},
               {"gap", number(r.gap)},
               {"iters", r.iters},
               {"wall_time", number(r.wall_time)},
               {"converged", r.converged}};
        if (!r.message.empty())
            j["message"] = r.message;
        return j;
    }

    Json to_json(const TraceEntry &t)
    {
        return Json{{"iter", t.iter},
                    {"alpha", number(t.dual.alpha)},
                    {"nu", number(t.dual.nu)},
                    {"mu", number(t.dual.mu)},
                    {"value", number(t.value)},
                    {"cut", to_string(t.cut)},
                    {"cut_width", number(t.cut_width)}};
    }

    Json to_json(const ExperimentRecord &r)
    {
        // Same fields as kRecordColumns.
        return Json{{"n", r.n},
                    {"ps_dbm", number(r.ps_dbm)},
                    {"method", to_string(r.method)},
                    {"seed", r.seed},
                    {"rate", number(r.rate)},
                    {"wall_time", number(r.wall_time)},
                    {"iters", r.iters},
                    {"gap", number(r.gap)},
                    {"converged", r.converged}};
    }

    ExperimentRecord record_from_json(const Json &j)
    {
        ExperimentRecord r;
        r.n = as_int(field(j, "n"), "n");
        r.ps_dbm = as_number(field(j, "ps_dbm"), "ps_dbm");
        const Json &m = field(j, "method");
        if (!m.is_string())
            throw Error("'method' must be a string");
        r.method = parse_method(m.get<std::string>());
        const Json &seed = field(j, "seed");
        if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<std::int64_t>() >= 0))
            throw Error("'seed' must be a non-negative integer");
        r.seed = seed.get<std::uint64_t>();
        r.rate = as_number(field(j, "rate"), "rate");
        r.wall_time = as_number(field(j, "wall_time"), "wall_time");
        r.iters = as_int(field(j, "iters"), "iters");
        r.gap = as_number(field(j, "gap"), "gap");
        const Json &c = field(j, "converged");
        if (!c.is_boolean())
            throw Error("'converged' must be a boolean");
        r.converged = c.get<bool>();
        return r;
    }

    Json to_json(const SummaryRow &s)
    {
        return Json{{"n", s.n},
                    {"ps_dbm", number(s.ps_dbm)},
                    {"method", to_string(s.method)},
                    {"count", s.count},
                    {"mean_rate", number(s.mean_rate)},
                    {"std_rate", number(s.std_rate)},
                    {"mean_wall_time", number(s.mean_wall_time)},
                    {"median_wall_time", number(s.median_wall_time)},
                    {"converged_fraction", number(s.converged_fraction)}};
    }

    ExperimentConfig experiment_config_from_json(const Json &j, ExperimentConfig cfg)
    {
        if (!j.is_object())
            throw Error("experiment config must be a JSON object");
        reject_unknown(j, {"n_values", "ps_dbm_values", "realizations", "base_seed", "methods", "split_grid_points",
                           "eps0", "max_iter", "oracle", "params"},
                       "experiment config");

        if (j.contains("n_values"))
        {
            cfg.n_values.clear();
            for (const Json &x : array_field(j, "n_values"))
                cfg.n_values.push_back(as_int(x, "n_values"));
        }
        if (j.contains("ps_dbm_values"))
        {
            cfg.ps_dbm_values.clear();
            for (const Json &x : array_field(j, "ps_dbm_values"))
                cfg.ps_dbm_values.push_back(as_number(x, "ps_dbm_values"));
        }
        if (j.contains("realizations"))
            cfg.realizations = as_int(j["realizations"], "realizations");
        if (j.contains("base_seed"))
        {
            if (!j["base_seed"].is_number_integer())
                throw Error("'base_seed' must be an integer");
            cfg.base_seed = j["base_seed"].get<std::uint64_t>();
        }
        if (j.contains("methods"))
        {
            cfg.methods.clear();
            for (const Json &x : array_field(j, "methods"))
            {
                if (!x.is_string())
                    throw Error("'methods' must hold strings");
                cfg.methods.push_back(parse_method(x.get<std::string>()));
            }
        }
        if (j.contains("split_grid_points"))
            cfg.split_grid_points = as_int(j["split_grid_points"], "split_grid_points");
        if (j.contains("eps0"))
            cfg.solver.eps0 = as_number(j["eps0"], "eps0");
        if (j.contains("max_iter"))
            cfg.solver.max_iter = as_int(j["max_iter"], "max_iter");
        if (j.contains("oracle"))
        {
            const Json &o = j["oracle"];
            if (!o.is_object())
                throw Error("'oracle' must be an object");
            reject_unknown(o, {"rho_grid", "p_grid", "refine_rounds"}, "oracle");
            if (o.contains("rho_grid"))
                cfg.oracle.rho_grid = as_int(o["rho_grid"], "oracle.rho_grid");
            if (o.contains("p_grid"))
                cfg.oracle.p_grid = as_int(o["p_grid"], "oracle.p_grid");
            if (o.contains("refine_rounds"))
                cfg.oracle.refine_rounds = as_int(o["refine_rounds"], "oracle.refine_rounds");
        }
        if (j.contains("params"))
            cfg.params = params_from_json(j["params"], cfg.params);
        return cfg;
    }

    ExperimentConfig load_experiment_config(const std::filesystem::path &path, ExperimentConfig base)
    {
        const Json j = read_file(path);
        try
        {
            return experiment_config_from_json(j, std::move(base));
        }
        catch (const std::exception &e)
        {
            throw Error("'" + path.string() + "': " + e.what());
        }
    }
}

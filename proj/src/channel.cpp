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

#include "swipt/channel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "swipt/errors.hpp"

namespace swipt
{
    double dbm_to_linear(double x_dbm)
    {
        return std::pow(10.0, x_dbm / 10.0);
    }

    SystemParams SystemParams::symmetric(int n, double ps_dbm)
    {
        SystemParams p;
        p.n_s = p.n_r = p.n_d = n;
        p.p_s_dbm = ps_dbm;
        return p;
    }

    SystemParams SystemParams::noise_floor_units() const
    {
        SystemParams out = *this;
        const double n0 = n0_linear();
        out.sigma_r_sq = noise_r() / n0;
        out.sigma_d_sq = noise_d() / n0;
        return out;
    }

    void SystemParams::validate() const
    {
        auto fail = [](const std::string &msg)
        { throw std::invalid_argument("SystemParams: " + msg); };

        if (n_s < 1 || n_r < 1 || n_d < 1)
            fail("antenna counts must be >= 1");
        if (!(eta >= 0.0 && eta <= 1.0))
            fail("eta must lie in [0, 1]");
        if (!(d_sr > 0.0) || !(d_rd > 0.0))
            fail("distances must be > 0");
        if (!(gamma > 0.0))
            fail("path-loss exponent must be > 0");
        if (!std::isfinite(p_s_dbm) || !std::isfinite(n0_dbm))
            fail("power levels must be finite");
        if (!(noise_r() > 0.0) || !(noise_d() > 0.0))
            fail("noise powers must be > 0");
    }

    std::uint64_t splitmix64(std::uint64_t x)
    {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    ChannelRng::ChannelRng(std::uint64_t seed)
    {
        // Fill the mt19937_64 state words from a SplitMix64 stream so that nearby
        // seeds give unrelated streams.
        std::array<std::uint32_t, 8> words{};
        std::uint64_t s = seed;
        for (std::size_t i = 0; i < words.size(); i += 2)
        {
            s = splitmix64(s);
            words[i] = static_cast<std::uint32_t>(s);
            words[i + 1] = static_cast<std::uint32_t>(s >> 32);
        }
        std::seed_seq seq(words.begin(), words.end());
        engine_.seed(seq);
    }

    double ChannelRng::uniform()
    {
        // (k + 1) / 2^53 with k uniform on [0, 2^53): never zero, so log() is safe.
        const std::uint64_t k = engine_() >> 11;
        return (static_cast<double>(k) + 1.0) * 0x1.0p-53;
    }

    std::complex<double> ChannelRng::complex_normal()
    {
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-std::log(u1)); // sqrt(-2 ln u1) / sqrt(2)
        const double t = 2.0 * std::numbers::pi * u2;
        return {r * std::cos(t), r * std::sin(t)};
    }

    ChannelMatrices generate_channels(const SystemParams &params, std::uint64_t seed)
    {
        params.validate();
        ChannelRng rng(seed);

        const double a_sr = std::pow(1.0 / params.d_sr, params.gamma);
        const double a_rd = std::pow(1.0 / params.d_rd, params.gamma);

        ChannelMatrices ch;
        ch.h.resize(params.n_r, params.n_s);
        ch.g.resize(params.n_d, params.n_r);
        for (Eigen::Index i = 0; i < ch.h.rows(); ++i)
            for (Eigen::Index j = 0; j < ch.h.cols(); ++j)
                ch.h(i, j) = a_sr * rng.complex_normal();
        for (Eigen::Index i = 0; i < ch.g.rows(); ++i)
            for (Eigen::Index j = 0; j < ch.g.cols(); ++j)
                ch.g(i, j) = a_rd * rng.complex_normal();
        return ch;
    }

    namespace
    {
        struct Modes
        {
            std::vector<double> gains;
            ComplexMatrix v;
        };

        Modes reduce_hop(const ComplexMatrix &m, double noise, const char *name)
        {
            if (!m.allFinite())
                throw std::invalid_argument(std::string("eigen_reduce: non-finite entries in ") + name);

            Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeThinV);
            const auto &s = svd.singularValues(); // descending
            const double smax = s.size() > 0 ? s(0) : 0.0;
            if (!(smax > 0.0))
                throw AllZeroChannel(std::string("eigen_reduce: ") + name + " has no non-zero singular value");

            Eigen::Index k = 0;
            while (k < s.size() && s(k) >= 1e-12 * smax)
                ++k;

            Modes out;
            out.gains.resize(static_cast<std::size_t>(k));
            for (Eigen::Index i = 0; i < k; ++i)
                out.gains[static_cast<std::size_t>(i)] = s(i) * s(i) / noise;
            out.v = svd.matrixV().leftCols(k);
            return out;
        }
    }

    EigenChannel eigen_reduce(const ChannelMatrices &ch, const SystemParams &params)
    {
        params.validate();
        if (ch.h.rows() != params.n_r || ch.h.cols() != params.n_s)
            throw DimensionMismatch("eigen_reduce: H must be N_r x N_s");
        if (ch.g.rows() != params.n_d || ch.g.cols() != params.n_r)
            throw DimensionMismatch("eigen_reduce: G must be N_d x N_r");

        auto h = reduce_hop(ch.h, params.noise_r(), "H");
        auto g = reduce_hop(ch.g, params.noise_d(), "G");

        EigenChannel ec;
        ec.lambda_h = std::move(h.gains);
        ec.v_h = std::move(h.v);
        ec.lambda_g = std::move(g.gains);
        ec.v_g = std::move(g.v);
        ec.eta = params.eta;
        return ec;
    }

    EigenChannel EigenChannel::from_gains(std::vector<double> lambda_h, std::vector<double> lambda_g,
                                          double eta)
    {
        auto check = [](const std::vector<double> &v)
        {
            if (v.empty())
                throw std::invalid_argument("EigenChannel: empty gain vector");
            for (double x : v)
                if (!(x > 0.0) || !std::isfinite(x))
                    throw std::invalid_argument("EigenChannel: gains must be positive and finite");
        };
        check(lambda_h);
        check(lambda_g);
        std::sort(lambda_h.begin(), lambda_h.end(), std::greater<>());
        std::sort(lambda_g.begin(), lambda_g.end(), std::greater<>());

        EigenChannel ec;
        const auto k1 = static_cast<Eigen::Index>(lambda_h.size());
        const auto k2 = static_cast<Eigen::Index>(lambda_g.size());
        ec.v_h = ComplexMatrix::Identity(k1, k1);
        ec.v_g = ComplexMatrix::Identity(k2, k2);
        ec.lambda_h = std::move(lambda_h);
        ec.lambda_g = std::move(lambda_g);
        ec.eta = eta;
        return ec;
    }

    Instance make_instance(const ChannelMatrices &ch, const SystemParams &params)
    {
        return {eigen_reduce(ch, params.noise_floor_units()), params.ps_snr()};
    }
}

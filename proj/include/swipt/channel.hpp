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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace swipt
{
    using ComplexMatrix = Eigen::MatrixXcd;

    double dbm_to_linear(double x_dbm);

    // Physical configuration of the S-R-D link. Powers are in mW (linear) or dBm,
    // distances in meters. The receiver noise powers default to the noise floor.
    struct SystemParams
    {
        int n_s = 2;
        int n_r = 2;
        int n_d = 2;
        double p_s_dbm = 30.0;
        double n0_dbm = -100.0;
        double eta = 1.0;
        double gamma = 3.2;
        double d_sr = 2.0;
        double d_rd = 10.0;
        std::optional<double> sigma_r_sq;
        std::optional<double> sigma_d_sq;

        static SystemParams symmetric(int n, double ps_dbm);

        double n0_linear() const { return dbm_to_linear(n0_dbm); }
        double noise_r() const { return sigma_r_sq.value_or(n0_linear()); }
        double noise_d() const { return sigma_d_sq.value_or(n0_linear()); }

        // Source power budget in multiples of the noise floor (the "SNR" budget).
        double ps_snr() const { return dbm_to_linear(p_s_dbm) / n0_linear(); }

        // Copy with receiver noise re-expressed in multiples of the noise floor, so
        // that eigen_reduce() yields gains consistent with ps_snr().
        SystemParams noise_floor_units() const;

        // Throws std::invalid_argument on violated invariants.
        void validate() const;
    };

    struct ChannelMatrices
    {
        ComplexMatrix h; // N_r x N_s
        ComplexMatrix g; // N_d x N_r
    };

    // Parallel eigenmodes of both hops. Gains are squared singular values divided
    // by the receiver noise, sorted descending; zero modes are dropped.
    struct EigenChannel
    {
        std::vector<double> lambda_h;
        std::vector<double> lambda_g;
        ComplexMatrix v_h; // N_s x K1
        ComplexMatrix v_g; // N_r x K2
        double eta = 1.0;

        std::size_t k1() const { return lambda_h.size(); }
        std::size_t k2() const { return lambda_g.size(); }

        // Diagonal channel with the given gains (sorted descending) and identity
        // singular vectors. Throws std::invalid_argument for non-positive gains.
        static EigenChannel from_gains(std::vector<double> lambda_h, std::vector<double> lambda_g,
                                       double eta = 1.0);
    };

    // Seeded source of unit-variance circularly-symmetric complex Gaussians.
    //
    // Algorithm: the 64-bit seed is expanded with SplitMix64 into the seed sequence
    // of a std::mt19937_64 (whose output sequence is fixed by the standard); uniforms
    // take the top 53 bits of each draw and normals come from the Box-Muller
    // transform. No std::*_distribution is involved, so realizations are identical
    // across standard libraries and platforms.
    class ChannelRng
    {
    public:
        explicit ChannelRng(std::uint64_t seed);

        double uniform(); // in (0, 1]
        std::complex<double> complex_normal();

    private:
        std::mt19937_64 engine_;
    };

    std::uint64_t splitmix64(std::uint64_t x);

    ChannelMatrices generate_channels(const SystemParams &params, std::uint64_t seed);

    EigenChannel eigen_reduce(const ChannelMatrices &ch, const SystemParams &params);

    // A problem instance ready for the optimizer: gains and source budget expressed
    // in noise-floor units.
    struct Instance
    {
        EigenChannel channel;
        double ps = 0.0;
    };

    Instance make_instance(const ChannelMatrices &ch, const SystemParams &params);
}

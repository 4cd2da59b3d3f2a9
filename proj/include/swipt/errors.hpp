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

#include <array>
#include <stdexcept>
#include <string>

namespace swipt
{
    class Error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    class DimensionMismatch : public Error
    {
    public:
        using Error::Error;
    };

    class AllZeroChannel : public Error
    {
    public:
        using Error::Error;
    };

    // Raised when a dual point makes the Lagrangian unbounded above. `cut` is the
    // gradient of the violated domain constraint h(alpha, nu, mu) <= 0, ready to be
    // used as a feasibility cut by the ellipsoid solver.
    class UnboundedLagrangian : public Error
    {
    public:
        UnboundedLagrangian(const std::string &what, std::array<double, 3> cut_normal)
            : Error(what), cut(cut_normal) {}

        std::array<double, 3> cut;
    };

    class DegenerateCut : public Error
    {
    public:
        using Error::Error;
    };

    class OracleTooLarge : public Error
    {
    public:
        using Error::Error;
    };
}

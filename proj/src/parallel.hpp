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

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace swipt::detail
{
    // Worker count: hardware concurrency, capped by SWIPT_THREADS when set.
    inline unsigned worker_count(std::size_t tasks)
    {
        unsigned n = std::max(1u, std::thread::hardware_concurrency());
        if (const char *env = std::getenv("SWIPT_THREADS"))
        {
            try
            {
                const long cap = std::stol(env);
                if (cap >= 1)
                    n = std::min<unsigned>(n, static_cast<unsigned>(cap));
            }
            catch (const std::exception &)
            {
            }
        }
        return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(tasks, 1)));
    }

    // Calls fn(i) for i in [0, count) on a small pool. Work is claimed through an
    // atomic counter, so the caller must write results by index.
    template <class Fn>
    void parallel_for(std::size_t count, Fn &&fn)
    {
        const unsigned workers = worker_count(count);
        if (workers <= 1)
        {
            for (std::size_t i = 0; i < count; ++i)
                fn(i);
            return;
        }
        std::atomic<std::size_t> next{0};
        auto body = [&]
        {
            for (std::size_t i = next++; i < count; i = next++)
                fn(i);
        };
        std::vector<std::jthread> pool;
        pool.reserve(workers - 1);
        for (unsigned w = 1; w < workers; ++w)
            pool.emplace_back(body);
        body();
    }
}

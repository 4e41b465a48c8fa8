// SPDX-License-Identifier: Apache-2.0
//
// wishfade: Wishart surrogates for generalized-fading MIMO channels
// Copyright (C) 2026 The wishfade authors
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

#ifndef WISHFADE_MONTECARLO_HPP
#define WISHFADE_MONTECARLO_HPP

#include "wishfade/random.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <vector>

namespace wishfade
{

inline constexpr std::uint64_t kDefaultSeed = 20260101;

// Monte-Carlo run settings. Trials are processed in fixed blocks, each with
// its own derived stream, and block results are merged in block order. The
// outcome therefore depends on (trials, seed) only, never on threads.
struct McConfig
{
    std::uint64_t trials = 100000;
    std::uint64_t seed = kDefaultSeed;
    unsigned threads = 1;

    static constexpr std::uint64_t kBlockSize = 4096;

    void validate() const
    {
        if (trials < 1)
            throw std::invalid_argument("McConfig: trials must be at least 1");
        if (threads < 1)
            throw std::invalid_argument("McConfig: threads must be at least 1");
    }
};

struct McEstimate
{
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t trials = 0;
};

// Running mean and variance (Welford), mergeable (Chan et al.).
class StatAccumulator
{
public:
    void add(double x)
    {
        ++n_;
        const double delta = x - mean_;
        mean_ += delta / static_cast<double>(n_);
        m2_ += delta * (x - mean_);
    }

    void merge(const StatAccumulator &other)
    {
        if (other.n_ == 0)
            return;
        if (n_ == 0)
        {
            *this = other;
            return;
        }
        const double n = static_cast<double>(n_ + other.n_);
        const double delta = other.mean_ - mean_;
        mean_ += delta * static_cast<double>(other.n_) / n;
        m2_ += other.m2_ + delta * delta * static_cast<double>(n_) * static_cast<double>(other.n_) / n;
        n_ += other.n_;
    }

    std::uint64_t count() const { return n_; }
    double mean() const { return mean_; }
    double variance() const { return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0; }
    double std_error() const { return n_ > 1 ? std::sqrt(variance() / static_cast<double>(n_)) : 0.0; }

    McEstimate estimate() const { return {mean_, std_error(), n_}; }

private:
    std::uint64_t n_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

// Runs cfg.trials trials of `trial(stream, out)`, where each trial writes
// `outputs` values into out[0..outputs). Returns one accumulator per output.
// `tag` separates the streams of unrelated estimators sharing one seed.
template <class Trial>
std::vector<StatAccumulator> run_trials(const McConfig &cfg, std::uint64_t tag, std::size_t outputs, Trial trial)
{
    cfg.validate();
    const std::uint64_t blocks = (cfg.trials + McConfig::kBlockSize - 1) / McConfig::kBlockSize;
    std::vector<std::vector<StatAccumulator>> per_block(blocks, std::vector<StatAccumulator>(outputs));

    std::atomic<std::uint64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    const auto worker = [&]() {
        std::vector<double> out(outputs);
        for (;;)
        {
            const std::uint64_t b = next.fetch_add(1);
            if (b >= blocks)
                return;
            try
            {
                RandomStream rng = RandomStream::derive(cfg.seed, b, tag);
                const std::uint64_t begin = b * McConfig::kBlockSize;
                const std::uint64_t end = std::min(cfg.trials, begin + McConfig::kBlockSize);
                auto &acc = per_block[b];
                for (std::uint64_t t = begin; t < end; ++t)
                {
                    trial(rng, out.data());
                    for (std::size_t k = 0; k < outputs; ++k)
                        acc[k].add(out[k]);
                }
            }
            catch (...)
            {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
                next.store(blocks);
                return;
            }
        }
    };

    const unsigned threads = static_cast<unsigned>(std::min<std::uint64_t>(cfg.threads, blocks));
    if (threads <= 1)
    {
        worker();
    }
    else
    {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned i = 0; i < threads; ++i)
            pool.emplace_back(worker);
        for (auto &t : pool)
            t.join();
    }
    if (failure)
        std::rethrow_exception(failure);

    std::vector<StatAccumulator> total(outputs);
    for (const auto &block : per_block)
        for (std::size_t k = 0; k < outputs; ++k)
            total[k].merge(block[k]);
    return total;
}

} // namespace wishfade

#endif

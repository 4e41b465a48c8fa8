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

#ifndef WISHFADE_RANDOM_HPP
#define WISHFADE_RANDOM_HPP

#include <cstdint>
#include <random>

namespace wishfade
{

// splitmix64 finalizer; used to derive independent seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// A seeded random stream. There is no global generator: every sampler takes
// a stream explicitly, and streams for parallel work are derived from
// (seed, block, tag) so they never overlap in practice.
class RandomStream
{
public:
    explicit RandomStream(std::uint64_t seed) : engine_(splitmix64(seed)) {}

    static RandomStream derive(std::uint64_t seed, std::uint64_t block, std::uint64_t tag)
    {
        const std::uint64_t a = splitmix64(seed ^ splitmix64(tag + 0x632BE59BD9B4E019ULL));
        return RandomStream(splitmix64(a + splitmix64(block)));
    }

    double normal() { return normal_(engine_); }
    double uniform() { return uniform_(engine_); }
    double exponential() { return exponential_(engine_); }

    double gamma(double shape, double scale)
    {
        return std::gamma_distribution<double>(shape, scale)(engine_);
    }

    bool bernoulli(double p) { return uniform() < p; }

    std::mt19937_64 &engine() { return engine_; }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};
    std::exponential_distribution<double> exponential_{1.0};
};

} // namespace wishfade

#endif

// SPDX-License-Identifier: Apache-2.0
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

#ifndef RIS_RNG_HPP
#define RIS_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>

// Counter-based random numbers: every draw is a pure function of
// (seed, stream, counter).
namespace ris::rng
{
    constexpr std::uint64_t splitmix64(std::uint64_t x)
    {
        x += 0x9E3779B97F4A7C15ull;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
        return x ^ (x >> 31);
    }

    constexpr std::uint64_t draw(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter)
    {
        return splitmix64(splitmix64(splitmix64(seed) ^ stream) ^ counter);
    }

    __extension__ typedef unsigned __int128 u128;

    // Uniform integer in [0, n), multiply-shift reduction
    inline std::uint64_t uniform_index(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter, std::uint64_t n)
    {
        return std::uint64_t((static_cast<u128>(draw(seed, stream, counter)) * n) >> 64);
    }

    // Uniform double in [0, 1)
    inline double uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter)
    {
        return double(draw(seed, stream, counter) >> 11) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller on two consecutive counters
    inline double normal(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter)
    {
        const double u1 = 1.0 - uniform(seed, stream, 2 * counter);
        const double u2 = uniform(seed, stream, 2 * counter + 1);
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }
}

#endif

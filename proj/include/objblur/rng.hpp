/*******************************************************************************
* Copyright 2026 The objblur Authors
*
* Licensed under the Apache License, Version 2.0 (the "License");
* you may not use this file except in compliance with the License.
* You may obtain a copy of the License at
*
*     http://www.apache.org/licenses/LICENSE-2.0
*
* Unless required by applicable law or agreed to in writing, software
* distributed under the License is distributed on an "AS IS" BASIS,
* WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
* See the License for the specific language governing permissions and
* limitations under the License.
*******************************************************************************/

#pragma once

#include <cstdint>
#include <string_view>

namespace objblur {

std::uint64_t fnv1a64(std::string_view text);

/// splitmix64 finalizer; a bijective 64-bit mix.
constexpr std::uint64_t mix64(std::uint64_t z)
{
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Counter-based generator. The stream is a pure function of the key
/// (seed, purpose, step, id) and the draw index, so any worker can
/// reconstruct it without shared state.
class CounterRng
{
public:
    CounterRng(std::uint64_t seed, std::string_view purpose, std::uint64_t step, std::string_view id = {});

    std::uint64_t next() { return mix64(m_key + 0x9e3779b97f4a7c15ULL * ++m_counter); }

    /// Uniform on [0, 1) with 53 bits of resolution.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n), rejection-sampled to avoid modulo bias. n > 0.
    std::uint64_t below(std::uint64_t n);

    std::uint64_t key() const { return m_key; }
    std::uint64_t draws() const { return m_counter; }

private:
    std::uint64_t m_key;
    std::uint64_t m_counter = 0;
};

} // namespace objblur

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

#include "objblur/rng.hpp"

namespace objblur {

std::uint64_t fnv1a64(std::string_view text)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text)
    {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

CounterRng::CounterRng(std::uint64_t seed, std::string_view purpose, std::uint64_t step, std::string_view id)
{
    std::uint64_t k = mix64(seed ^ 0x6a09e667f3bcc909ULL);
    k               = mix64(k ^ fnv1a64(purpose));
    k               = mix64(k ^ step);
    k               = mix64(k ^ fnv1a64(id));
    m_key           = k;
}

std::uint64_t CounterRng::below(std::uint64_t n)
{
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t v;
    do
    {
        v = next();
    } while (v >= limit);
    return v % n;
}

} // namespace objblur

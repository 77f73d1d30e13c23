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

// Separable OpenMP kernels against the per-pixel reference implementations.

#include <benchmark/benchmark.h>

#include "oracles.hpp"
#include "objblur/compositor.hpp"
#include "objblur/reference.hpp"
#include "objblur/resample.hpp"

using namespace objblur;

namespace {

Image input(int side)
{
    CounterRng rng(1, "bench", static_cast<std::uint64_t>(side));
    return oracle::random_image(rng, side, side, 3);
}

BinaryMask mask(int side)
{
    CounterRng rng(2, "bench-mask", static_cast<std::uint64_t>(side));
    return oracle::random_mask(rng, side, side);
}

void BM_resize(benchmark::State& state)
{
    const int side  = static_cast<int>(state.range(0));
    const Image img = input(side);
    for (auto _ : state)
    {
        benchmark::DoNotOptimize(resize_bilinear(img, {side / 3, side / 3}));
    }
    state.SetItemsProcessed(state.iterations());
}

void BM_resize_reference(benchmark::State& state)
{
    const int side  = static_cast<int>(state.range(0));
    const Image img = input(side);
    for (auto _ : state)
    {
        benchmark::DoNotOptimize(reference::resize_bilinear(img, {side / 3, side / 3}));
    }
    state.SetItemsProcessed(state.iterations());
}

void BM_blur(benchmark::State& state)
{
    const int side  = static_cast<int>(state.range(0));
    const Image img = input(side);
    for (auto _ : state)
    {
        benchmark::DoNotOptimize(blur(img, BlurStrength(0.6), {8, 8}));
    }
    state.SetItemsProcessed(state.iterations());
}

void BM_blur_reference(benchmark::State& state)
{
    const int side  = static_cast<int>(state.range(0));
    const Image img = input(side);
    for (auto _ : state)
    {
        benchmark::DoNotOptimize(reference::blur(img, BlurStrength(0.6), {8, 8}));
    }
    state.SetItemsProcessed(state.iterations());
}

void BM_composite(benchmark::State& state)
{
    const int side       = static_cast<int>(state.range(0));
    const Image hr       = input(side);
    const Image lr       = blur(hr, BlurStrength(0.6), {8, 8});
    const BinaryMask m   = mask(side);
    for (auto _ : state)
    {
        benchmark::DoNotOptimize(composite_objblur(hr, lr, m, true));
    }
    state.SetItemsProcessed(state.iterations());
}

void BM_composite_reference(benchmark::State& state)
{
    const int side       = static_cast<int>(state.range(0));
    const Image hr       = input(side);
    const Image lr       = blur(hr, BlurStrength(0.6), {8, 8});
    const BinaryMask m   = mask(side);
    for (auto _ : state)
    {
        benchmark::DoNotOptimize(reference::composite(hr, lr, m, true));
    }
    state.SetItemsProcessed(state.iterations());
}

} // namespace

BENCHMARK(BM_resize)->Arg(128)->Arg(512);
BENCHMARK(BM_resize_reference)->Arg(128)->Arg(512);
BENCHMARK(BM_blur)->Arg(128)->Arg(512);
BENCHMARK(BM_blur_reference)->Arg(128)->Arg(512);
BENCHMARK(BM_composite)->Arg(128)->Arg(512);
BENCHMARK(BM_composite_reference)->Arg(128)->Arg(512);

BENCHMARK_MAIN();

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

#include <doctest.h>

#include <cmath>
#include <cstring>

#include "corpus.hpp"
#include "oracles.hpp"
#include "objblur/reference.hpp"
#include "objblur/resample.hpp"

using namespace objblur;

namespace {

bool bit_equal(const FloatImage& a, const FloatImage& b)
{
    return a.size() == b.size() && a.channels() == b.channels() &&
           std::memcmp(a.pixels().data(), b.pixels().data(), a.pixels().size_bytes()) == 0;
}

} // namespace

TEST_CASE("2x1 [0, 255] upsampled to 4x1 by hand-evaluated weights")
{
    // out x=0: src -0.25 -> clamp 0      -> 0
    // out x=1: src  0.25 -> 0.75*0 + 0.25*255 = 63.75  -> 64
    // out x=2: src  0.75 -> 0.25*0 + 0.75*255 = 191.25 -> 191
    // out x=3: src  1.25 -> clamp to last -> 255
    const Image src(2, 1, 1, std::vector<std::uint8_t>{0, 255});
    const Image out = resize_bilinear(src, {4, 1});
    CHECK(std::vector<std::uint8_t>(out.pixels().begin(), out.pixels().end()) ==
          std::vector<std::uint8_t>{0, 64, 191, 255});
}

TEST_CASE("same-size resize is byte-identical")
{
    CounterRng rng(3, "identity", 0);
    const Image img = oracle::random_image(rng, 33, 17, 3);
    CHECK(resize_bilinear(img, img.size()) == img);
}

TEST_CASE("constant images stay constant at any size")
{
    for (std::uint8_t v : {0, 1, 77, 128, 254, 255})
    {
        const Image img(20, 13, 3, v);
        for (Size s : {Size{1, 1}, Size{5, 40}, Size{64, 64}, Size{19, 12}})
        {
            const Image out = resize_bilinear(img, s);
            CHECK(out.size() == s);
            CHECK(out == Image(s.width, s.height, 3, v));
        }
    }
}

TEST_CASE("zero target dimension is an argument error")
{
    const Image img(4, 4, 1);
    CHECK_THROWS_AS(resize_bilinear(img, {0, 4}), std::invalid_argument);
    CHECK_THROWS_AS(resize_bilinear(img, {4, 0}), std::invalid_argument);
}

TEST_CASE("separable kernel matches the per-pixel reference exactly")
{
    for (std::uint64_t seed = 0; seed < 60; ++seed)
    {
        CounterRng rng(seed, "resize-ref", 0);
        const int C      = rng.below(2) ? 3 : 1;
        const Image img  = oracle::random_image(rng, 1 + static_cast<int>(rng.below(64)),
                                               1 + static_cast<int>(rng.below(64)), C);
        const Size out{1 + static_cast<int>(rng.below(64)), 1 + static_cast<int>(rng.below(64))};
        CHECK(bit_equal(resize_bilinear(to_float(img), out), reference::resize_bilinear(to_float(img), out)));
        CHECK(resize_bilinear(img, out) == reference::resize_bilinear(img, out));
    }
}

TEST_CASE("large images take the parallel path and still match the reference")
{
    CounterRng rng(11, "resize-large", 0);
    const Image img = oracle::random_image(rng, 300, 200, 3);
    CHECK(resize_bilinear(img, {257, 311}) == reference::resize_bilinear(img, {257, 311}));
    CHECK(resize_bilinear(img, {64, 40}) == reference::resize_bilinear(img, {64, 40}));
}

TEST_CASE("float samples stay within [0, 1]")
{
    CounterRng rng(5, "range", 0);
    const Image img    = oracle::random_image(rng, 40, 40, 3);
    const FloatImage r = resize_bilinear(resize_bilinear(to_float(img), {7, 9}), {40, 40});
    for (float v : r.pixels())
    {
        CHECK(v >= -1e-6f);
        CHECK(v <= 1.0f + 1e-6f);
    }
}

TEST_CASE("strength_to_resolution endpoints and midpoint")
{
    CHECK(strength_to_resolution(BlurStrength(1.0), {128, 128}, {4, 4}) == Size{4, 4});
    CHECK(strength_to_resolution(BlurStrength(0.0), {128, 128}, {4, 4}) == Size{128, 128});
    // 0.5 * 124 + 4 = 66
    CHECK(strength_to_resolution(BlurStrength(0.5), {128, 128}, {4, 4}) == Size{66, 66});
    // 0.75 * (100 - 8) + 8 = 77, 0.75 * (50 - 2) + 2 = 38
    CHECK(strength_to_resolution(BlurStrength(0.25), {100, 50}, {8, 2}) == Size{77, 38});
    // 0.5 * 5 + 1 = 3.5 rounds away from zero
    CHECK(strength_to_resolution(BlurStrength(0.5), {6, 6}, {1, 1}) == Size{4, 4});
}

TEST_CASE("strength_to_resolution rejects a start larger than the image")
{
    CHECK_THROWS_AS(strength_to_resolution(BlurStrength(0.5), {8, 8}, {9, 4}), std::invalid_argument);
    CHECK_THROWS_AS(strength_to_resolution(BlurStrength(0.5), {8, 8}, {0, 4}), std::invalid_argument);
    CHECK_THROWS_AS(BlurStrength(1.5), std::invalid_argument);
    CHECK_THROWS_AS(BlurStrength(-0.1), std::invalid_argument);
}

TEST_CASE("blur at s=0 is a byte-identical copy")
{
    CounterRng rng(2, "clean", 0);
    const Image img = oracle::random_image(rng, 50, 30, 3);
    CHECK(blur(img, BlurStrength(0.0), {4, 4}) == img);
}

TEST_CASE("blur leaves constant images unchanged")
{
    for (double s : {0.0, 0.13, 0.5, 0.99, 1.0})
    {
        const Image img(64, 48, 3, 200);
        CHECK(blur(img, BlurStrength(s), {4, 4}) == img);
    }
}

TEST_CASE("blur matches the reference composition")
{
    const auto natural = fixtures::natural_images();
    for (std::size_t i = 0; i < 5; ++i)
    {
        for (double s : {0.1, 0.5, 0.9, 1.0})
        {
            CHECK(blur(natural[i], BlurStrength(s), {8, 8}) == reference::blur(natural[i], BlurStrength(s), {8, 8}));
        }
    }
}

TEST_CASE("checkerboard at s=1 loses high-frequency energy")
{
    const Image board = oracle::checkerboard(128, 128, 3);
    const Image out   = blur(board, BlurStrength(1.0), {4, 4});
    CHECK(oracle::laplacian_energy(out) < oracle::laplacian_energy(board));
    CHECK(oracle::laplacian_energy(out) < 1.0);
}

TEST_CASE("property: energy is non-increasing in s on natural images")
{
    const auto natural = fixtures::natural_images();
    for (const Image& img : natural)
    {
        const double slack = 0.01 * oracle::laplacian_energy(img);
        double previous    = oracle::laplacian_energy(blur(img, BlurStrength(0.0), {8, 8}));
        for (int k = 1; k <= 10; ++k)
        {
            const double e = oracle::laplacian_energy(blur(img, BlurStrength(k / 10.0), {8, 8}));
            CHECK(e <= previous + slack);
            previous = e;
        }
    }
}

TEST_CASE("property: blur keeps the global mean within 1.5 levels while downscaling by at most 2x")
{
    // Beyond 2x the bilinear taps skip source pixels and the mean is no
    // longer preserved for textured images (up to ~9 levels at s=1, 128->8).
    for (const Image& img : fixtures::natural_images())
    {
        const double mean = oracle::mean_intensity(img);
        for (int k = 1; k <= 10; ++k)
        {
            const BlurStrength s(k / 10.0);
            const Size lr = strength_to_resolution(s, img.size(), {8, 8});
            if (2 * lr.width < img.width() || 2 * lr.height < img.height())
            {
                continue;
            }
            CHECK(std::abs(oracle::mean_intensity(blur(img, s, {8, 8})) - mean) <= 1.5);
        }
    }
}

TEST_CASE("property: blur keeps the mean of smooth images at every strength")
{
    Image img(128, 128, 3);
    for (int y = 0; y < 128; ++y)
    {
        for (int x = 0; x < 128; ++x)
        {
            img.at(x, y, 0) = static_cast<std::uint8_t>(128 + 100 * std::sin(x * 0.03) * std::cos(y * 0.02));
            img.at(x, y, 1) = static_cast<std::uint8_t>(x + y / 2);
            img.at(x, y, 2) = static_cast<std::uint8_t>(200 - y);
        }
    }
    const double mean = oracle::mean_intensity(img);
    for (int k = 0; k <= 10; ++k)
    {
        CHECK(std::abs(oracle::mean_intensity(blur(img, BlurStrength(k / 10.0), {8, 8})) - mean) <= 1.5);
    }
}

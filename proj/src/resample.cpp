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

#include "objblur/resample.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace objblur {

namespace {

struct Tap
{
    int i0;
    int i1;
    float frac;
};

std::vector<Tap> make_taps(int in, int out)
{
    std::vector<Tap> taps(static_cast<std::size_t>(out));
    const float scale = static_cast<float>(in) / static_cast<float>(out);
    for (int d = 0; d < out; ++d)
    {
        float src = (static_cast<float>(d) + 0.5f) * scale - 0.5f;
        if (src < 0.0f)
        {
            src = 0.0f;
        }
        int i0 = static_cast<int>(src);
        if (i0 >= in - 1)
        {
            taps[d] = {in - 1, in - 1, 0.0f};
        }
        else
        {
            taps[d] = {i0, i0 + 1, src - static_cast<float>(i0)};
        }
    }
    return taps;
}

constexpr long parallel_threshold = 1L << 15;

} // namespace

FloatImage resize_bilinear(const FloatImage& img, Size out)
{
    if (out.width < 1 || out.height < 1)
    {
        throw std::invalid_argument("resize target must be at least 1x1, got " +
                                    std::to_string(out.width) + "x" + std::to_string(out.height));
    }
    const int C      = img.channels();
    const auto xtaps = make_taps(img.width(), out.width);
    const auto ytaps = make_taps(img.height(), out.height);

    // Horizontal pass over the source rows the vertical pass will touch.
    std::vector<char> needed(static_cast<std::size_t>(img.height()), 0);
    for (const Tap& t : ytaps)
    {
        needed[t.i0] = 1;
        needed[t.i1] = 1;
    }
    const std::size_t mid_stride = static_cast<std::size_t>(out.width) * C;
    std::vector<float> mid(mid_stride * img.height());
    const long h_work = static_cast<long>(img.height()) * static_cast<long>(mid_stride);

#pragma omp parallel for schedule(static) if (h_work > parallel_threshold)
    for (int y = 0; y < img.height(); ++y)
    {
        if (!needed[y])
        {
            continue;
        }
        const float* src = img.row(y);
        float* dst       = mid.data() + y * mid_stride;
        for (int x = 0; x < out.width; ++x)
        {
            const Tap& t    = xtaps[x];
            const float w0  = 1.0f - t.frac;
            const float* a  = src + static_cast<std::size_t>(t.i0) * C;
            const float* b  = src + static_cast<std::size_t>(t.i1) * C;
            for (int c = 0; c < C; ++c)
            {
                dst[x * C + c] = w0 * a[c] + t.frac * b[c];
            }
        }
    }

    FloatImage result(out.width, out.height, C);
    const long v_work = static_cast<long>(out.height) * static_cast<long>(mid_stride);

#pragma omp parallel for schedule(static) if (v_work > parallel_threshold)
    for (int y = 0; y < out.height; ++y)
    {
        const Tap& t     = ytaps[y];
        const float w0   = 1.0f - t.frac;
        const float* top = mid.data() + t.i0 * mid_stride;
        const float* bot = mid.data() + t.i1 * mid_stride;
        float* dst       = result.row(y);
        for (std::size_t i = 0; i < mid_stride; ++i)
        {
            dst[i] = w0 * top[i] + t.frac * bot[i];
        }
    }
    return result;
}

Image resize_bilinear(const Image& img, Size out)
{
    return to_u8(resize_bilinear(to_float(img), out));
}

Size strength_to_resolution(BlurStrength s, Size full, Size start)
{
    if (start.width < 1 || start.height < 1)
    {
        throw std::invalid_argument("start resolution must be at least 1x1");
    }
    if (start.width > full.width || start.height > full.height)
    {
        throw std::invalid_argument("start resolution " + std::to_string(start.width) + "x" +
                                    std::to_string(start.height) + " exceeds image size " +
                                    std::to_string(full.width) + "x" + std::to_string(full.height));
    }
    const double keep = 1.0 - s.value();
    auto interp       = [keep](int full_px, int start_px) {
        return static_cast<int>(std::lround(keep * (full_px - start_px) + start_px));
    };
    return {interp(full.width, start.width), interp(full.height, start.height)};
}

Image blur(const Image& img, BlurStrength s, Size start)
{
    const Size lr = strength_to_resolution(s, img.size(), start);
    if (s.is_clean() || lr == img.size())
    {
        return img;
    }
    const FloatImage down = resize_bilinear(to_float(img), lr);
    return to_u8(resize_bilinear(down, img.size()));
}

} // namespace objblur

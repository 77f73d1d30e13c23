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

#include "objblur/reference.hpp"

#include <cmath>
#include <stdexcept>

namespace objblur::reference {

namespace {

// Source coordinate for output index d, clamped to the edge.
void source_index(int d, int in, int out, int& i0, int& i1, float& frac)
{
    const float scale = static_cast<float>(in) / static_cast<float>(out);
    float src         = (static_cast<float>(d) + 0.5f) * scale - 0.5f;
    if (src < 0.0f)
    {
        src = 0.0f;
    }
    i0 = static_cast<int>(std::floor(src));
    if (i0 >= in - 1)
    {
        i0   = in - 1;
        i1   = in - 1;
        frac = 0.0f;
        return;
    }
    i1   = i0 + 1;
    frac = src - static_cast<float>(i0);
}

std::uint8_t to_byte(float v)
{
    const float scaled = v * 255.0f;
    if (scaled <= 0.0f)
    {
        return 0;
    }
    if (scaled >= 255.0f)
    {
        return 255;
    }
    return static_cast<std::uint8_t>(std::round(scaled));
}

} // namespace

FloatImage resize_bilinear(const FloatImage& img, Size out)
{
    if (out.width < 1 || out.height < 1)
    {
        throw std::invalid_argument("resize target must be at least 1x1");
    }
    FloatImage result(out.width, out.height, img.channels());
    for (int y = 0; y < out.height; ++y)
    {
        int y0, y1;
        float fy;
        source_index(y, img.height(), out.height, y0, y1, fy);
        for (int x = 0; x < out.width; ++x)
        {
            int x0, x1;
            float fx;
            source_index(x, img.width(), out.width, x0, x1, fx);
            for (int c = 0; c < img.channels(); ++c)
            {
                const float a = img.at(x0, y0, c);
                const float b = img.at(x1, y0, c);
                const float d = img.at(x0, y1, c);
                const float e = img.at(x1, y1, c);
                const float top = (1.0f - fx) * a + fx * b;
                const float bot = (1.0f - fx) * d + fx * e;
                result.at(x, y, c) = (1.0f - fy) * top + fy * bot;
            }
        }
    }
    return result;
}

Image resize_bilinear(const Image& img, Size out)
{
    FloatImage f(img.width(), img.height(), img.channels());
    for (int y = 0; y < img.height(); ++y)
    {
        for (int x = 0; x < img.width(); ++x)
        {
            for (int c = 0; c < img.channels(); ++c)
            {
                f.at(x, y, c) = static_cast<float>(img.at(x, y, c)) * (1.0f / 255.0f);
            }
        }
    }
    const FloatImage r = resize_bilinear(f, out);
    Image result(out.width, out.height, img.channels());
    for (int y = 0; y < out.height; ++y)
    {
        for (int x = 0; x < out.width; ++x)
        {
            for (int c = 0; c < img.channels(); ++c)
            {
                result.at(x, y, c) = to_byte(r.at(x, y, c));
            }
        }
    }
    return result;
}

Image blur(const Image& img, BlurStrength s, Size start)
{
    if (s.value() == 0.0)
    {
        return img;
    }
    const double keep = 1.0 - s.value();
    const Size lr{static_cast<int>(std::lround(keep * (img.width() - start.width) + start.width)),
                  static_cast<int>(std::lround(keep * (img.height() - start.height) + start.height))};
    FloatImage f(img.width(), img.height(), img.channels());
    for (int y = 0; y < img.height(); ++y)
    {
        for (int x = 0; x < img.width(); ++x)
        {
            for (int c = 0; c < img.channels(); ++c)
            {
                f.at(x, y, c) = static_cast<float>(img.at(x, y, c)) * (1.0f / 255.0f);
            }
        }
    }
    const FloatImage up = resize_bilinear(resize_bilinear(f, lr), img.size());
    Image result(img.width(), img.height(), img.channels());
    for (int y = 0; y < img.height(); ++y)
    {
        for (int x = 0; x < img.width(); ++x)
        {
            for (int c = 0; c < img.channels(); ++c)
            {
                result.at(x, y, c) = to_byte(up.at(x, y, c));
            }
        }
    }
    return result;
}

Image composite(const Image& hr, const Image& lr, const BinaryMask& mask, bool blur_objects)
{
    if (hr.size() != lr.size() || hr.channels() != lr.channels() || hr.size() != mask.size())
    {
        throw std::invalid_argument("composite: dimension mismatch");
    }
    Image out(hr.width(), hr.height(), hr.channels());
    for (int y = 0; y < hr.height(); ++y)
    {
        for (int x = 0; x < hr.width(); ++x)
        {
            const bool inside  = mask.test(x, y);
            const bool use_low = blur_objects ? inside : !inside;
            for (int c = 0; c < hr.channels(); ++c)
            {
                out.at(x, y, c) = use_low ? lr.at(x, y, c) : hr.at(x, y, c);
            }
        }
    }
    return out;
}

} // namespace objblur::reference

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

#include "objblur/image.hpp"

#include <cmath>
#include <string>

namespace objblur {

namespace {

void check_shape(int width, int height, int channels)
{
    if (width <= 0 || height <= 0)
    {
        throw std::invalid_argument("image dimensions must be positive");
    }
    if (channels != 1 && channels != 3)
    {
        throw std::invalid_argument("image must have 1 or 3 channels, got " +
                                    std::to_string(channels));
    }
}

} // namespace

Image::Image(int width, int height, int channels, std::uint8_t fill)
    : m_width(width)
    , m_height(height)
    , m_channels(channels)
{
    check_shape(width, height, channels);
    m_data.assign(static_cast<std::size_t>(width) * height * channels, fill);
}

Image::Image(int width, int height, int channels, std::vector<std::uint8_t> data)
    : m_width(width)
    , m_height(height)
    , m_channels(channels)
    , m_data(std::move(data))
{
    check_shape(width, height, channels);
    if (m_data.size() != static_cast<std::size_t>(width) * height * channels)
    {
        throw std::invalid_argument("image buffer length does not match width*height*channels");
    }
}

FloatImage::FloatImage(int width, int height, int channels, float fill)
    : m_width(width)
    , m_height(height)
    , m_channels(channels)
{
    check_shape(width, height, channels);
    m_data.assign(static_cast<std::size_t>(width) * height * channels, fill);
}

FloatImage to_float(const Image& img)
{
    FloatImage out(img.width(), img.height(), img.channels());
    auto src = img.pixels();
    auto dst = out.pixels();
    constexpr float inv = 1.0f / 255.0f;
    for (std::size_t i = 0; i < src.size(); ++i)
    {
        dst[i] = static_cast<float>(src[i]) * inv;
    }
    return out;
}

std::uint8_t quantize(float v)
{
    const float scaled = v * 255.0f;
    if (!(scaled > 0.0f))
    {
        return 0;
    }
    if (scaled >= 255.0f)
    {
        return 255;
    }
    // non-negative here, so half away from zero is floor(x + 0.5)
    return static_cast<std::uint8_t>(std::lround(scaled));
}

Image to_u8(const FloatImage& img)
{
    Image out(img.width(), img.height(), img.channels());
    auto src = img.pixels();
    auto dst = out.pixels();
    for (std::size_t i = 0; i < src.size(); ++i)
    {
        dst[i] = quantize(src[i]);
    }
    return out;
}

} // namespace objblur

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

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace objblur {

/// Pixel dimensions of an image or of a resampling target.
struct Size
{
    int width  = 0;
    int height = 0;

    friend bool operator==(const Size&, const Size&) = default;
};

/// Row-major, channel-interleaved 8-bit image. Channels are 1 or 3.
class Image
{
public:
    Image() = default;
    Image(int width, int height, int channels, std::uint8_t fill = 0);
    Image(int width, int height, int channels, std::vector<std::uint8_t> data);

    int width() const { return m_width; }
    int height() const { return m_height; }
    int channels() const { return m_channels; }
    Size size() const { return {m_width, m_height}; }
    bool empty() const { return m_data.empty(); }

    std::size_t row_stride() const { return static_cast<std::size_t>(m_width) * m_channels; }

    std::span<std::uint8_t> pixels() { return m_data; }
    std::span<const std::uint8_t> pixels() const { return m_data; }

    std::uint8_t* row(int y) { return m_data.data() + y * row_stride(); }
    const std::uint8_t* row(int y) const { return m_data.data() + y * row_stride(); }

    std::uint8_t& at(int x, int y, int c) { return m_data[(y * row_stride()) + x * m_channels + c]; }
    std::uint8_t at(int x, int y, int c) const
    {
        return m_data[(y * row_stride()) + x * m_channels + c];
    }

    friend bool operator==(const Image&, const Image&) = default;

private:
    int m_width    = 0;
    int m_height   = 0;
    int m_channels = 0;
    std::vector<std::uint8_t> m_data;
};

/// Float32 working representation, samples nominally in [0, 1].
class FloatImage
{
public:
    FloatImage() = default;
    FloatImage(int width, int height, int channels, float fill = 0.0f);

    int width() const { return m_width; }
    int height() const { return m_height; }
    int channels() const { return m_channels; }
    Size size() const { return {m_width, m_height}; }

    std::size_t row_stride() const { return static_cast<std::size_t>(m_width) * m_channels; }

    std::span<float> pixels() { return m_data; }
    std::span<const float> pixels() const { return m_data; }

    float* row(int y) { return m_data.data() + y * row_stride(); }
    const float* row(int y) const { return m_data.data() + y * row_stride(); }

    float& at(int x, int y, int c) { return m_data[(y * row_stride()) + x * m_channels + c]; }
    float at(int x, int y, int c) const { return m_data[(y * row_stride()) + x * m_channels + c]; }

    friend bool operator==(const FloatImage&, const FloatImage&) = default;

private:
    int m_width    = 0;
    int m_height   = 0;
    int m_channels = 0;
    std::vector<float> m_data;
};

/// 8-bit to float in [0, 1].
FloatImage to_float(const Image& img);

/// Float back to 8-bit: scale by 255, round half away from zero, clamp to [0, 255].
Image to_u8(const FloatImage& img);

std::uint8_t quantize(float v);

/// Blur strength s in [0, 1]; 1 is the strongest blur, 0 is the clean image.
class BlurStrength
{
public:
    constexpr BlurStrength() = default;
    explicit BlurStrength(double value)
        : m_value(value)
    {
        if (!(value >= 0.0 && value <= 1.0))
        {
            throw std::invalid_argument("blur strength must lie in [0, 1]");
        }
    }

    constexpr double value() const { return m_value; }
    constexpr bool is_clean() const { return m_value == 0.0; }

    friend constexpr bool operator==(BlurStrength, BlurStrength) = default;

private:
    double m_value = 0.0;
};

} // namespace objblur

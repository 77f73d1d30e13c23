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

#include "objblur/compositor.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>

namespace objblur {

namespace {

void check_pair(const Image& hr, const Image& lr)
{
    if (hr.size() != lr.size() || hr.channels() != lr.channels())
    {
        throw std::invalid_argument("composite: hr and lr dimensions differ");
    }
}

constexpr long parallel_threshold = 1L << 16;

} // namespace

BlurVariant parse_variant(std::string_view text)
{
    if (text == "objblur") return BlurVariant::objblur;
    if (text == "fullblur") return BlurVariant::fullblur;
    if (text == "cutblur") return BlurVariant::cutblur;
    if (text == "randmask") return BlurVariant::randmask;
    if (text == "none") return BlurVariant::none;
    throw std::invalid_argument("unknown variant '" + std::string(text) + "'");
}

std::string_view to_string(BlurVariant v)
{
    switch (v)
    {
    case BlurVariant::objblur: return "objblur";
    case BlurVariant::fullblur: return "fullblur";
    case BlurVariant::cutblur: return "cutblur";
    case BlurVariant::randmask: return "randmask";
    case BlurVariant::none: return "none";
    }
    return "?";
}

std::string_view to_string(Branch b)
{
    switch (b)
    {
    case Branch::objects: return "objects";
    case Branch::background: return "background";
    case Branch::full: return "full";
    case Branch::patch: return "patch";
    case Branch::clean: return "clean";
    }
    return "?";
}

void BlurPolicy::validate() const
{
    if (!(p_obj >= 0.0 && p_obj <= 1.0))
    {
        throw std::invalid_argument("p_obj must lie in [0, 1]");
    }
    if (start.width < 1 || start.height < 1)
    {
        throw std::invalid_argument("start resolution must be at least 1x1");
    }
    if (!(cutblur_area.min_frac > 0.0 && cutblur_area.min_frac <= cutblur_area.max_frac &&
          cutblur_area.max_frac < 1.0))
    {
        throw std::invalid_argument("cutblur area range must satisfy 0 < min <= max < 1");
    }
}

BranchDecision decide_branch(double u, double p_obj)
{
    return {u < p_obj, u};
}

Image composite_objblur(const Image& hr, const Image& lr, const BinaryMask& mask, bool blur_objects)
{
    check_pair(hr, lr);
    if (hr.size() != mask.size())
    {
        throw std::invalid_argument("composite: mask dimensions differ from the image");
    }
    Image out(hr.width(), hr.height(), hr.channels());
    const int C              = hr.channels();
    const std::uint8_t want  = blur_objects ? 1 : 0;
    const long work          = static_cast<long>(hr.height()) * static_cast<long>(hr.row_stride());

#pragma omp parallel for schedule(static) if (work > parallel_threshold)
    for (int y = 0; y < hr.height(); ++y)
    {
        const std::uint8_t* m = mask.row(y);
        const std::uint8_t* h = hr.row(y);
        const std::uint8_t* l = lr.row(y);
        std::uint8_t* o       = out.row(y);
        // copy maximal runs of equal mask bits
        int x = 0;
        while (x < hr.width())
        {
            const std::uint8_t bit = m[x];
            int end                = x + 1;
            while (end < hr.width() && m[end] == bit)
            {
                ++end;
            }
            const std::uint8_t* src = bit == want ? l : h;
            std::memcpy(o + x * C, src + x * C, static_cast<std::size_t>(end - x) * C);
            x = end;
        }
    }
    return out;
}

Image composite_fullblur(const Image& hr, const Image& lr)
{
    check_pair(hr, lr);
    return lr;
}

Image composite_cutblur(const Image& hr, const Image& lr, const BBox& patch)
{
    check_pair(hr, lr);
    if (patch.x < 0.0f || patch.y < 0.0f || patch.w <= 0.0f || patch.h <= 0.0f ||
        patch.x + patch.w > static_cast<float>(hr.width()) ||
        patch.y + patch.h > static_cast<float>(hr.height()))
    {
        throw std::invalid_argument("cutblur patch lies outside the image");
    }
    const PixelRect r  = snap_to_pixels(patch, hr.size());
    Image out          = hr;
    const int C        = hr.channels();
    for (int y = r.y0; y < r.y1; ++y)
    {
        std::memcpy(out.row(y) + r.x0 * C, lr.row(y) + r.x0 * C, static_cast<std::size_t>(r.width()) * C);
    }
    return out;
}

Image composite_randmask(const Image& hr, const Image& lr, const BinaryMask& foreign_mask, bool blur_objects)
{
    return composite_objblur(hr, lr, foreign_mask, blur_objects);
}

BBox draw_cutblur_patch(CounterRng& rng, Size image, AreaRange area, std::vector<double>& draws)
{
    const double u_area   = rng.uniform();
    const double u_aspect = rng.uniform();
    const double u_x      = rng.uniform();
    const double u_y      = rng.uniform();
    draws.insert(draws.end(), {u_area, u_aspect, u_x, u_y});

    const double frac   = area.min_frac + u_area * (area.max_frac - area.min_frac);
    const double aspect = std::exp((2.0 * u_aspect - 1.0) * std::log(2.0));
    const double pixels = frac * image.width * image.height;
    const int w = std::clamp(static_cast<int>(std::lround(std::sqrt(pixels * aspect))), 1, image.width);
    const int h = std::clamp(static_cast<int>(std::lround(std::sqrt(pixels / aspect))), 1, image.height);
    const int x = static_cast<int>(std::floor(u_x * (image.width - w + 1)));
    const int y = static_cast<int>(std::floor(u_y * (image.height - h + 1)));
    return BBox{static_cast<float>(x), static_cast<float>(y), static_cast<float>(w), static_cast<float>(h)};
}

} // namespace objblur

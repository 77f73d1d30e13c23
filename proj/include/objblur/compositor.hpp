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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "objblur/image.hpp"
#include "objblur/layouts.hpp"
#include "objblur/rng.hpp"

namespace objblur {

enum class BlurVariant
{
    objblur,
    fullblur,
    cutblur,
    randmask,
    none,
};

BlurVariant parse_variant(std::string_view text);
std::string_view to_string(BlurVariant v);

/// Patch area as a fraction of the image area, for the cutblur variant.
struct AreaRange
{
    double min_frac = 0.1;
    double max_frac = 0.5;

    friend bool operator==(const AreaRange&, const AreaRange&) = default;
};

struct BlurPolicy
{
    BlurVariant variant = BlurVariant::objblur;
    double p_obj        = 0.5;
    Size start{8, 8};
    AreaRange cutblur_area;

    void validate() const;

    friend bool operator==(const BlurPolicy&, const BlurPolicy&) = default;
};

/// Which region of the output carries the low-resolution pixels.
enum class Branch
{
    objects,
    background,
    full,
    patch,
    clean,
};

std::string_view to_string(Branch b);

struct BranchDecision
{
    bool blur_objects = false;
    double rng_draw   = 0.0;
};

/// blur_objects iff u < p_obj, with u uniform on [0, 1).
BranchDecision decide_branch(double u, double p_obj);

/// Hard per-pixel selection: with blur_objects, lr inside the mask and hr
/// outside; otherwise the reverse. hr, lr and mask must share dimensions.
Image composite_objblur(const Image& hr, const Image& lr, const BinaryMask& mask, bool blur_objects);

Image composite_fullblur(const Image& hr, const Image& lr);

/// Pastes lr into hr over the pixel-snapped patch. The patch must lie inside
/// the image.
Image composite_cutblur(const Image& hr, const Image& lr, const BBox& patch);

/// Same arithmetic as composite_objblur, with a mask taken from another layout.
Image composite_randmask(const Image& hr, const Image& lr, const BinaryMask& foreign_mask, bool blur_objects);

/// Draws a cutblur patch: area fraction uniform in the range, aspect ratio
/// log-uniform in [1/2, 2], offset uniform over valid integer positions.
/// The raw uniforms are appended to `draws`.
BBox draw_cutblur_patch(CounterRng& rng, Size image, AreaRange area, std::vector<double>& draws);

struct Provenance
{
    std::int64_t step       = 0;
    std::size_t batch_index = 0;
    std::string image_id;
    double strength = 0.0;
    Size lr_size;
    BlurVariant variant = BlurVariant::objblur;
    Branch branch       = Branch::clean;
    std::optional<BranchDecision> decision;
    std::vector<double> draws;
    std::string region; // mask digest, patch rectangle, or empty
    std::string foreign_image_id;
};

struct AugmentedSample
{
    Image image;
    Layout layout;
    Provenance provenance;
};

} // namespace objblur

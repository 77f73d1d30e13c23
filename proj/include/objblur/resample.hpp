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

#include "objblur/image.hpp"

namespace objblur {

/// Bilinear resize with half-pixel centers: the source coordinate of output
/// pixel d is (d + 0.5) * (in / out) - 0.5, clamped to the edge. Arithmetic is
/// float32 and separable; the result is identical to evaluating the bilinear
/// formula independently for every output pixel.
///
/// Rows are distributed over OpenMP threads for large outputs. Inside an
/// enclosing parallel region the kernel runs serially.
FloatImage resize_bilinear(const FloatImage& img, Size out);

/// 8-bit convenience wrapper: converts to float, resizes, rounds back.
Image resize_bilinear(const Image& img, Size out);

/// Intermediate resolution for blur strength s:
///   W_t = round((1 - s) * (W - W0) + W0), likewise H_t,
/// rounding half away from zero. s = 1 gives the start size, s = 0 the full size.
Size strength_to_resolution(BlurStrength s, Size full, Size start);

/// Down-resizes to strength_to_resolution(s) and back up to the original
/// size, keeping the intermediate in float32. s = 0 returns an exact copy.
Image blur(const Image& img, BlurStrength s, Size start);

} // namespace objblur

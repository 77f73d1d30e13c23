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

// Serial, per-pixel reference kernels. They evaluate each output pixel
// directly from its defining formula and share no code with the optimized
// kernels; tests and benchmarks compare the two.

#include "objblur/image.hpp"
#include "objblur/layouts.hpp"

namespace objblur::reference {

FloatImage resize_bilinear(const FloatImage& img, Size out);

Image resize_bilinear(const Image& img, Size out);

Image blur(const Image& img, BlurStrength s, Size start);

/// Per-pixel hard selection between hr and lr by mask bit and branch.
Image composite(const Image& hr, const Image& lr, const BinaryMask& mask, bool blur_objects);

} // namespace objblur::reference

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

#include <cstdint>
#include <filesystem>
#include <vector>

#include "objblur/image.hpp"
#include "objblur/layouts.hpp"

namespace objblur::fixtures {

/// Directory holding the 128x128 natural test images.
std::filesystem::path natural_dir();

/// The 20 natural test images, in file-name order.
std::vector<Image> natural_images();

struct CorpusOptions
{
    std::size_t images = 64;
    std::uint64_t seed = 7;
};

/// Writes `images` PNGs derived from the natural images (flips and
/// transposes) plus manifest.json with 3 to 8 fractional boxes per image,
/// all of which pass the default filter rules. Returns the manifest path.
std::filesystem::path write_corpus(const std::filesystem::path& dir, const CorpusOptions& options = {});

/// A fresh, empty directory under the system temp dir.
std::filesystem::path scratch_dir(const std::string& name);

} // namespace objblur::fixtures

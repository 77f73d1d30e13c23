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
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "objblur/image.hpp"

namespace objblur::io {

class DecodeError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Decodes PNG or JPEG (sniffed from the signature) into 3-channel 8-bit RGB.
/// Grayscale is replicated across channels; alpha is dropped.
Image decode(std::span<const std::uint8_t> bytes);

Image load(const std::filesystem::path& path);

std::vector<std::uint8_t> encode_png(const Image& img);

void save_png(const Image& img, const std::filesystem::path& path);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);

} // namespace objblur::io

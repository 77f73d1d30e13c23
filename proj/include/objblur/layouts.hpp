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
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "objblur/image.hpp"

namespace objblur {

/// Axis-aligned box in pixel units, (x, y) is the top-left corner.
struct BBox
{
    float x = 0.0f;
    float y = 0.0f;
    float w = 0.0f;
    float h = 0.0f;

    float area() const { return w * h; }

    friend bool operator==(const BBox&, const BBox&) = default;
};

struct LayoutObject
{
    BBox box;
    int class_id = 0;

    friend bool operator==(const LayoutObject&, const LayoutObject&) = default;
};

struct Layout
{
    std::string image_id;
    std::string file; // as written in the manifest, relative to the image root
    Size image_size;
    std::vector<LayoutObject> objects; // manifest order

    friend bool operator==(const Layout&, const Layout&) = default;
};

struct Category
{
    int id = 0;
    std::string name;

    friend bool operator==(const Category&, const Category&) = default;
};

struct ManifestWarning
{
    std::string image_id;
    std::size_t object_index = 0;
    std::string message;
};

struct Manifest
{
    std::vector<Category> categories;
    std::vector<Layout> layouts;
    std::vector<ManifestWarning> warnings;
};

/// Malformed JSON. Carries the 1-based line and column of the failure.
class ManifestParseError : public std::runtime_error
{
public:
    ManifestParseError(const std::string& what, std::size_t line, std::size_t column)
        : std::runtime_error(what)
        , m_line(line)
        , m_column(column)
    {
    }

    std::size_t line() const { return m_line; }
    std::size_t column() const { return m_column; }

private:
    std::size_t m_line;
    std::size_t m_column;
};

/// Well-formed JSON that does not follow the manifest schema. field() names
/// the offending field, e.g. "images[3].objects[0].bbox".
class ManifestSchemaError : public std::runtime_error
{
public:
    ManifestSchemaError(std::string field, const std::string& what)
        : std::runtime_error(field + ": " + what)
        , m_field(std::move(field))
    {
    }

    const std::string& field() const { return m_field; }

private:
    std::string m_field;
};

/// Parses the JSON manifest dialect. Boxes reaching past the image are clamped
/// and boxes left with no area are dropped; both produce a warning.
Manifest parse_manifest(std::string_view text);

Manifest load_manifest(const std::filesystem::path& path);

/// Inverse of parse_manifest for a warning-free manifest.
std::string serialize_manifest(const Manifest& manifest);

struct FilterRules
{
    double min_area_frac = 0.02;
    std::size_t min_objects = 3;
    std::size_t max_objects = 8;
    std::vector<int> excluded_class_ids;
};

struct FilterStats
{
    std::size_t boxes_removed_by_area  = 0;
    std::size_t boxes_removed_by_class = 0;
    std::size_t layouts_dropped_too_few  = 0;
    std::size_t layouts_dropped_too_many = 0;

    std::size_t layouts_dropped() const { return layouts_dropped_too_few + layouts_dropped_too_many; }
};

std::vector<Layout> filter_layouts(const std::vector<Layout>& layouts, const FilterRules& rules,
                                   FilterStats* stats = nullptr);

/// Integer pixel rectangle, half-open: [x0, x1) x [y0, y1).
struct PixelRect
{
    int x0 = 0;
    int y0 = 0;
    int x1 = 0;
    int y1 = 0;

    int width() const { return x1 - x0; }
    int height() const { return y1 - y0; }
    bool empty() const { return x1 <= x0 || y1 <= y0; }

    friend bool operator==(const PixelRect&, const PixelRect&) = default;
};

/// Snaps a box to the pixel grid: floor on the leading edge, ceil on the
/// trailing (exclusive) edge, clamped to the image.
PixelRect snap_to_pixels(const BBox& box, Size image_size);

/// One byte per pixel (0 or 1), row-major.
class BinaryMask
{
public:
    BinaryMask() = default;
    BinaryMask(int width, int height);

    int width() const { return m_width; }
    int height() const { return m_height; }
    Size size() const { return {m_width, m_height}; }

    bool test(int x, int y) const { return m_bits[static_cast<std::size_t>(y) * m_width + x] != 0; }
    void set(int x, int y) { m_bits[static_cast<std::size_t>(y) * m_width + x] = 1; }
    void fill(const PixelRect& rect);

    const std::uint8_t* row(int y) const { return m_bits.data() + static_cast<std::size_t>(y) * m_width; }
    const std::vector<std::uint8_t>& bits() const { return m_bits; }

    std::size_t popcount() const;

    friend bool operator==(const BinaryMask&, const BinaryMask&) = default;

private:
    int m_width  = 0;
    int m_height = 0;
    std::vector<std::uint8_t> m_bits;
};

BinaryMask rasterize_mask(const Layout& layout);

/// Rasterizes `objects` given in the coordinate frame of `source` onto an
/// image of size `target`, scaling box coordinates proportionally.
BinaryMask rasterize_mask_scaled(const Layout& source, Size target);

} // namespace objblur

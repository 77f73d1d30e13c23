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

#include "objblur/layouts.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

namespace objblur {

using nlohmann::json;

namespace {

const json& require(const json& obj, const char* key, const std::string& path)
{
    auto it = obj.find(key);
    if (it == obj.end())
    {
        throw ManifestSchemaError(path + "." + key, "missing required field");
    }
    return *it;
}

int require_int(const json& obj, const char* key, const std::string& path)
{
    const json& v = require(obj, key, path);
    if (!v.is_number_integer())
    {
        throw ManifestSchemaError(path + "." + key, "expected an integer");
    }
    return v.get<int>();
}

std::string require_string(const json& obj, const char* key, const std::string& path)
{
    const json& v = require(obj, key, path);
    if (!v.is_string())
    {
        throw ManifestSchemaError(path + "." + key, "expected a string");
    }
    return v.get<std::string>();
}

const json& require_array(const json& obj, const char* key, const std::string& path)
{
    const json& v = require(obj, key, path);
    if (!v.is_array())
    {
        throw ManifestSchemaError(path + "." + key, "expected an array");
    }
    return v;
}

std::string at_index(const std::string& path, std::size_t i)
{
    return path + "[" + std::to_string(i) + "]";
}

// Clamps a box to the image. Returns false if nothing of it remains inside.
bool clamp_box(BBox& box, Size size)
{
    const float W = static_cast<float>(size.width);
    const float H = static_cast<float>(size.height);
    // (x + w) - x need not equal w in float; only touch edges that cross
    if (box.x < 0.0f || box.x + box.w > W)
    {
        const float x0 = std::clamp(box.x, 0.0f, W);
        const float x1 = std::clamp(box.x + box.w, 0.0f, W);
        box.x          = x0;
        box.w          = x1 - x0;
    }
    if (box.y < 0.0f || box.y + box.h > H)
    {
        const float y0 = std::clamp(box.y, 0.0f, H);
        const float y1 = std::clamp(box.y + box.h, 0.0f, H);
        box.y          = y0;
        box.h          = y1 - y0;
    }
    return box.w > 0.0f && box.h > 0.0f;
}

Layout parse_image(const json& entry, const std::string& path, const std::set<int>& category_ids,
                   std::vector<ManifestWarning>& warnings)
{
    if (!entry.is_object())
    {
        throw ManifestSchemaError(path, "expected an object");
    }
    Layout layout;
    const json& id = require(entry, "id", path);
    if (id.is_string())
    {
        layout.image_id = id.get<std::string>();
    }
    else if (id.is_number_integer())
    {
        layout.image_id = std::to_string(id.get<long long>());
    }
    else
    {
        throw ManifestSchemaError(path + ".id", "expected a string");
    }
    layout.file              = require_string(entry, "file", path);
    layout.image_size.width  = require_int(entry, "width", path);
    layout.image_size.height = require_int(entry, "height", path);
    if (layout.image_size.width <= 0)
    {
        throw ManifestSchemaError(path + ".width", "must be positive");
    }
    if (layout.image_size.height <= 0)
    {
        throw ManifestSchemaError(path + ".height", "must be positive");
    }

    const json& objects = require_array(entry, "objects", path);
    for (std::size_t j = 0; j < objects.size(); ++j)
    {
        const std::string opath = at_index(path + ".objects", j);
        const json& obj         = objects[j];
        if (!obj.is_object())
        {
            throw ManifestSchemaError(opath, "expected an object");
        }
        const json& bbox = require(obj, "bbox", opath);
        if (!bbox.is_array() || bbox.size() != 4 ||
            !std::all_of(bbox.begin(), bbox.end(), [](const json& v) { return v.is_number(); }))
        {
            throw ManifestSchemaError(opath + ".bbox", "expected [x, y, w, h] numbers");
        }
        LayoutObject o;
        o.class_id = require_int(obj, "category_id", opath);
        if (!category_ids.contains(o.class_id))
        {
            throw ManifestSchemaError(opath + ".category_id",
                                      "unknown category " + std::to_string(o.class_id));
        }
        o.box = BBox{bbox[0].get<float>(), bbox[1].get<float>(), bbox[2].get<float>(),
                     bbox[3].get<float>()};
        const BBox original = o.box;
        if (!clamp_box(o.box, layout.image_size))
        {
            warnings.push_back({layout.image_id, j, "box has no area inside the image; dropped"});
            continue;
        }
        if (!(o.box == original))
        {
            std::ostringstream msg;
            msg << "box [" << original.x << ", " << original.y << ", " << original.w << ", "
                << original.h << "] exceeds the " << layout.image_size.width << "x"
                << layout.image_size.height << " image; clamped to [" << o.box.x << ", "
                << o.box.y << ", " << o.box.w << ", " << o.box.h << "]";
            warnings.push_back({layout.image_id, j, msg.str()});
        }
        layout.objects.push_back(o);
    }
    return layout;
}

} // namespace

Manifest parse_manifest(std::string_view text)
{
    json doc;
    try
    {
        doc = json::parse(text.begin(), text.end());
    }
    catch (const json::parse_error& e)
    {
        const std::size_t offset = e.byte == 0 ? 0 : std::min<std::size_t>(e.byte - 1, text.size());
        const auto head          = text.substr(0, offset);
        const std::size_t line   = 1 + static_cast<std::size_t>(std::count(head.begin(), head.end(), '\n'));
        const auto nl            = head.rfind('\n');
        const std::size_t column = nl == std::string_view::npos ? offset + 1 : offset - nl;
        throw ManifestParseError("manifest line " + std::to_string(line) + ", column " +
                                     std::to_string(column) + ": " + e.what(),
                                 line, column);
    }

    if (!doc.is_object())
    {
        throw ManifestSchemaError("<root>", "expected an object");
    }

    Manifest manifest;
    std::set<int> category_ids;
    const json& categories = require_array(doc, "categories", "<root>");
    for (std::size_t i = 0; i < categories.size(); ++i)
    {
        const std::string path = at_index("categories", i);
        if (!categories[i].is_object())
        {
            throw ManifestSchemaError(path, "expected an object");
        }
        Category c{require_int(categories[i], "id", path), require_string(categories[i], "name", path)};
        category_ids.insert(c.id);
        manifest.categories.push_back(std::move(c));
    }

    std::set<std::string> seen_ids;
    const json& images = require_array(doc, "images", "<root>");
    for (std::size_t i = 0; i < images.size(); ++i)
    {
        const std::string path = at_index("images", i);
        Layout layout          = parse_image(images[i], path, category_ids, manifest.warnings);
        if (!seen_ids.insert(layout.image_id).second)
        {
            throw ManifestSchemaError(path + ".id", "duplicate image id '" + layout.image_id + "'");
        }
        manifest.layouts.push_back(std::move(layout));
    }
    return manifest;
}

Manifest load_manifest(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
    {
        throw std::runtime_error("cannot open manifest " + path.string());
    }
    std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    return parse_manifest(text);
}

std::string serialize_manifest(const Manifest& manifest)
{
    json doc;
    doc["categories"] = json::array();
    for (const auto& c : manifest.categories)
    {
        doc["categories"].push_back({{"id", c.id}, {"name", c.name}});
    }
    doc["images"] = json::array();
    for (const auto& l : manifest.layouts)
    {
        json objects = json::array();
        for (const auto& o : l.objects)
        {
            objects.push_back({{"bbox", {o.box.x, o.box.y, o.box.w, o.box.h}}, {"category_id", o.class_id}});
        }
        doc["images"].push_back({{"id", l.image_id},
                                 {"file", l.file},
                                 {"width", l.image_size.width},
                                 {"height", l.image_size.height},
                                 {"objects", std::move(objects)}});
    }
    return doc.dump(1);
}

std::vector<Layout> filter_layouts(const std::vector<Layout>& layouts, const FilterRules& rules,
                                   FilterStats* stats)
{
    FilterStats local;
    std::vector<Layout> out;
    out.reserve(layouts.size());
    for (const auto& layout : layouts)
    {
        Layout kept         = layout;
        kept.objects.clear();
        const double image_area = static_cast<double>(layout.image_size.width) * layout.image_size.height;
        for (const auto& o : layout.objects)
        {
            if (std::find(rules.excluded_class_ids.begin(), rules.excluded_class_ids.end(), o.class_id) !=
                rules.excluded_class_ids.end())
            {
                ++local.boxes_removed_by_class;
                continue;
            }
            const double frac = static_cast<double>(o.box.w) * static_cast<double>(o.box.h) / image_area;
            if (frac < rules.min_area_frac)
            {
                ++local.boxes_removed_by_area;
                continue;
            }
            kept.objects.push_back(o);
        }
        if (kept.objects.size() < rules.min_objects)
        {
            ++local.layouts_dropped_too_few;
            continue;
        }
        if (kept.objects.size() > rules.max_objects)
        {
            ++local.layouts_dropped_too_many;
            continue;
        }
        out.push_back(std::move(kept));
    }
    if (stats)
    {
        *stats = local;
    }
    return out;
}

PixelRect snap_to_pixels(const BBox& box, Size image_size)
{
    auto snap_lo = [](float v, int limit) {
        return std::clamp(static_cast<int>(std::floor(v)), 0, limit);
    };
    auto snap_hi = [](float v, int limit) {
        return std::clamp(static_cast<int>(std::ceil(v)), 0, limit);
    };
    return PixelRect{snap_lo(box.x, image_size.width), snap_lo(box.y, image_size.height),
                     snap_hi(box.x + box.w, image_size.width), snap_hi(box.y + box.h, image_size.height)};
}

BinaryMask::BinaryMask(int width, int height)
    : m_width(width)
    , m_height(height)
{
    if (width <= 0 || height <= 0)
    {
        throw std::invalid_argument("mask dimensions must be positive");
    }
    m_bits.assign(static_cast<std::size_t>(width) * height, 0);
}

void BinaryMask::fill(const PixelRect& rect)
{
    const int x0 = std::max(rect.x0, 0);
    const int x1 = std::min(rect.x1, m_width);
    const int y0 = std::max(rect.y0, 0);
    const int y1 = std::min(rect.y1, m_height);
    if (x1 <= x0)
    {
        return;
    }
    for (int y = y0; y < y1; ++y)
    {
        auto* r = m_bits.data() + static_cast<std::size_t>(y) * m_width;
        std::fill(r + x0, r + x1, std::uint8_t{1});
    }
}

std::size_t BinaryMask::popcount() const
{
    return static_cast<std::size_t>(std::count(m_bits.begin(), m_bits.end(), std::uint8_t{1}));
}

BinaryMask rasterize_mask(const Layout& layout)
{
    BinaryMask mask(layout.image_size.width, layout.image_size.height);
    for (const auto& o : layout.objects)
    {
        mask.fill(snap_to_pixels(o.box, layout.image_size));
    }
    return mask;
}

BinaryMask rasterize_mask_scaled(const Layout& source, Size target)
{
    if (source.image_size == target)
    {
        return rasterize_mask(source);
    }
    const float sx = static_cast<float>(target.width) / static_cast<float>(source.image_size.width);
    const float sy = static_cast<float>(target.height) / static_cast<float>(source.image_size.height);
    BinaryMask mask(target.width, target.height);
    for (const auto& o : source.objects)
    {
        const BBox scaled{o.box.x * sx, o.box.y * sy, o.box.w * sx, o.box.h * sy};
        mask.fill(snap_to_pixels(scaled, target));
    }
    return mask;
}

} // namespace objblur

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
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "objblur/compositor.hpp"
#include "objblur/layouts.hpp"
#include "objblur/schedules.hpp"

namespace objblur {

struct PipelineConfig
{
    std::filesystem::path manifest;
    std::filesystem::path image_root; // empty: directory of the manifest
    ScheduleSpec schedule;
    BlurPolicy policy;
    FilterRules filter;
    std::int64_t total_steps = 200;
    std::size_t batch_size   = 8;
    std::uint64_t seed       = 0;
    int workers              = 1;
    std::optional<std::filesystem::path> output_dir; // PNG + provenance.jsonl sink

    void validate() const;
};

/// Identifies one sample of the run. The RNG key depends only on
/// (seed, step, image_id), never on which worker handles the sample.
struct SampleTicket
{
    std::int64_t step       = 0;
    std::size_t batch_index = 0;
    std::size_t layout_index = 0;
    std::string image_id;
    std::uint64_t stream_key = 0;
};

struct SampleError
{
    std::int64_t step       = 0;
    std::size_t batch_index = 0;
    std::string image_id;
    std::string message;
};

/// Accumulated wall time per stage, in seconds.
struct StageTimes
{
    double decode    = 0.0;
    double blur      = 0.0;
    double composite = 0.0;
    double encode    = 0.0;

    StageTimes& operator+=(const StageTimes& o);
};

struct RunReport
{
    std::size_t delivered = 0;
    std::size_t skipped   = 0;
    std::size_t objects_blurred    = 0;
    std::size_t background_blurred = 0;
    std::size_t other_branches     = 0;
    std::vector<SampleError> errors;
    double seconds            = 0.0;
    double samples_per_second = 0.0;
    StageTimes stages;
    /// SHA-256 over the provenance log lines in delivery order.
    std::string digest;
};

struct ThroughputReport
{
    bool empty = true;
    int workers = 1;
    std::size_t single_samples = 0;
    double single_seconds = 0.0;
    double single_samples_per_second = 0.0;
    std::size_t multi_samples = 0;
    double multi_seconds = 0.0;
    double multi_samples_per_second = 0.0;
    StageTimes single_stages; // totals over the single-worker phase
    StageTimes multi_stages;
    std::size_t peak_rss_kib = 0;
};

using SampleConsumer = std::function<void(const AugmentedSample&)>;

/// One provenance record as a single JSON line (no trailing newline).
std::string provenance_json(const Provenance& p, std::string_view image_sha256);

std::string sample_filename(const Provenance& p);

/// A configured dataset: manifest parsed and filtered, schedule and policy
/// validated. Immutable after construction; all entry points are const.
class Pipeline
{
public:
    /// Throws on invalid configuration or an unreadable/malformed manifest.
    explicit Pipeline(PipelineConfig config);

    const PipelineConfig& config() const { return m_config; }
    const std::vector<Layout>& layouts() const { return m_layouts; }
    const std::vector<ManifestWarning>& warnings() const { return m_warnings; }
    const FilterStats& filter_stats() const { return m_filter_stats; }
    ScheduleGeometry geometry() const { return m_geometry; }

    BlurStrength strength_at(std::int64_t step) const;

    /// Layout order for one pass over the dataset.
    std::vector<std::size_t> epoch_order(std::int64_t epoch) const;

    /// Foreign-mask assignment for a randmask batch: slot i borrows the
    /// layout of slot permutation[i].
    std::vector<std::size_t> batch_permutation(std::int64_t step) const;

    SampleTicket ticket(std::int64_t step, std::size_t batch_index) const;

    /// Runs steps 0..T-1 and delivers samples ordered by (step, batch index).
    RunReport run(const SampleConsumer& consumer = {}) const;

    /// Both ObjBlur branches of one image at each requested step. Draws no
    /// random numbers. Throws std::invalid_argument for an unknown image id.
    std::vector<AugmentedSample> preview(std::string_view image_id, std::span<const std::int64_t> steps) const;

    /// Measures throughput at 1 worker and at config().workers for about
    /// `seconds` each. A non-positive duration yields an empty report.
    ThroughputReport bench(double seconds) const;

    std::filesystem::path image_path(const Layout& layout) const;

private:
    struct Outcome;

    Outcome process(const SampleTicket& ticket, const Layout* foreign, bool encode, bool keep_sample) const;

    /// Tickets for steps [first, last), with the foreign layout per ticket
    /// for the randmask variant.
    void plan(std::int64_t first, std::int64_t last, std::vector<SampleTicket>& tickets,
              std::vector<const Layout*>& foreign) const;

    PipelineConfig m_config;
    std::filesystem::path m_root;
    std::vector<Layout> m_layouts;
    std::vector<ManifestWarning> m_warnings;
    FilterStats m_filter_stats;
    ScheduleGeometry m_geometry;
};

RunReport run_epochal(const PipelineConfig& config, const SampleConsumer& consumer);

} // namespace objblur

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

#include "objblur/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <map>
#include <numeric>
#include <stdexcept>

#include <sys/resource.h>

#include <json.hpp>

#include "objblur/digest.hpp"
#include "objblur/image_io.hpp"
#include "objblur/resample.hpp"
#include "objblur/rng.hpp"

namespace objblur {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::size_t peak_rss_kib()
{
    rusage usage{};
    getrusage(RUSAGE_SELF, &usage);
    return static_cast<std::size_t>(usage.ru_maxrss);
}

// Samples processed in parallel between two in-order deliveries.
constexpr std::size_t window_samples = 64;

} // namespace

StageTimes& StageTimes::operator+=(const StageTimes& o)
{
    decode += o.decode;
    blur += o.blur;
    composite += o.composite;
    encode += o.encode;
    return *this;
}

void PipelineConfig::validate() const
{
    if (total_steps < 1)
    {
        throw std::invalid_argument("total steps must be at least 1");
    }
    if (batch_size < 1)
    {
        throw std::invalid_argument("batch size must be at least 1");
    }
    if (workers < 1)
    {
        throw std::invalid_argument("workers must be at least 1");
    }
    schedule.validate();
    policy.validate();
    if (filter.min_area_frac < 0.0 || filter.min_objects > filter.max_objects)
    {
        throw std::invalid_argument("filter rules are inconsistent");
    }
}

std::string provenance_json(const Provenance& p, std::string_view image_sha256)
{
    nlohmann::ordered_json j;
    j["step"]     = p.step;
    j["index"]    = p.batch_index;
    j["image_id"] = p.image_id;
    j["s_t"]      = p.strength;
    j["lr_size"]  = {p.lr_size.width, p.lr_size.height};
    j["variant"]  = to_string(p.variant);
    j["branch"]   = to_string(p.branch);
    j["draws"]    = p.draws;
    j["region"]   = p.region;
    if (!p.foreign_image_id.empty())
    {
        j["foreign_image_id"] = p.foreign_image_id;
    }
    j["sha256"] = image_sha256;
    return j.dump();
}

std::string sample_filename(const Provenance& p)
{
    return p.image_id + "_t" + std::to_string(p.step) + "_" + std::string(to_string(p.branch)) + ".png";
}

struct Pipeline::Outcome
{
    std::optional<AugmentedSample> sample;
    Provenance provenance;
    std::string image_sha256;
    std::vector<std::uint8_t> png;
    std::string error;
    StageTimes times;
};

Pipeline::Pipeline(PipelineConfig config)
    : m_config(std::move(config))
{
    m_config.validate();
    Manifest manifest = load_manifest(m_config.manifest);
    m_warnings        = std::move(manifest.warnings);
    m_layouts         = filter_layouts(manifest.layouts, m_config.filter, &m_filter_stats);
    m_root            = m_config.image_root.empty() ? m_config.manifest.parent_path() : m_config.image_root;

    int widest = 1;
    for (const auto& l : m_layouts)
    {
        widest = std::max(widest, l.image_size.width);
    }
    m_geometry = ScheduleGeometry{widest, std::min(m_config.policy.start.width, widest)};
}

std::filesystem::path Pipeline::image_path(const Layout& layout) const
{
    return m_root / layout.file;
}

BlurStrength Pipeline::strength_at(std::int64_t step) const
{
    return strength(m_config.schedule, TrainClock{step, m_config.total_steps}, m_geometry);
}

std::vector<std::size_t> Pipeline::epoch_order(std::int64_t epoch) const
{
    std::vector<std::size_t> order(m_layouts.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    CounterRng rng(m_config.seed, "epoch", static_cast<std::uint64_t>(epoch));
    for (std::size_t i = order.size(); i > 1; --i)
    {
        std::swap(order[i - 1], order[rng.below(i)]);
    }
    return order;
}

std::vector<std::size_t> Pipeline::batch_permutation(std::int64_t step) const
{
    std::vector<std::size_t> perm(m_config.batch_size);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    CounterRng rng(m_config.seed, "shuffle", static_cast<std::uint64_t>(step));
    for (std::size_t i = perm.size(); i > 1; --i)
    {
        std::swap(perm[i - 1], perm[rng.below(i)]);
    }
    return perm;
}

SampleTicket Pipeline::ticket(std::int64_t step, std::size_t batch_index) const
{
    if (m_layouts.empty())
    {
        throw std::logic_error("no layouts survived filtering");
    }
    const auto global = static_cast<std::uint64_t>(step) * m_config.batch_size + batch_index;
    const auto n      = m_layouts.size();
    const auto order  = epoch_order(static_cast<std::int64_t>(global / n));
    SampleTicket t;
    t.step         = step;
    t.batch_index  = batch_index;
    t.layout_index = order[global % n];
    t.image_id     = m_layouts[t.layout_index].image_id;
    t.stream_key   = CounterRng(m_config.seed, "sample", static_cast<std::uint64_t>(step), t.image_id).key();
    return t;
}

void Pipeline::plan(std::int64_t first, std::int64_t last, std::vector<SampleTicket>& tickets,
                    std::vector<const Layout*>& foreign) const
{
    tickets.clear();
    foreign.clear();
    const auto n = m_layouts.size();
    const auto B = m_config.batch_size;
    std::map<std::uint64_t, std::vector<std::size_t>> orders;
    for (std::int64_t step = first; step < last; ++step)
    {
        const std::size_t base = tickets.size();
        for (std::size_t i = 0; i < B; ++i)
        {
            const auto global = static_cast<std::uint64_t>(step) * B + i;
            const auto epoch  = global / n;
            auto it           = orders.find(epoch);
            if (it == orders.end())
            {
                it = orders.emplace(epoch, epoch_order(static_cast<std::int64_t>(epoch))).first;
            }
            SampleTicket t;
            t.step         = step;
            t.batch_index  = i;
            t.layout_index = it->second[global % n];
            t.image_id     = m_layouts[t.layout_index].image_id;
            t.stream_key   = CounterRng(m_config.seed, "sample", static_cast<std::uint64_t>(step), t.image_id).key();
            tickets.push_back(std::move(t));
        }
        if (m_config.policy.variant == BlurVariant::randmask)
        {
            const auto perm = batch_permutation(step);
            for (std::size_t i = 0; i < B; ++i)
            {
                foreign.push_back(&m_layouts[tickets[base + perm[i]].layout_index]);
            }
        }
        else
        {
            foreign.insert(foreign.end(), B, nullptr);
        }
    }
}

Pipeline::Outcome Pipeline::process(const SampleTicket& ticket, const Layout* foreign, bool encode,
                                    bool keep_sample) const
{
    Outcome out;
    const Layout& layout = m_layouts[ticket.layout_index];
    Provenance& prov     = out.provenance;
    prov.step            = ticket.step;
    prov.batch_index     = ticket.batch_index;
    prov.image_id        = ticket.image_id;
    prov.variant         = m_config.policy.variant;

    try
    {
        auto t0        = Clock::now();
        const Image hr = io::load(image_path(layout));
        if (hr.size() != layout.image_size)
        {
            throw io::DecodeError(image_path(layout).string() + ": decoded size " + std::to_string(hr.width()) +
                                  "x" + std::to_string(hr.height()) + " does not match the manifest");
        }
        out.times.decode = seconds_since(t0);

        const BlurPolicy& policy = m_config.policy;
        const BlurStrength s     = policy.variant == BlurVariant::none ? BlurStrength(0.0) : strength_at(ticket.step);
        const Size start{std::min(policy.start.width, hr.width()), std::min(policy.start.height, hr.height())};
        prov.strength = s.value();
        prov.lr_size  = strength_to_resolution(s, hr.size(), start);

        t0             = Clock::now();
        const Image lr = policy.variant == BlurVariant::none ? hr : blur(hr, s, start);
        out.times.blur = seconds_since(t0);

        t0 = Clock::now();
        CounterRng rng(m_config.seed, "sample", static_cast<std::uint64_t>(ticket.step), ticket.image_id);
        Image result;
        switch (policy.variant)
        {
        case BlurVariant::none:
            result      = hr;
            prov.branch = Branch::clean;
            break;
        case BlurVariant::fullblur:
            result      = composite_fullblur(hr, lr);
            prov.branch = Branch::full;
            break;
        case BlurVariant::cutblur:
        {
            const BBox patch = draw_cutblur_patch(rng, hr.size(), policy.cutblur_area, prov.draws);
            result           = composite_cutblur(hr, lr, patch);
            prov.branch      = Branch::patch;
            prov.region      = "patch:" + std::to_string(static_cast<int>(patch.x)) + "," +
                          std::to_string(static_cast<int>(patch.y)) + "," + std::to_string(static_cast<int>(patch.w)) +
                          "," + std::to_string(static_cast<int>(patch.h));
            break;
        }
        case BlurVariant::objblur:
        case BlurVariant::randmask:
        {
            const BranchDecision d = decide_branch(rng.uniform(), policy.p_obj);
            prov.decision          = d;
            prov.draws.push_back(d.rng_draw);
            prov.branch = d.blur_objects ? Branch::objects : Branch::background;
            BinaryMask mask;
            if (policy.variant == BlurVariant::randmask)
            {
                mask                  = rasterize_mask_scaled(*foreign, hr.size());
                prov.foreign_image_id = foreign->image_id;
                result                = composite_randmask(hr, lr, mask, d.blur_objects);
            }
            else
            {
                mask   = rasterize_mask(layout);
                result = composite_objblur(hr, lr, mask, d.blur_objects);
            }
            prov.region = "mask:" + sha256_hex(mask.bits()).substr(0, 16);
            break;
        }
        }
        out.times.composite = seconds_since(t0);

        out.image_sha256 = sha256_hex(result.pixels());
        if (encode)
        {
            t0               = Clock::now();
            out.png          = io::encode_png(result);
            out.times.encode = seconds_since(t0);
        }
        if (keep_sample)
        {
            out.sample = AugmentedSample{std::move(result), layout, prov};
        }
    }
    catch (const std::exception& e)
    {
        out.error = e.what();
    }
    return out;
}

RunReport Pipeline::run(const SampleConsumer& consumer) const
{
    RunReport report;
    const auto start = Clock::now();
    if (m_layouts.empty())
    {
        report.digest = sha256_hex(std::string_view{});
        return report;
    }

    std::ofstream log;
    if (m_config.output_dir)
    {
        std::filesystem::create_directories(*m_config.output_dir);
        log.open(*m_config.output_dir / "provenance.jsonl", std::ios::binary | std::ios::trunc);
        if (!log)
        {
            throw std::runtime_error("cannot write provenance log in " + m_config.output_dir->string());
        }
    }
    const bool encode = m_config.output_dir.has_value();
    const bool keep   = static_cast<bool>(consumer);

    std::string all_lines;
    const std::int64_t steps_per_window =
        std::max<std::int64_t>(1, static_cast<std::int64_t>(window_samples / m_config.batch_size));
    std::vector<SampleTicket> tickets;
    std::vector<const Layout*> foreign;
    std::vector<Outcome> outcomes;

    for (std::int64_t first = 0; first < m_config.total_steps; first += steps_per_window)
    {
        const std::int64_t last = std::min(m_config.total_steps, first + steps_per_window);
        plan(first, last, tickets, foreign);
        outcomes.assign(tickets.size(), Outcome{});
        const long count = static_cast<long>(tickets.size());

#pragma omp parallel for num_threads(m_config.workers) schedule(dynamic, 1)
        for (long k = 0; k < count; ++k)
        {
            outcomes[k] = process(tickets[k], foreign[k], encode, keep);
        }

        for (std::size_t k = 0; k < outcomes.size(); ++k)
        {
            Outcome& o = outcomes[k];
            if (!o.error.empty())
            {
                ++report.skipped;
                report.errors.push_back({tickets[k].step, tickets[k].batch_index, tickets[k].image_id, o.error});
                continue;
            }
            report.stages += o.times;
            switch (o.provenance.branch)
            {
            case Branch::objects: ++report.objects_blurred; break;
            case Branch::background: ++report.background_blurred; break;
            default: ++report.other_branches; break;
            }
            const std::string line = provenance_json(o.provenance, o.image_sha256);
            all_lines += line;
            all_lines += '\n';
            if (encode)
            {
                const auto path = *m_config.output_dir / sample_filename(o.provenance);
                std::ofstream png(path, std::ios::binary);
                png.write(reinterpret_cast<const char*>(o.png.data()), static_cast<std::streamsize>(o.png.size()));
                if (!png)
                {
                    throw std::runtime_error("cannot write " + path.string());
                }
                log << line << '\n';
            }
            if (keep)
            {
                consumer(*o.sample);
            }
            ++report.delivered;
        }
    }

    report.digest             = sha256_hex(all_lines);
    report.seconds            = seconds_since(start);
    report.samples_per_second = report.seconds > 0.0 ? report.delivered / report.seconds : 0.0;
    return report;
}

std::vector<AugmentedSample> Pipeline::preview(std::string_view image_id, std::span<const std::int64_t> steps) const
{
    auto it = std::find_if(m_layouts.begin(), m_layouts.end(),
                           [&](const Layout& l) { return l.image_id == image_id; });
    if (it == m_layouts.end())
    {
        throw std::invalid_argument("unknown image id '" + std::string(image_id) + "'");
    }
    const Layout& layout = *it;
    const Image hr       = io::load(image_path(layout));
    const BinaryMask mask = rasterize_mask(layout);
    const Size start{std::min(m_config.policy.start.width, hr.width()),
                     std::min(m_config.policy.start.height, hr.height())};

    std::vector<AugmentedSample> out;
    for (std::int64_t step : steps)
    {
        if (step < 0 || step > m_config.total_steps)
        {
            throw std::invalid_argument("preview step " + std::to_string(step) + " outside [0, T]");
        }
        const BlurStrength s = m_config.policy.variant == BlurVariant::none ? BlurStrength(0.0) : strength_at(step);
        const Image lr       = blur(hr, s, start);
        for (bool blur_objects : {true, false})
        {
            Provenance p;
            p.step     = step;
            p.image_id = layout.image_id;
            p.strength = s.value();
            p.lr_size  = strength_to_resolution(s, hr.size(), start);
            p.variant  = BlurVariant::objblur;
            p.branch   = blur_objects ? Branch::objects : Branch::background;
            p.region   = "mask:" + sha256_hex(mask.bits()).substr(0, 16);
            out.push_back({composite_objblur(hr, lr, mask, blur_objects), layout, std::move(p)});
        }
    }
    return out;
}

ThroughputReport Pipeline::bench(double seconds) const
{
    ThroughputReport report;
    report.workers = m_config.workers;
    if (!(seconds > 0.0) || m_layouts.empty())
    {
        report.peak_rss_kib = peak_rss_kib();
        return report;
    }
    report.empty = false;

    auto measure = [&](int workers, std::size_t& samples, double& elapsed, StageTimes& stages) {
        const std::int64_t steps_per_window =
            std::max<std::int64_t>(1, static_cast<std::int64_t>(window_samples / m_config.batch_size));
        std::vector<SampleTicket> tickets;
        std::vector<const Layout*> foreign;
        std::vector<Outcome> outcomes;
        const auto start  = Clock::now();
        std::int64_t step = 0;
        while (seconds_since(start) < seconds)
        {
            const std::int64_t last = std::min(m_config.total_steps, step + steps_per_window);
            plan(step, last, tickets, foreign);
            outcomes.assign(tickets.size(), Outcome{});
            const long count = static_cast<long>(tickets.size());

#pragma omp parallel for num_threads(workers) schedule(dynamic, 1)
            for (long k = 0; k < count; ++k)
            {
                outcomes[k] = process(tickets[k], foreign[k], true, false);
            }
            for (const Outcome& o : outcomes)
            {
                if (o.error.empty())
                {
                    ++samples;
                    stages += o.times;
                }
            }
            step = last >= m_config.total_steps ? 0 : last;
        }
        elapsed = seconds_since(start);
    };

    measure(1, report.single_samples, report.single_seconds, report.single_stages);
    report.single_samples_per_second = report.single_samples / report.single_seconds;
    measure(m_config.workers, report.multi_samples, report.multi_seconds, report.multi_stages);
    report.multi_samples_per_second = report.multi_samples / report.multi_seconds;
    report.peak_rss_kib             = peak_rss_kib();
    return report;
}

RunReport run_epochal(const PipelineConfig& config, const SampleConsumer& consumer)
{
    return Pipeline(config).run(consumer);
}

} // namespace objblur

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

#include "objblur/cli.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "objblur/image_io.hpp"
#include "objblur/pipeline.hpp"
#include "objblur/resample.hpp"
#include "objblur/schedules.hpp"

namespace objblur::cli {

namespace {

namespace fs = std::filesystem;

class UsageError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

std::string fmt_double(double v)
{
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string quote(const std::string& s)
{
    if (!s.empty() && s.find_first_of(" \t'\"\\$") == std::string::npos)
    {
        return s;
    }
    std::string out = "'";
    for (char c : s)
    {
        if (c == '\'')
        {
            out += "'\\''";
        }
        else
        {
            out += c;
        }
    }
    return out + "'";
}

Size parse_size(const std::string& text, const char* what)
{
    int w = 0;
    int h = 0;
    const auto x = text.find('x');
    auto parse_int = [&](std::string_view s, int& v) {
        auto res = std::from_chars(s.data(), s.data() + s.size(), v);
        return res.ec == std::errc{} && res.ptr == s.data() + s.size() && v >= 1;
    };
    const bool ok = x == std::string::npos
                        ? parse_int(text, w) && (h = w, true)
                        : parse_int(std::string_view(text).substr(0, x), w) &&
                              parse_int(std::string_view(text).substr(x + 1), h);
    if (!ok)
    {
        throw UsageError(std::string("bad ") + what + " '" + text + "' (expected N or WxH)");
    }
    return {w, h};
}

std::string format_size(Size s)
{
    return s.width == s.height ? std::to_string(s.width)
                               : std::to_string(s.width) + "x" + std::to_string(s.height);
}

struct FilterFlags
{
    double min_area         = 0.02;
    std::size_t min_objects = 3;
    std::size_t max_objects = 8;
    std::vector<int> exclude;

    void add(CLI::App* app)
    {
        app->add_option("--min-area", min_area, "minimum box area as a fraction of the image")
            ->capture_default_str();
        app->add_option("--min-objects", min_objects, "minimum objects per layout")->capture_default_str();
        app->add_option("--max-objects", max_objects, "maximum objects per layout")->capture_default_str();
        app->add_option("--exclude-class", exclude, "category ids to drop");
    }

    FilterRules rules() const
    {
        if (min_area < 0.0 || min_area > 1.0)
        {
            throw UsageError("--min-area must lie in [0, 1]");
        }
        if (min_objects > max_objects)
        {
            throw UsageError("--min-objects exceeds --max-objects");
        }
        return FilterRules{min_area, min_objects, max_objects, exclude};
    }

    std::string resolved() const
    {
        std::string s = " --min-area " + fmt_double(min_area) + " --min-objects " + std::to_string(min_objects) +
                        " --max-objects " + std::to_string(max_objects);
        for (int id : exclude)
        {
            s += " --exclude-class " + std::to_string(id);
        }
        return s;
    }
};

struct PipelineFlags
{
    std::string manifest;
    std::string images;
    std::string schedule = "sin";
    double duration      = 0.95;
    std::string variant  = "objblur";
    double p_obj         = 0.5;
    std::string start    = "8";
    std::int64_t steps   = 200;
    std::size_t batch    = 8;
    std::uint64_t seed   = 0;
    int workers          = 1;
    FilterFlags filter;

    void add(CLI::App* app)
    {
        app->add_option("--manifest", manifest, "layout manifest (JSON)")->required();
        app->add_option("--images", images, "image root (default: manifest directory)");
        app->add_option("--schedule", schedule, "none | linear | step:N | pow2 | sin | exp:K")
            ->capture_default_str();
        app->add_option("--duration", duration, "fraction of steps with an active schedule")
            ->capture_default_str();
        app->add_option("--variant", variant, "objblur | fullblur | cutblur | randmask | none")
            ->capture_default_str();
        app->add_option("--p-obj", p_obj, "probability of blurring objects")->capture_default_str();
        app->add_option("--start-res", start, "start resolution, N or WxH")->capture_default_str();
        app->add_option("--steps", steps, "total training steps T")->capture_default_str();
        app->add_option("--batch-size", batch, "samples per step")->capture_default_str();
        app->add_option("--seed", seed, "64-bit seed")->capture_default_str();
        app->add_option("--workers", workers, "worker threads")->capture_default_str();
        filter.add(app);
    }

    PipelineConfig config() const
    {
        PipelineConfig c;
        c.manifest   = manifest;
        c.image_root = images;
        try
        {
            c.schedule = ScheduleSpec::parse(schedule, duration);
            c.policy.variant = parse_variant(variant);
        }
        catch (const std::invalid_argument& e)
        {
            throw UsageError(e.what());
        }
        c.policy.p_obj = p_obj;
        c.policy.start = parse_size(start, "--start-res");
        c.filter       = filter.rules();
        c.total_steps  = steps;
        c.batch_size   = batch;
        c.seed         = seed;
        c.workers      = workers;
        try
        {
            c.validate();
        }
        catch (const std::invalid_argument& e)
        {
            throw UsageError(e.what());
        }
        return c;
    }

    std::string resolved() const
    {
        std::string s = " --manifest " + quote(manifest);
        if (!images.empty())
        {
            s += " --images " + quote(images);
        }
        s += " --schedule " + schedule + " --duration " + fmt_double(duration) + " --variant " + variant +
             " --p-obj " + fmt_double(p_obj) + " --start-res " + format_size(parse_size(start, "--start-res")) +
             " --steps " + std::to_string(steps) + " --batch-size " + std::to_string(batch) + " --seed " +
             std::to_string(seed) + " --workers " + std::to_string(workers);
        return s + filter.resolved();
    }
};

// Turns a JSON config file into flags for the options the subcommand knows,
// skipping any flag already present on the command line.
std::vector<std::string> config_args(const fs::path& path, const CLI::App* sub, const std::vector<std::string>& given)
{
    std::ifstream in(path);
    if (!in)
    {
        throw UsageError("cannot read config " + path.string());
    }
    nlohmann::json doc;
    try
    {
        doc = nlohmann::json::parse(in);
    }
    catch (const nlohmann::json::parse_error& e)
    {
        throw UsageError("config " + path.string() + ": " + e.what());
    }
    if (!doc.is_object())
    {
        throw UsageError("config " + path.string() + ": expected an object");
    }
    std::vector<std::string> out;
    for (const auto& [key, value] : doc.items())
    {
        std::string flag = "--" + key;
        std::replace(flag.begin(), flag.end(), '_', '-');
        if (flag == "--config" || sub->get_option_no_throw(flag) == nullptr)
        {
            continue;
        }
        const bool on_command_line = std::any_of(given.begin(), given.end(), [&](const std::string& a) {
            return a == flag || a.rfind(flag + "=", 0) == 0;
        });
        if (on_command_line)
        {
            continue;
        }
        auto scalar = [](const nlohmann::json& v) {
            return v.is_string() ? v.get<std::string>() : v.dump();
        };
        if (value.is_array())
        {
            for (const auto& v : value)
            {
                out.push_back(flag);
                out.push_back(scalar(v));
            }
        }
        else
        {
            out.push_back(flag);
            out.push_back(scalar(value));
        }
    }
    return out;
}

int cmd_augment(const PipelineFlags& flags, const std::string& out_dir, std::ostream& out, std::ostream& err)
{
    PipelineConfig config = flags.config();
    config.output_dir     = out_dir;
    out << "resolved: objblur augment" << flags.resolved() << " --out " << quote(out_dir) << "\n";

    Pipeline pipeline(config);
    for (const auto& w : pipeline.warnings())
    {
        err << "warning: image " << w.image_id << " object " << w.object_index << ": " << w.message << "\n";
    }
    if (pipeline.layouts().empty())
    {
        err << "error: no layouts survived filtering\n";
        return runtime_error;
    }
    const RunReport report = pipeline.run();
    for (const auto& e : report.errors)
    {
        err << "error: step " << e.step << " index " << e.batch_index << " image " << e.image_id << ": "
            << e.message << "\n";
    }
    out << "delivered: " << report.delivered << "\n"
        << "skipped: " << report.skipped << "\n"
        << "objects blurred: " << report.objects_blurred << "\n"
        << "background blurred: " << report.background_blurred << "\n"
        << "other: " << report.other_branches << "\n"
        << "digest: " << report.digest << "\n"
        << "samples/s: " << fmt_double(report.samples_per_second) << "\n";
    if (report.skipped > 0)
    {
        out << "warnings: " << report.skipped << " samples skipped\n";
    }
    return success;
}

int cmd_preview(const PipelineFlags& flags, const std::string& image_id, const std::vector<std::int64_t>& at,
                const std::string& out_dir, std::ostream& out)
{
    const PipelineConfig config = flags.config();
    out << "resolved: objblur preview" << flags.resolved() << " --image-id " << quote(image_id);
    for (auto t : at)
    {
        out << " --at " << t;
    }
    out << " --out " << quote(out_dir) << "\n";

    Pipeline pipeline(config);
    const auto samples = pipeline.preview(image_id, at);
    fs::create_directories(out_dir);
    out << "step,s_t,W_t,H_t,branch,file\n";
    for (const auto& s : samples)
    {
        const auto name = sample_filename(s.provenance);
        io::save_png(s.image, fs::path(out_dir) / name);
        out << s.provenance.step << "," << fmt_double(s.provenance.strength) << "," << s.provenance.lr_size.width
            << "," << s.provenance.lr_size.height << "," << to_string(s.provenance.branch) << "," << name << "\n";
    }
    return success;
}

std::string schedule_file_name(const ScheduleSpec& spec)
{
    std::string name = spec.to_string();
    std::replace(name.begin(), name.end(), ':', '_');
    return name + ".csv";
}

void write_schedule_csv(const ScheduleSpec& spec, std::int64_t total, std::size_t points, Size size, Size start,
                        std::ostream& csv)
{
    const ScheduleGeometry geometry{size.width, start.width};
    csv << "t,tau,s,W_t,H_t\n";
    for (std::size_t k = 0; k < points; ++k)
    {
        const double t   = points == 1 ? 0.0 : static_cast<double>(k) * total / static_cast<double>(points - 1);
        const double tau = schedule_progress(spec, t, static_cast<double>(total));
        const double s   = strength_at_progress(spec, tau, geometry);
        const Size res   = strength_to_resolution(BlurStrength(s), size, start);
        csv << fmt_double(t) << "," << fmt_double(tau) << "," << fmt_double(s) << "," << res.width << ","
            << res.height << "\n";
    }
}

int cmd_schedule(const std::string& family, double duration, std::int64_t total, std::size_t points,
                 const std::string& size_text, const std::string& start_text, const std::string& out_dir,
                 std::ostream& out)
{
    std::vector<ScheduleSpec> specs;
    try
    {
        specs = family == "all" ? enumerate_families(duration)
                                : std::vector<ScheduleSpec>{ScheduleSpec::parse(family, duration)};
    }
    catch (const std::invalid_argument& e)
    {
        throw UsageError(e.what());
    }
    const Size size  = parse_size(size_text, "--size");
    const Size start = parse_size(start_text, "--start-res");
    if (total < 1 || points < 1)
    {
        throw UsageError("--steps and --points must be at least 1");
    }
    if (start.width > size.width || start.height > size.height)
    {
        throw UsageError("--start-res exceeds --size");
    }
    out << "resolved: objblur schedule --family " << family << " --duration " << fmt_double(duration)
        << " --steps " << total << " --points " << points << " --size " << format_size(size) << " --start-res "
        << format_size(start) << " --out " << quote(out_dir) << "\n";

    fs::create_directories(out_dir);
    for (const auto& spec : specs)
    {
        const fs::path path = fs::path(out_dir) / schedule_file_name(spec);
        std::ofstream csv(path, std::ios::binary);
        if (!csv)
        {
            throw std::runtime_error("cannot write " + path.string());
        }
        write_schedule_csv(spec, total, points, size, start, csv);
        out << "wrote " << path.string() << "\n";
    }
    return success;
}

int cmd_bench(const PipelineFlags& flags, double seconds, std::ostream& out)
{
    if (seconds < 0.0)
    {
        throw UsageError("--seconds must be non-negative");
    }
    const PipelineConfig config = flags.config();
    out << "resolved: objblur bench" << flags.resolved() << " --seconds " << fmt_double(seconds) << "\n";
    Pipeline pipeline(config);
    const ThroughputReport r = pipeline.bench(seconds);
    if (r.empty)
    {
        out << "empty report\n";
        return success;
    }
    auto per_sample_ms = [](double total, std::size_t n) { return n ? 1e3 * total / n : 0.0; };
    out << "workers=1: " << fmt_double(r.single_samples_per_second) << " samples/s (" << r.single_samples
        << " samples)\n";
    out << "workers=" << r.workers << ": " << fmt_double(r.multi_samples_per_second) << " samples/s ("
        << r.multi_samples << " samples)\n";
    out << "stage ms/sample (workers=1): decode " << per_sample_ms(r.single_stages.decode, r.single_samples)
        << ", blur " << per_sample_ms(r.single_stages.blur, r.single_samples) << ", composite "
        << per_sample_ms(r.single_stages.composite, r.single_samples) << ", encode "
        << per_sample_ms(r.single_stages.encode, r.single_samples) << "\n";
    out << "peak memory: " << r.peak_rss_kib << " KiB\n";
    return success;
}

int cmd_validate(const std::string& manifest_path, const FilterFlags& filter, std::ostream& out, std::ostream& err)
{
    const FilterRules rules = filter.rules();
    out << "resolved: objblur validate --manifest " << quote(manifest_path) << filter.resolved() << "\n";
    Manifest manifest;
    try
    {
        manifest = load_manifest(manifest_path);
    }
    catch (const std::exception& e)
    {
        err << "error: " << e.what() << "\n";
        return runtime_error;
    }
    for (const auto& w : manifest.warnings)
    {
        err << "warning: image " << w.image_id << " object " << w.object_index << ": " << w.message << "\n";
    }
    FilterStats stats;
    const auto kept = filter_layouts(manifest.layouts, rules, &stats);
    out << "images: " << manifest.layouts.size() << "\n"
        << "boxes clamped or dropped on load: " << manifest.warnings.size() << "\n"
        << "boxes removed by area rule: " << stats.boxes_removed_by_area << "\n"
        << "boxes removed by class rule: " << stats.boxes_removed_by_class << "\n"
        << "layouts dropped by count rule (too few): " << stats.layouts_dropped_too_few << "\n"
        << "layouts dropped by count rule (too many): " << stats.layouts_dropped_too_many << "\n"
        << "dropped: " << stats.layouts_dropped() << "\n"
        << "surviving: " << kept.size() << "\n";
    return kept.empty() ? runtime_error : success;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Curriculum object-level blurring for layout-to-image training data", "objblur"};
    app.require_subcommand(1);
    std::string config_path;

    PipelineFlags aug_flags;
    std::string aug_out;
    auto* augment = app.add_subcommand("augment", "augment a corpus into a directory of PNGs");
    aug_flags.add(augment);
    augment->add_option("--out", aug_out, "output directory")->required();

    PipelineFlags prev_flags;
    std::string prev_id;
    std::vector<std::int64_t> prev_at;
    std::string prev_out;
    auto* preview = app.add_subcommand("preview", "both blur branches of one image at chosen steps");
    prev_flags.add(preview);
    preview->add_option("--image-id", prev_id, "image to preview")->required();
    preview->add_option("--at", prev_at, "steps to render")->required();
    preview->add_option("--out", prev_out, "output directory")->required();

    std::string sch_family = "sin";
    double sch_duration    = 0.95;
    std::int64_t sch_steps = 200;
    std::size_t sch_points = 200;
    std::string sch_size   = "128";
    std::string sch_start  = "8";
    std::string sch_out    = ".";
    auto* schedule         = app.add_subcommand("schedule", "tabulate schedule curves as CSV");
    schedule->add_option("--family,--schedule", sch_family, "schedule spec or 'all'")->capture_default_str();
    schedule->add_option("--duration", sch_duration, "active fraction")->capture_default_str();
    schedule->add_option("--steps", sch_steps, "total steps T")->capture_default_str();
    schedule->add_option("--points", sch_points, "rows per CSV")->capture_default_str();
    schedule->add_option("--size", sch_size, "full resolution, N or WxH")->capture_default_str();
    schedule->add_option("--start-res", sch_start, "start resolution, N or WxH")->capture_default_str();
    schedule->add_option("--out", sch_out, "output directory")->capture_default_str();

    PipelineFlags bench_flags;
    double bench_seconds = 5.0;
    auto* bench          = app.add_subcommand("bench", "measure samples/second at 1 and N workers");
    bench_flags.add(bench);
    bench->add_option("--seconds", bench_seconds, "measurement time per phase")->capture_default_str();

    std::string val_manifest;
    FilterFlags val_filter;
    auto* validate = app.add_subcommand("validate", "parse a manifest and report filter statistics");
    validate->add_option("--manifest", val_manifest, "layout manifest (JSON)")->required();
    val_filter.add(validate);

    for (auto* sub : {augment, preview, schedule, bench, validate})
    {
        sub->add_option("--config", config_path, "JSON file with flag values; flags override it");
    }

    try
    {
        std::vector<std::string> argv_store = args;
        if (argv_store.size() >= 2)
        {
            // apply --config before parsing so required flags may come from the file
            std::string cfg;
            for (std::size_t i = 2; i < argv_store.size(); ++i)
            {
                if (argv_store[i] == "--config" && i + 1 < argv_store.size())
                {
                    cfg = argv_store[i + 1];
                }
                else if (argv_store[i].rfind("--config=", 0) == 0)
                {
                    cfg = argv_store[i].substr(9);
                }
            }
            if (!cfg.empty())
            {
                const CLI::App* sub = app.get_subcommand_no_throw(argv_store[1]);
                if (sub != nullptr)
                {
                    auto extra = config_args(cfg, sub, argv_store);
                    argv_store.insert(argv_store.begin() + 2, extra.begin(), extra.end());
                }
            }
        }
        std::vector<const char*> argv;
        for (const auto& a : argv_store)
        {
            argv.push_back(a.c_str());
        }
        try
        {
            app.parse(static_cast<int>(argv.size()), argv.data());
        }
        catch (const CLI::ParseError& e)
        {
            if (e.get_exit_code() == 0)
            {
                app.exit(e, out, err);
                return success;
            }
            const CLI::App* sub = argv_store.size() >= 2 ? app.get_subcommand_no_throw(argv_store[1]) : nullptr;
            err << "usage error: " << e.what() << "\n" << (sub ? sub->help() : app.help());
            return usage_error;
        }

        if (augment->parsed())
        {
            return cmd_augment(aug_flags, aug_out, out, err);
        }
        if (preview->parsed())
        {
            return cmd_preview(prev_flags, prev_id, prev_at, prev_out, out);
        }
        if (schedule->parsed())
        {
            return cmd_schedule(sch_family, sch_duration, sch_steps, sch_points, sch_size, sch_start, sch_out, out);
        }
        if (bench->parsed())
        {
            return cmd_bench(bench_flags, bench_seconds, out);
        }
        if (validate->parsed())
        {
            return cmd_validate(val_manifest, val_filter, out, err);
        }
        return usage_error;
    }
    catch (const UsageError& e)
    {
        err << "usage error: " << e.what() << "\n" << app.help();
        return usage_error;
    }
    catch (const std::exception& e)
    {
        err << "error: " << e.what() << "\n";
        return runtime_error;
    }
}

} // namespace objblur::cli

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

#include "objblur/schedules.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace objblur {

namespace {

std::string format_rate(double k)
{
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), k);
    std::string s(buf, res.ptr);
    if (s.find_first_of(".e") == std::string::npos)
    {
        s += ".0";
    }
    return s;
}

template <typename T>
T parse_number(std::string_view text, std::string_view what)
{
    T value{};
    auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
    {
        throw std::invalid_argument("bad " + std::string(what) + " '" + std::string(text) + "'");
    }
    return value;
}

double pow2_strength(double tau, ScheduleGeometry g)
{
    const int ratio = g.start_width > 0 ? g.full_width / g.start_width : 1;
    int stages      = 0;
    while ((2 << stages) <= ratio)
    {
        ++stages;
    }
    stages = std::max(stages, 1);
    // stage i covers tau in [(2^i - 1), (2^(i+1) - 1)) / (2^K - 1)
    const double total = std::ldexp(1.0, stages) - 1.0;
    const double pos   = tau * total;
    int stage          = 0;
    while (stage < stages && pos >= std::ldexp(1.0, stage + 1) - 1.0)
    {
        ++stage;
    }
    if (stage >= stages)
    {
        return 0.0;
    }
    if (stage == 0)
    {
        return 1.0;
    }
    const double res = static_cast<double>(g.start_width) * std::ldexp(1.0, stage);
    const double s   = 1.0 - (res - g.start_width) / static_cast<double>(g.full_width - g.start_width);
    return std::clamp(s, 0.0, 1.0);
}

} // namespace

ScheduleSpec ScheduleSpec::parse(std::string_view text, double duration)
{
    ScheduleSpec spec;
    spec.duration              = duration;
    const auto colon           = text.find(':');
    const std::string_view name = text.substr(0, colon);
    const std::string_view arg  = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
    auto no_arg                = [&] {
        if (colon != std::string_view::npos)
        {
            throw std::invalid_argument("schedule '" + std::string(name) + "' takes no parameter");
        }
    };

    if (name == "none")
    {
        no_arg();
        spec.family = ScheduleFamily::none;
    }
    else if (name == "linear")
    {
        no_arg();
        spec.family = ScheduleFamily::linear;
    }
    else if (name == "pow2")
    {
        no_arg();
        spec.family = ScheduleFamily::pow2;
    }
    else if (name == "sin")
    {
        no_arg();
        spec.family = ScheduleFamily::sin;
    }
    else if (name == "step")
    {
        spec.family = ScheduleFamily::step;
        spec.stages = parse_number<int>(arg, "step count");
    }
    else if (name == "exp")
    {
        spec.family = ScheduleFamily::exp;
        spec.rate   = parse_number<double>(arg, "exp rate");
    }
    else
    {
        throw std::invalid_argument("unknown schedule '" + std::string(text) + "'");
    }
    spec.validate();
    return spec;
}

std::string ScheduleSpec::to_string() const
{
    switch (family)
    {
    case ScheduleFamily::none: return "none";
    case ScheduleFamily::linear: return "linear";
    case ScheduleFamily::step: return "step:" + std::to_string(stages);
    case ScheduleFamily::pow2: return "pow2";
    case ScheduleFamily::sin: return "sin";
    case ScheduleFamily::exp: return "exp:" + format_rate(rate);
    }
    return "?";
}

void ScheduleSpec::validate() const
{
    if (family == ScheduleFamily::step && stages < 2)
    {
        throw std::invalid_argument("step schedule needs at least 2 stages");
    }
    if (family == ScheduleFamily::exp && (rate == 0.0 || !std::isfinite(rate)))
    {
        throw std::invalid_argument("exp schedule rate must be finite and non-zero");
    }
    if (!(duration > 0.0 && duration <= 1.0))
    {
        throw std::invalid_argument("schedule duration must lie in (0, 1]");
    }
}

double schedule_progress(const ScheduleSpec& spec, double t, double total)
{
    double end = spec.duration * total;
    const double nearest = std::round(end);
    if (std::abs(end - nearest) <= 1e-9 * std::max(1.0, end))
    {
        end = nearest;
    }
    if (end <= 0.0 || t >= end)
    {
        return 1.0;
    }
    if (t <= 0.0)
    {
        return 0.0;
    }
    return std::clamp(t / end, 0.0, 1.0);
}

double strength_at_progress(const ScheduleSpec& spec, double tau, ScheduleGeometry geometry)
{
    tau = std::clamp(tau, 0.0, 1.0);
    if (spec.family == ScheduleFamily::none || tau >= 1.0)
    {
        return 0.0;
    }
    switch (spec.family)
    {
    case ScheduleFamily::linear: return 1.0 - tau;
    case ScheduleFamily::step:
    {
        const double n = spec.stages;
        return std::max(0.0, 1.0 - std::floor(tau * n) / n);
    }
    case ScheduleFamily::pow2: return pow2_strength(tau, geometry);
    case ScheduleFamily::sin: return (1.0 + std::cos(std::numbers::pi * tau)) / 2.0;
    case ScheduleFamily::exp:
        return std::clamp(std::expm1(spec.rate * (1.0 - tau)) / std::expm1(spec.rate), 0.0, 1.0);
    case ScheduleFamily::none: break;
    }
    return 0.0;
}

BlurStrength strength(const ScheduleSpec& spec, TrainClock clock, ScheduleGeometry geometry)
{
    const double tau = schedule_progress(spec, static_cast<double>(clock.step), static_cast<double>(clock.total));
    return BlurStrength(strength_at_progress(spec, tau, geometry));
}

std::vector<ScheduleSpec> enumerate_families(double duration)
{
    std::vector<ScheduleSpec> out;
    for (const char* s : {"none", "linear", "step:4", "step:8", "pow2", "sin", "exp:2.0", "exp:5.0",
                          "exp:-2.0", "exp:-5.0"})
    {
        out.push_back(ScheduleSpec::parse(s, duration));
    }
    return out;
}

} // namespace objblur

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
#include <string>
#include <string_view>
#include <vector>

#include "objblur/image.hpp"

namespace objblur {

enum class ScheduleFamily
{
    none,
    linear,
    step,
    pow2,
    sin,
    exp,
};

/// A blur schedule s(t) and the fraction of training during which it is
/// active. Compact string form: none, linear, step:N, pow2, sin, exp:K.
struct ScheduleSpec
{
    ScheduleFamily family = ScheduleFamily::sin;
    int stages            = 4;    // step only, >= 2
    double rate           = -5.0; // exp only, != 0
    double duration       = 0.95; // in (0, 1]

    /// Throws std::invalid_argument on a malformed string.
    static ScheduleSpec parse(std::string_view text, double duration = 0.95);

    /// Family and parameters only, e.g. "exp:-5.0"; duration is not included.
    std::string to_string() const;

    void validate() const;

    friend bool operator==(const ScheduleSpec&, const ScheduleSpec&) = default;
};

struct TrainClock
{
    std::int64_t step  = 0;
    std::int64_t total = 1;
};

/// Geometry needed by the resolution-aware pow2 family.
struct ScheduleGeometry
{
    int full_width  = 128;
    int start_width = 8;
};

/// Normalized progress through the active part of the schedule:
/// tau = min(t, d*T) / (d*T). The end point d*T is snapped to an integer
/// step when it is within rounding noise of one.
double schedule_progress(const ScheduleSpec& spec, double t, double total);

/// Schedule value at normalized progress tau in [0, 1].
double strength_at_progress(const ScheduleSpec& spec, double tau, ScheduleGeometry geometry = {});

BlurStrength strength(const ScheduleSpec& spec, TrainClock clock, ScheduleGeometry geometry = {});

/// The ten standard schedule configurations: none, linear, step:4, step:8,
/// pow2, sin and exp at rates 2, 5, -2 and -5.
std::vector<ScheduleSpec> enumerate_families(double duration = 0.95);

} // namespace objblur

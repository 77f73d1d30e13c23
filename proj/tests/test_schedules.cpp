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

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "objblur/schedules.hpp"

using namespace objblur;

namespace {

double s_at(const ScheduleSpec& spec, std::int64_t t, std::int64_t T, ScheduleGeometry g = {})
{
    return strength(spec, TrainClock{t, T}, g).value();
}

} // namespace

TEST_CASE("linear endpoints with a full-length schedule")
{
    const auto spec = ScheduleSpec::parse("linear", 1.0);
    CHECK(s_at(spec, 0, 100) == 1.0);
    CHECK(s_at(spec, 100, 100) == 0.0);
    CHECK(s_at(spec, 25, 100) == doctest::Approx(0.75).epsilon(1e-15));
}

TEST_CASE("linear with duration 0.95 reaches 0 at step 190 of 200")
{
    const auto spec = ScheduleSpec::parse("linear", 0.95);
    CHECK(s_at(spec, 0, 200) == 1.0);
    CHECK(s_at(spec, 95, 200) == doctest::Approx(0.5));
    CHECK(s_at(spec, 189, 200) > 0.0);
    for (std::int64_t t = 190; t <= 200; ++t)
    {
        CHECK(s_at(spec, t, 200) == 0.0);
    }
}

TEST_CASE("exp(-5) at tau 0.5")
{
    const auto spec     = ScheduleSpec::parse("exp:-5.0", 1.0);
    const double oracle = (std::exp(-2.5) - 1.0) / (std::exp(-5.0) - 1.0);
    CHECK(strength_at_progress(spec, 0.5) == doctest::Approx(oracle).epsilon(1e-12));
    CHECK(strength_at_progress(spec, 0.5) == doctest::Approx(0.9241).epsilon(1e-3));
    CHECK(s_at(spec, 50, 100) == doctest::Approx(oracle).epsilon(1e-12));
}

TEST_CASE("positive exp rate front-loads the decay")
{
    const auto pos = ScheduleSpec::parse("exp:5.0", 1.0);
    const auto neg = ScheduleSpec::parse("exp:-5.0", 1.0);
    CHECK(strength_at_progress(pos, 0.5) < 0.5);
    CHECK(strength_at_progress(neg, 0.5) > 0.5);
}

TEST_CASE("step:4 descends in four equal stages")
{
    const auto spec = ScheduleSpec::parse("step:4", 1.0);
    CHECK(strength_at_progress(spec, 0.0) == 1.0);
    CHECK(strength_at_progress(spec, 0.24) == 1.0);
    CHECK(strength_at_progress(spec, 0.3) == 0.75);
    CHECK(strength_at_progress(spec, 0.5) == 0.5);
    CHECK(strength_at_progress(spec, 0.99) == 0.25);
    CHECK(strength_at_progress(spec, 1.0) == 0.0);
}

TEST_CASE("pow2 doubles the resolution per stage with doubling stage lengths")
{
    // 128 / 8 -> K = 4 stages of widths 1, 2, 4, 8 (in fifteenths of tau)
    const auto spec = ScheduleSpec::parse("pow2", 1.0);
    const ScheduleGeometry g{128, 8};
    CHECK(strength_at_progress(spec, 0.0, g) == 1.0);
    CHECK(strength_at_progress(spec, 0.9 / 15.0, g) == 1.0);
    CHECK(strength_at_progress(spec, 1.5 / 15.0, g) == doctest::Approx(1.0 - 8.0 / 120.0));   // 16 px
    CHECK(strength_at_progress(spec, 4.0 / 15.0, g) == doctest::Approx(1.0 - 24.0 / 120.0));  // 32 px
    CHECK(strength_at_progress(spec, 10.0 / 15.0, g) == doctest::Approx(1.0 - 56.0 / 120.0)); // 64 px
    CHECK(strength_at_progress(spec, 1.0, g) == 0.0);
}

TEST_CASE("pow2 with a start equal to the full size")
{
    const auto spec = ScheduleSpec::parse("pow2", 1.0);
    CHECK(strength_at_progress(spec, 0.5, {8, 8}) == 1.0);
    CHECK(strength_at_progress(spec, 1.0, {8, 8}) == 0.0);
}

TEST_CASE("enumerate_families lists the ten standard schedules")
{
    const auto all = enumerate_families();
    REQUIRE(all.size() == 10);
    std::vector<std::string> names;
    for (const auto& s : all)
    {
        names.push_back(s.to_string());
    }
    CHECK(names == std::vector<std::string>{"none", "linear", "step:4", "step:8", "pow2", "sin", "exp:2.0", "exp:5.0",
                                            "exp:-2.0", "exp:-5.0"});
}

TEST_CASE("spec strings parse and print back")
{
    for (const char* text : {"none", "linear", "step:4", "step:8", "step:3", "pow2", "sin", "exp:-5.0", "exp:2.5"})
    {
        CHECK(ScheduleSpec::parse(text).to_string() == text);
    }
    CHECK(ScheduleSpec::parse("exp:-5").to_string() == "exp:-5.0");
}

TEST_CASE("invalid schedule specs are rejected")
{
    CHECK_THROWS_AS(ScheduleSpec::parse("cosine"), std::invalid_argument);
    CHECK_THROWS_AS(ScheduleSpec::parse("step:1"), std::invalid_argument);
    CHECK_THROWS_AS(ScheduleSpec::parse("step:x"), std::invalid_argument);
    CHECK_THROWS_AS(ScheduleSpec::parse("step"), std::invalid_argument);
    CHECK_THROWS_AS(ScheduleSpec::parse("exp:0"), std::invalid_argument);
    CHECK_THROWS_AS(ScheduleSpec::parse("linear:2"), std::invalid_argument);
    CHECK_THROWS_AS(ScheduleSpec::parse("linear", 0.0), std::invalid_argument);
    CHECK_THROWS_AS(ScheduleSpec::parse("linear", 1.5), std::invalid_argument);
}

TEST_CASE("property: every family is non-increasing with exact endpoints")
{
    for (double d : {0.5, 0.7, 0.95, 1.0})
    {
        for (const auto& spec : enumerate_families(d))
        {
            CAPTURE(spec.to_string());
            CAPTURE(d);
            const std::int64_t T = 1000;
            double previous      = s_at(spec, 0, T);
            CHECK(previous == (spec.family == ScheduleFamily::none ? 0.0 : 1.0));
            for (std::int64_t t = 1; t <= T; ++t)
            {
                const double s = s_at(spec, t, T);
                REQUIRE(s <= previous);
                REQUIRE(s >= 0.0);
                if (static_cast<double>(t) >= d * T)
                {
                    REQUIRE(s == 0.0);
                }
                previous = s;
            }
            CHECK(previous == 0.0);
        }
    }
}

TEST_CASE("property: the sin ramp is point-symmetric")
{
    const auto spec = ScheduleSpec::parse("sin", 1.0);
    for (int k = 0; k <= 1000; ++k)
    {
        const double tau = k / 1000.0;
        CHECK(std::abs(strength_at_progress(spec, tau) + strength_at_progress(spec, 1.0 - tau) - 1.0) <= 1e-12);
    }
}

TEST_CASE("progress snaps the active end to whole steps")
{
    const auto spec = ScheduleSpec::parse("linear", 0.7);
    // 0.7 * 3 = 2.0999999999999996 in binary floating point
    CHECK(schedule_progress(spec, 2.0, 3.0) < 1.0);
    const auto d = ScheduleSpec::parse("linear", 0.1 * 3);
    CHECK(schedule_progress(d, 3.0, 10.0) == 1.0);
}

// Copyright 2026 The netsir Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>

#include "netsir/curves.hpp"
#include "netsir/scenario.hpp"
#include "support.hpp"

using namespace netsir;

namespace
{
Scenario builtin(const char* name) { return *builtin_scenario(name); }
}  // namespace

TEST(Extrema, Example1Node1)
{
    const auto sc = builtin("example1");
    const auto traj = integrate(sc.params, sc.initial, sc.horizon);
    const auto ev = detect_extrema(traj, 0).events;
    ASSERT_EQ(ev.size(), 3u);
    EXPECT_EQ(ev[0].kind, ExtremumKind::InitialMax);
    EXPECT_EQ(ev[0].time, 0.0);
    EXPECT_EQ(ev[1].kind, ExtremumKind::LocalMin);
    EXPECT_EQ(ev[2].kind, ExtremumKind::LocalMax);
    EXPECT_LT(ev[1].time, ev[2].time);
    // ẏ_1 vanishes at the refined events
    for (std::size_t k = 1; k < 3; ++k)
    {
        EXPECT_NEAR(vector_field(sc.params, state_at(traj, ev[k].time)).dy[0], 0.0, 1e-9);
    }
}

TEST(Extrema, ConstantTrajectoryIsEmpty)
{
    const auto p = EpidemicParams::rank_one({1}, {1}, 1.0);
    const auto traj = integrate(p, validate_state(p, {0.5}, {0.0}), 5.0);
    EXPECT_TRUE(detect_extrema(traj, 0).events.empty());
    EXPECT_TRUE(std::holds_alternative<shape::Constant>(observed_shape(traj, 0)));
}

TEST(Extrema, Fig5Node1ThreePeaks)
{
    const auto sc = builtin("fig5");
    const auto traj = integrate(sc.params, sc.initial, sc.horizon);
    EXPECT_EQ(detect_extrema(traj, 0).times_of(ExtremumKind::LocalMax).size(), 3u);
    const auto shape = observed_shape(traj, 0);
    const auto* m = std::get_if<shape::Multimodal>(&shape);
    ASSERT_NE(m, nullptr);
    EXPECT_EQ(m->peak_times.size(), 3u);
}

TEST(Extrema, GridRefinementInvariance)
{
    const auto sc = builtin("fig2");
    IntegratorConfig fine;
    fine.sample_dt = 0.005;
    const auto a = detect_extrema(integrate(sc.params, sc.initial, 30.0), 2).events;
    const auto b = detect_extrema(integrate(sc.params, sc.initial, 30.0, fine), 2).events;
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t k = 0; k < a.size(); ++k)
    {
        EXPECT_EQ(a[k].kind, b[k].kind);
        EXPECT_NEAR(a[k].time, b[k].time, 1e-6);
    }
}

TEST(Shape, Example1)
{
    const auto sc = builtin("example1");
    const auto traj = integrate(sc.params, sc.initial, sc.horizon);
    const auto s1 = observed_shape(traj, 0);
    const auto* bi = std::get_if<shape::Bimodal>(&s1);
    ASSERT_NE(bi, nullptr);
    EXPECT_LT(*bi->min_time, *bi->peak_time);
    EXPECT_TRUE(std::holds_alternative<shape::Unimodal>(observed_shape(traj, 1)));
}

TEST(Shape, ScalarSubcritical)
{
    const auto p = EpidemicParams::rank_one({1}, {1}, 1.0);
    const auto traj = integrate(p, validate_state(p, {0.9}, {0.1}), 30.0);
    EXPECT_TRUE(std::holds_alternative<shape::MonotoneDecreasing>(observed_shape(traj, 0)));
}

TEST(AggregatePeak, Subcritical)
{
    const auto p = EpidemicParams::rank_one({1}, {1}, 1.0);
    const auto traj = integrate(p, validate_state(p, {0.9}, {0.1}), 5.0);
    EXPECT_EQ(aggregate_peak_time(traj), 0.0);
}

TEST(AggregatePeak, Example1Identities)
{
    const auto sc = builtin("example1");
    const auto traj = integrate(sc.params, sc.initial, sc.horizon);
    const auto t = aggregate_peak_time(traj);
    ASSERT_TRUE(t);
    const auto s = state_at(traj, *t);
    const auto agg = aggregates(sc.params, s);
    EXPECT_NEAR(agg.ybar, oracle::kOneMinusLog185, 1e-6);
    EXPECT_NEAR(s.x[1], oracle::kInv185, 1e-6);
    EXPECT_LE(std::abs(agg.ybar * (agg.xtilde - sc.params.gamma())), 1e-8);
}

TEST(AggregatePeak, Fig2AfterMinima)
{
    const auto sc = builtin("fig2");
    const auto traj = integrate(sc.params, sc.initial, sc.horizon);
    const auto t = aggregate_peak_time(traj);
    ASSERT_TRUE(t);
    for (std::size_t i = 0; i < 5; ++i)
    {
        for (double tm : detect_extrema(traj, i).times_of(ExtremumKind::LocalMin)) EXPECT_LE(tm, *t);
    }
}

TEST(AggregatePeak, DenseThrows)
{
    const auto sc = builtin("fig5");
    const auto traj = integrate(sc.params, sc.initial, 1.0);
    EXPECT_THROW(aggregate_peak_time(traj), Error);
}

TEST(Verdicts, Cases)
{
    EXPECT_TRUE(verify_prediction(shape::Unimodal{}, shape::Unimodal{2.0}).pass);
    EXPECT_TRUE(verify_prediction(shape::Undetermined{}, shape::Bimodal{1.0, 2.0}).pass);
    EXPECT_TRUE(verify_prediction(shape::Undetermined{}, shape::MonotoneDecreasing{}).pass);
    EXPECT_FALSE(verify_prediction(shape::Undetermined{}, shape::Unimodal{1.0}).pass);
    const auto v = verify_prediction(shape::MonotoneDecreasing{}, shape::Bimodal{1.0, 2.0});
    EXPECT_FALSE(v.pass);
    EXPECT_FALSE(v.detail.empty());
}

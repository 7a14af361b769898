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

#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "netsir/model.hpp"

namespace netsir
{
struct IntegratorConfig
{
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    double max_step = 0.1;
    double sample_dt = 0.01;
    /// Hard horizon for extinction runs; unset means 500/gamma.
    std::optional<double> t_max;
    double y_extinction_tol = 1e-10;

    void validate() const;
    [[nodiscard]] double effective_t_max(const EpidemicParams& p) const { return t_max.value_or(500.0 / p.gamma()); }

    bool operator==(const IntegratorConfig&) const = default;
};

/// Uniformly sampled solution. Derivatives are the analytic vector field at each sample.
struct Trajectory
{
    std::vector<double> times;
    std::vector<State> states;
    std::vector<StateDerivative> derivs;
    EpidemicParams params;
    IntegratorConfig config;

    [[nodiscard]] std::size_t size() const noexcept { return times.size(); }
};

Trajectory integrate(const EpidemicParams& p, const State& s0, double horizon, const IntegratorConfig& cfg = {});

/// Classical fixed-step RK4, sampled at every step. Only used to cross-check the adaptive solver.
Trajectory integrate_rk4(const EpidemicParams& p, const State& s0, double horizon, double step);

enum class StopReason
{
    Extinct,
    HorizonExceeded,
};

struct ExtinctionRun
{
    Trajectory trajectory;
    State final_state;
    StopReason reason = StopReason::Extinct;
};

/// Integrates until max_i y_i < y_extinction_tol (checked on the sample grid) or t_max.
ExtinctionRun integrate_until_extinction(const EpidemicParams& p, const State& s0, const IntegratorConfig& cfg = {});

/// Advances `s` from t0 to t1 with the adaptive solver.
State propagate(const EpidemicParams& p, const State& s, double t0, double t1, const IntegratorConfig& cfg);

/// State at an arbitrary time, re-integrated from the last sample at or before t.
State state_at(const Trajectory& traj, double t);

using CrossingFunction = std::function<double(double, const State&)>;

inline constexpr double kCrossingTimeTol = 1e-9;

/// Locates a sign change of f between samples bracket.first < bracket.second by
/// bisection, re-integrating from the left end. Throws NoSignChange.
double refine_crossing(const Trajectory& traj, const CrossingFunction& f, std::pair<std::size_t, std::size_t> bracket);
}  // namespace netsir

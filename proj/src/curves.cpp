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

#include "netsir/curves.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace netsir
{
namespace
{
// events closer than this are a round-off double crossing and cancel
constexpr double kMergeWindow = 10.0 * kCrossingTimeTol;

using Derivative = std::function<double(const StateDerivative&)>;

ExtremaList scan(const Trajectory& traj, std::optional<std::size_t> node, const Derivative& deriv,
                 std::optional<double> deriv_tol)
{
    ExtremaList out{node, {}};
    double peak = 0.0;
    for (const auto& d : traj.derivs) peak = std::max(peak, std::abs(deriv(d)));
    if (peak == 0.0) return out;
    const double band = deriv_tol.value_or(1e-9 * peak);
    auto sign_at = [&](std::size_t k) {
        const double v = deriv(traj.derivs[k]);
        return v > band ? 1 : (v < -band ? -1 : 0);
    };

    const auto& p = traj.params;
    auto f = [&](double, const State& s) { return deriv(vector_field(p, s)); };

    int last_sign = 0;
    std::size_t last_k = 0;
    for (std::size_t k = 0; k < traj.size(); ++k)
    {
        const int s = sign_at(k);
        if (s == 0) continue;
        if (last_sign == 0)
        {
            out.events.push_back({0.0, s < 0 ? ExtremumKind::InitialMax : ExtremumKind::InitialMin});
        }
        else if (s != last_sign)
        {
            const double t = refine_crossing(traj, f, {last_k, k});
            const auto kind = last_sign > 0 ? ExtremumKind::LocalMax : ExtremumKind::LocalMin;
            const auto& prev = out.events.back();
            const bool prev_interior = prev.kind == ExtremumKind::LocalMax || prev.kind == ExtremumKind::LocalMin;
            if (prev_interior && t - prev.time < kMergeWindow)
                out.events.pop_back();
            else
                out.events.push_back({t, kind});
        }
        last_sign = s;
        last_k = k;
    }
    return out;
}
}  // namespace

const char* to_string(ExtremumKind k)
{
    switch (k)
    {
        case ExtremumKind::InitialMax: return "InitialMax";
        case ExtremumKind::InitialMin: return "InitialMin";
        case ExtremumKind::LocalMin: return "LocalMin";
        case ExtremumKind::LocalMax: return "LocalMax";
    }
    return "?";
}

std::vector<double> ExtremaList::times_of(ExtremumKind kind) const
{
    std::vector<double> out;
    for (const auto& e : events)
    {
        if (e.kind == kind) out.push_back(e.time);
    }
    return out;
}

ExtremaList detect_extrema(const Trajectory& traj, std::size_t i, std::optional<double> deriv_tol)
{
    if (i >= traj.params.n()) throw Error(ErrorCode::DimensionMismatch, "node index out of range");
    return scan(
        traj, i, [i](const StateDerivative& d) { return d.dy[i]; }, deriv_tol);
}

ExtremaList detect_aggregate_extrema(const Trajectory& traj, std::optional<double> deriv_tol)
{
    const auto f = traj.params.rank_one_factors();
    return scan(
        traj, std::nullopt,
        [b = f.b](const StateDerivative& d) {
            double s = 0.0;
            for (std::size_t j = 0; j < b.size(); ++j) s += b[j] * d.dy[j];
            return s;
        },
        deriv_tol);
}

CurveShape shape_from_extrema(const ExtremaList& list)
{
    if (list.events.empty()) return shape::Constant{};
    const bool starts_down = list.events.front().kind == ExtremumKind::InitialMax;
    std::vector<Extremum> interior(list.events.begin() + 1, list.events.end());

    if (starts_down)
    {
        if (interior.empty()) return shape::MonotoneDecreasing{};
        if (interior.size() == 1) return shape::Bimodal{interior[0].time, std::nullopt};
        if (interior.size() == 2) return shape::Bimodal{interior[0].time, interior[1].time};
    }
    else
    {
        if (interior.empty()) return shape::Unimodal{std::nullopt};
        if (interior.size() == 1) return shape::Unimodal{interior[0].time};
    }
    return shape::Multimodal{list.times_of(ExtremumKind::LocalMax), list.times_of(ExtremumKind::LocalMin)};
}

CurveShape observed_shape(const Trajectory& traj, std::size_t i) { return shape_from_extrema(detect_extrema(traj, i)); }

std::optional<double> aggregate_peak_time(const Trajectory& traj)
{
    const auto f = traj.params.rank_one_factors();
    const double gamma = traj.params.gamma();
    auto excess = [&](double, const State& s) { return aggregates(f, s).xtilde - gamma; };
    if (excess(0.0, traj.states[0]) <= 0.0) return 0.0;
    for (std::size_t k = 1; k < traj.size(); ++k)
    {
        if (excess(traj.times[k], traj.states[k]) <= 0.0) return refine_crossing(traj, excess, {k - 1, k});
    }
    return std::nullopt;
}

Verdict verify_prediction(const CurveShape& predicted, const CurveShape& observed)
{
    Verdict v;
    const auto pred = shape_tag(predicted);
    const auto obs = shape_tag(observed);
    if (std::holds_alternative<shape::Undetermined>(observed) || std::holds_alternative<shape::Multimodal>(predicted))
    {
        v.pass = false;
        v.detail = "invalid comparison: predicted " + pred + ", observed " + obs;
        return v;
    }
    if (std::holds_alternative<shape::Undetermined>(predicted))
    {
        v.pass = std::holds_alternative<shape::MonotoneDecreasing>(observed) ||
                 std::holds_alternative<shape::Bimodal>(observed);
        v.detail = v.pass ? "observed " + obs + " is admissible"
                          : "predicted {MonotoneDecreasing, Bimodal}, observed " + obs;
        return v;
    }
    v.pass = predicted.index() == observed.index();
    v.detail = v.pass ? "match: " + obs : "predicted " + pred + ", observed " + obs;
    return v;
}
}  // namespace netsir

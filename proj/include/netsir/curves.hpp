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
#include <optional>
#include <string>
#include <vector>

#include "netsir/curve_shape.hpp"
#include "netsir/integrate.hpp"

namespace netsir
{
enum class ExtremumKind
{
    InitialMax,  ///< curve starts decreasing
    InitialMin,  ///< curve starts increasing
    LocalMin,
    LocalMax,
};

const char* to_string(ExtremumKind k);

struct Extremum
{
    double time = 0.0;
    ExtremumKind kind = ExtremumKind::LocalMax;
};

struct ExtremaList
{
    /// Node index, or nullopt for the weighted aggregate ȳ.
    std::optional<std::size_t> node;
    std::vector<Extremum> events;

    [[nodiscard]] std::vector<double> times_of(ExtremumKind kind) const;
};

/// Sign changes of the stored analytic ẏ_i, refined by re-integration.
/// deriv_tol defaults to 1e-9 · max_t |ẏ_i|; samples inside the band carry no sign.
ExtremaList detect_extrema(const Trajectory& traj, std::size_t i, std::optional<double> deriv_tol = std::nullopt);

/// Same scan applied to ȳ = Σ b_j y_j. Rank-1 trajectories only.
ExtremaList detect_aggregate_extrema(const Trajectory& traj, std::optional<double> deriv_tol = std::nullopt);

CurveShape shape_from_extrema(const ExtremaList& list);

CurveShape observed_shape(const Trajectory& traj, std::size_t i);

/// First time x̃ <= gamma (0 if already there); nullopt if not reached within the run.
std::optional<double> aggregate_peak_time(const Trajectory& traj);

struct Verdict
{
    bool pass = true;
    std::string detail;
};

Verdict verify_prediction(const CurveShape& predicted, const CurveShape& observed);
}  // namespace netsir

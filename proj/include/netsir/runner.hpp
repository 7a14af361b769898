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
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "netsir/curves.hpp"
#include "netsir/rank1.hpp"
#include "netsir/scenario.hpp"

namespace netsir
{
struct NodeReport
{
    std::size_t node = 0;  ///< 0-based
    std::optional<CurveShape> predicted;
    /// Undetermined predictions collapsed by the sufficient condition or by simulation.
    std::optional<CurveShape> resolved;
    std::string resolved_by;
    CurveShape observed;
    ExtremaList extrema;
    std::vector<double> stationary_peak_values;
    double max_value = 0.0;
    std::optional<double> tbar;
    std::optional<MultimodalityReport> multimodality;
    std::optional<double> peak_bound;
    std::optional<Verdict> verdict;
};

struct ScenarioReport
{
    std::string name;
    bool rank_one = false;
    std::vector<std::string> notices;
    Trajectory trajectory;
    std::vector<NodeReport> nodes;

    std::optional<double> xtilde0;
    std::optional<double> aggregate_peak;   ///< t̂
    std::vector<double> ybar_maxima;
    std::optional<EquilibriumReport> limit;
    std::vector<double> invariant_drift;    ///< max_t |h_i(t) - h_i(0)| per node
    std::optional<double> lambda_initial;   ///< λ_max([x(0)]A)
    std::optional<double> lambda_final;     ///< λ_max([x(T)]A)
    std::optional<bool> final_unstable;

    [[nodiscard]] bool any_fail() const;
};

/// Integrates the scenario and runs every requested analysis. Never writes files.
ScenarioReport analyze_scenario(const Scenario& sc, bool resolve_undetermined = false);

/// Header t,x_1..x_n,y_1..y_n[,xbar,xtilde,ybar]; shortest round-trip decimals, LF endings.
std::string trajectory_csv(const Trajectory& traj);

std::string report_json(const ScenarioReport& rep);

/// Short human-readable summary for the terminal.
std::string report_text(const ScenarioReport& rep);

struct RunOptions
{
    std::filesystem::path out_dir = ".";
    bool svg = false;
    bool resolve_undetermined = false;
};

/// analyze_scenario, then writes <name>.csv, <name>.report.json and optional SVG charts.
ScenarioReport run_scenario(const Scenario& sc, const RunOptions& opts);

struct SweepRow
{
    double value = 0.0;
    std::vector<std::string> shapes;
    std::optional<double> t_hat;
    std::vector<double> peaks;
    std::optional<double> xtilde_star;
    std::optional<double> phi;
    std::string error;
};

/// One independent analysis per value; rows run on up to `threads` workers.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, unsigned threads);

std::string sweep_csv(const SweepSpec& spec, const std::vector<SweepRow>& rows);

/// NETSIR_THREADS if set and positive, else hardware concurrency.
unsigned sweep_threads_from_env();
}  // namespace netsir

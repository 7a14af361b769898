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

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "netsir/integrate.hpp"
#include "netsir/model.hpp"

namespace netsir
{
enum class Analysis
{
    Simulate,
    Classify,
    Limit,
    Multimodality,
    Spectral,
};

struct Scenario
{
    std::string name;
    EpidemicParams params;
    State initial;
    double horizon = 0.0;
    IntegratorConfig integrator;
    std::set<Analysis> analyses;

    bool operator==(const Scenario&) const = default;
};

/// Scenario files are JSON objects:
///
///   { "name": "example1", "gamma": 1.0,
///     "a": [1, 1], "b": [1, 1],          // or "A": [[...], ...] row-major
///     "x0": [0.85, 1.0], "y0": [0.15, 0.0],
///     "horizon": 40,
///     "integrator": { "abs_tol": 1e-10, "rel_tol": 1e-8, "max_step": 0.1,
///                     "sample_dt": 0.01, "t_max": 500, "y_extinction_tol": 1e-10 },
///     "analyses": ["simulate", "classify", "limit", "multimodality", "spectral"] }
///
/// "integrator" keys and "analyses" are optional (defaults / all analyses).
Scenario parse_scenario(std::string_view json_text);
std::string serialize_scenario(const Scenario& sc);
Scenario load_scenario(const std::filesystem::path& file);

/// Built-in scenarios: example1, fig2, fig2-transposed, fig5.
std::optional<Scenario> builtin_scenario(std::string_view name);
std::vector<std::string> builtin_names();

struct SweepSpec
{
    Scenario base;
    std::string axis;
    std::vector<double> values;
};

/// Sweep files: { "base": <scenario object or built-in name>, "axis": "initial.eps[0]", "values": [...] }.
///
/// Axes: params.gamma, params.a[i], params.b[i], params.A[i][j], initial.x[i],
/// initial.y[i], initial.eps[i] (sets y_i = v and x_i = 1 - v), horizon. Indices are 0-based.
SweepSpec parse_sweep(std::string_view json_text);
SweepSpec load_sweep(const std::filesystem::path& file);

/// Base scenario with one parameter replaced. Throws if the result is invalid.
Scenario instantiate(const Scenario& base, const std::string& axis, double value);
}  // namespace netsir

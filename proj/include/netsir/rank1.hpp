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
#include <vector>

#include "netsir/curve_shape.hpp"
#include "netsir/integrate.hpp"
#include "netsir/model.hpp"

namespace netsir
{
/// Band used for every sign or threshold decision on initial data and equilibria.
inline constexpr double kClassifyBand = 1e-10;

struct InvariantVector
{
    Vector h;
};

enum class Stability
{
    Stable,
    Unstable,
    Marginal,
};

const char* to_string(Stability s);

struct EquilibriumReport
{
    Vector x_star;
    double xtilde_star = 0.0;
    double phi = 0.0;
    Stability tag = Stability::Stable;
};

/// Evaluation of the four sufficient conditions for a bimodal curve at node i
/// under A = beta·1·bᵀ with 1ᵀb = 1.
struct MultimodalityReport
{
    bool no_recovered = false;          ///< x(0) + y(0) = 1
    bool initially_decreasing = false;  ///< beta x_i ȳ - gamma y_i < 0
    bool aggregate_supercritical = false;  ///< beta x̄ > gamma
    bool small_seed = false;            ///< 0 < y_i(0) < ε̄_i
    std::optional<double> epsilon_bar;  ///< absent when beta <= gamma
    bool guaranteed = false;
    double beta = 0.0;
};

/// h_i = x_i exp(-a_i (x̄ + ȳ) / gamma), constant along rank-1 trajectories.
InvariantVector invariants_h(const EpidemicParams& p, const State& s);

/// Root of Σ_j b_j c_j exp(a_j ξ/γ) = ξ in [0, x̄], c_j = x_j exp(-a_j (x̄+ȳ)/γ).
/// Throws DomainExcluded for y = 0 with x̃ >= gamma.
double solve_phi(const EpidemicParams& p, const State& s);

/// The limit susceptible vector Φ(x(0), y(0)) and its stability.
EquilibriumReport limit_state(const EpidemicParams& p, const State& s0);

Stability classify_equilibrium(const EpidemicParams& p, const Vector& x_star);

/// Static shape prediction for node i from the signs of ẏ_i(0) and w_i(0).
CurveShape classify_node_curve(const EpidemicParams& p, const State& s0, std::size_t i);

/// g_i(ε) for A = beta·1·bᵀ.
double g_special(double beta, double gamma, double b_i, double eps);

/// Smallest root of g_i on [0, 1]. Throws SupercriticalityRequired when beta <= gamma.
double epsilon_bar(double beta, double gamma, double b_i);

/// beta and normalized b when a is constant after rescaling to 1ᵀb = 1. Throws NotSpecialForm.
struct SpecialForm
{
    double beta = 0.0;
    Vector b;
};
SpecialForm special_form(const EpidemicParams& p);

MultimodalityReport check_multimodality_conditions(const EpidemicParams& p, const State& s0, std::size_t i);

/// Upper bound on any stationary peak value of y_i under the special form.
double peak_upper_bound(const EpidemicParams& p, const State& s0, std::size_t i);

/// First time w_i <= 0 for every node; nullopt if w_i stays positive over the run.
std::vector<std::optional<double>> tbar_times(const Trajectory& traj);
}  // namespace netsir

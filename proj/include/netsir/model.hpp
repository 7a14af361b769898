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
#include <span>
#include <variant>
#include <vector>

#include "netsir/error.hpp"

namespace netsir
{
using Vector = std::vector<double>;

/// Slack allowed when projecting integrator round-off back into S.
inline constexpr double kSimplexSlack = 1e-12;

/// Dense square matrix, row-major.
class Matrix
{
public:
    Matrix() = default;
    explicit Matrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}
    Matrix(std::size_t n, std::vector<double> row_major);

    static Matrix outer(std::span<const double> a, std::span<const double> b);
    static Matrix diag_times(std::span<const double> d, const Matrix& m);

    [[nodiscard]] std::size_t size() const noexcept { return n_; }
    double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
    [[nodiscard]] const std::vector<double>& data() const noexcept { return data_; }
    [[nodiscard]] double max_entry() const;

    bool operator==(const Matrix&) const = default;

private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

struct DenseInteraction
{
    Matrix A;
    bool operator==(const DenseInteraction&) const = default;
};

/// A = a bᵀ. `a` scales how strongly node i is infected, `b` how strongly node j infects.
struct RankOneInteraction
{
    Vector a;
    Vector b;
    bool operator==(const RankOneInteraction&) const = default;
};

using Interaction = std::variant<DenseInteraction, RankOneInteraction>;

/// Validated model parameters. Construct through the factories; the invariants
/// (finite nonnegative A, positive factors, gamma > 0) are checked there.
class EpidemicParams
{
public:
    static EpidemicParams dense(Matrix A, double gamma);
    static EpidemicParams rank_one(Vector a, Vector b, double gamma);

    [[nodiscard]] std::size_t n() const noexcept { return n_; }
    [[nodiscard]] double gamma() const noexcept { return gamma_; }
    [[nodiscard]] const Interaction& interaction() const noexcept { return interaction_; }
    [[nodiscard]] bool is_rank_one() const noexcept
    {
        return std::holds_alternative<RankOneInteraction>(interaction_);
    }

    /// The n×n interaction matrix, materialized for RankOne params.
    [[nodiscard]] Matrix dense_matrix() const;

    /// Factors for rank-1 analysis: the stored ones for RankOne, otherwise a
    /// factorization of the dense matrix (1ᵀb = 1). Throws NotRankOne.
    [[nodiscard]] RankOneInteraction rank_one_factors() const;

    bool operator==(const EpidemicParams&) const = default;

private:
    EpidemicParams(std::size_t n, Interaction interaction, double gamma)
        : n_(n), interaction_(std::move(interaction)), gamma_(gamma)
    {
    }

    std::size_t n_ = 0;
    Interaction interaction_;
    double gamma_ = 1.0;
};

/// A point of S = {(x, y) in [0,1]^2n : x + y <= 1}. Build through validate_state.
struct State
{
    Vector x;
    Vector y;
    bool operator==(const State&) const = default;
};

struct StateDerivative
{
    Vector dx;
    Vector dy;
};

struct Aggregates
{
    double xbar = 0.0;    ///< sum_j b_j x_j
    double xtilde = 0.0;  ///< sum_j a_j b_j x_j
    double ybar = 0.0;    ///< sum_j b_j y_j
};

State validate_state(const EpidemicParams& p, Vector x, Vector y);

/// Entry check without params; used by the integrator on its own proposals.
bool in_simplex(const State& s, double slack = kSimplexSlack);

StateDerivative vector_field(const EpidemicParams& p, const State& s);

/// In-place variant used inside the integrator's stage loop.
void vector_field_into(const EpidemicParams& p, std::span<const double> x, std::span<const double> y,
                       std::span<double> dx, std::span<double> dy);

Aggregates aggregates(const EpidemicParams& p, const State& s);
Aggregates aggregates(const RankOneInteraction& f, const State& s);

/// w_i = x̃ - γ - a_i ȳ, the log-derivative of node i's incidence.
Vector w_values(const EpidemicParams& p, const State& s);

/// Detects A = a bᵀ with a, b > 0 and 1ᵀb = 1. Returns nullopt if the residual
/// exceeds tol·max(A) or a factor has a zero entry. Throws ZeroMatrix.
std::optional<RankOneInteraction> rank1_factorize(const Matrix& A, double tol);
}  // namespace netsir

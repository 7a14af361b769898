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

#include "netsir/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace netsir
{
std::string_view to_string(ErrorCode code)
{
    switch (code)
    {
        case ErrorCode::InvalidParams: return "InvalidParams";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::OutOfSimplex: return "OutOfSimplex";
        case ErrorCode::NotRankOne: return "NotRankOne";
        case ErrorCode::ZeroMatrix: return "ZeroMatrix";
        case ErrorCode::StepSizeUnderflow: return "StepSizeUnderflow";
        case ErrorCode::NoSignChange: return "NoSignChange";
        case ErrorCode::DomainExcluded: return "DomainExcluded";
        case ErrorCode::SupercriticalityRequired: return "SupercriticalityRequired";
        case ErrorCode::NotSpecialForm: return "NotSpecialForm";
        case ErrorCode::SubcriticalAggregate: return "SubcriticalAggregate";
        case ErrorCode::NoConvergence: return "NoConvergence";
        case ErrorCode::NonpositiveSusceptibles: return "NonpositiveSusceptibles";
        case ErrorCode::InvalidInitialState: return "InvalidInitialState";
        case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

// tolerance used when a dense matrix is reinterpreted as a rank-1 one
static constexpr double kFactorizeTol = 1e-12;

Matrix::Matrix(std::size_t n, std::vector<double> row_major) : n_(n), data_(std::move(row_major))
{
    if (data_.size() != n * n)
    {
        throw Error(ErrorCode::DimensionMismatch,
                    "matrix needs " + std::to_string(n * n) + " entries, got " + std::to_string(data_.size()));
    }
}

Matrix Matrix::outer(std::span<const double> a, std::span<const double> b)
{
    if (a.size() != b.size())
    {
        throw Error(ErrorCode::DimensionMismatch, "outer product of vectors of different length");
    }
    Matrix m(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
    {
        for (std::size_t j = 0; j < b.size(); ++j)
        {
            m(i, j) = a[i] * b[j];
        }
    }
    return m;
}

Matrix Matrix::diag_times(std::span<const double> d, const Matrix& m)
{
    if (d.size() != m.size())
    {
        throw Error(ErrorCode::DimensionMismatch, "diagonal scaling with wrong length");
    }
    Matrix out = m;
    for (std::size_t i = 0; i < m.size(); ++i)
    {
        for (std::size_t j = 0; j < m.size(); ++j)
        {
            out(i, j) *= d[i];
        }
    }
    return out;
}

double Matrix::max_entry() const
{
    if (data_.empty()) return 0.0;
    return *std::max_element(data_.begin(), data_.end());
}

EpidemicParams EpidemicParams::dense(Matrix A, double gamma)
{
    if (A.size() == 0)
    {
        throw Error(ErrorCode::InvalidParams, "interaction matrix must be at least 1x1");
    }
    for (double v : A.data())
    {
        if (!std::isfinite(v) || v < 0.0)
        {
            throw Error(ErrorCode::InvalidParams, "interaction matrix entries must be finite and nonnegative");
        }
    }
    if (!(gamma > 0.0) || !std::isfinite(gamma))
    {
        throw Error(ErrorCode::InvalidParams, "gamma must be positive");
    }
    const auto n = A.size();
    return EpidemicParams(n, DenseInteraction{std::move(A)}, gamma);
}

EpidemicParams EpidemicParams::rank_one(Vector a, Vector b, double gamma)
{
    if (a.empty() || a.size() != b.size())
    {
        throw Error(ErrorCode::DimensionMismatch, "factors a and b must be nonempty and of equal length");
    }
    auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    if (!std::all_of(a.begin(), a.end(), positive) || !std::all_of(b.begin(), b.end(), positive))
    {
        throw Error(ErrorCode::InvalidParams, "rank-1 factors must be finite and strictly positive");
    }
    if (!(gamma > 0.0) || !std::isfinite(gamma))
    {
        throw Error(ErrorCode::InvalidParams, "gamma must be positive");
    }
    const auto n = a.size();
    return EpidemicParams(n, RankOneInteraction{std::move(a), std::move(b)}, gamma);
}

Matrix EpidemicParams::dense_matrix() const
{
    if (const auto* d = std::get_if<DenseInteraction>(&interaction_)) return d->A;
    const auto& r = std::get<RankOneInteraction>(interaction_);
    return Matrix::outer(r.a, r.b);
}

RankOneInteraction EpidemicParams::rank_one_factors() const
{
    if (const auto* r = std::get_if<RankOneInteraction>(&interaction_)) return *r;
    const auto& A = std::get<DenseInteraction>(interaction_).A;
    auto factors = rank1_factorize(A, kFactorizeTol);
    if (!factors)
    {
        throw Error(ErrorCode::NotRankOne, "dense interaction matrix has no positive rank-1 factorization");
    }
    return *std::move(factors);
}

bool in_simplex(const State& s, double slack)
{
    if (s.x.size() != s.y.size()) return false;
    for (std::size_t i = 0; i < s.x.size(); ++i)
    {
        const double x = s.x[i];
        const double y = s.y[i];
        if (!std::isfinite(x) || !std::isfinite(y)) return false;
        if (x < -slack || y < -slack || x + y > 1.0 + slack) return false;
    }
    return true;
}

State validate_state(const EpidemicParams& p, Vector x, Vector y)
{
    if (x.size() != p.n() || y.size() != p.n())
    {
        throw Error(ErrorCode::DimensionMismatch, "state vectors must have length " + std::to_string(p.n()));
    }
    State s{std::move(x), std::move(y)};
    if (!in_simplex(s))
    {
        throw Error(ErrorCode::OutOfSimplex, "state violates 0 <= x, 0 <= y, x + y <= 1");
    }
    for (std::size_t i = 0; i < p.n(); ++i)
    {
        s.x[i] = std::max(s.x[i], 0.0);
        s.y[i] = std::max(s.y[i], 0.0);
        const double excess = s.x[i] + s.y[i] - 1.0;
        if (excess > 0.0)
        {
            // take the overshoot from the larger of the two
            if (s.x[i] >= s.y[i])
                s.x[i] -= excess;
            else
                s.y[i] -= excess;
        }
    }
    return s;
}

void vector_field_into(const EpidemicParams& p, std::span<const double> x, std::span<const double> y,
                       std::span<double> dx, std::span<double> dy)
{
    const std::size_t n = p.n();
    const double gamma = p.gamma();
    if (const auto* r = std::get_if<RankOneInteraction>(&p.interaction()))
    {
        double ybar = 0.0;
        for (std::size_t j = 0; j < n; ++j) ybar += r->b[j] * y[j];
        for (std::size_t i = 0; i < n; ++i)
        {
            const double incidence = r->a[i] * x[i] * ybar;
            dx[i] = -incidence;
            dy[i] = incidence - gamma * y[i];
        }
        return;
    }
    const auto& A = std::get<DenseInteraction>(p.interaction()).A;
    for (std::size_t i = 0; i < n; ++i)
    {
        double force = 0.0;
        for (std::size_t j = 0; j < n; ++j) force += A(i, j) * y[j];
        const double incidence = x[i] * force;
        dx[i] = -incidence;
        dy[i] = incidence - gamma * y[i];
    }
}

StateDerivative vector_field(const EpidemicParams& p, const State& s)
{
    StateDerivative d{Vector(p.n()), Vector(p.n())};
    vector_field_into(p, s.x, s.y, d.dx, d.dy);
    return d;
}

Aggregates aggregates(const RankOneInteraction& f, const State& s)
{
    Aggregates agg;
    for (std::size_t j = 0; j < f.a.size(); ++j)
    {
        agg.xbar += f.b[j] * s.x[j];
        agg.xtilde += f.a[j] * f.b[j] * s.x[j];
        agg.ybar += f.b[j] * s.y[j];
    }
    return agg;
}

Aggregates aggregates(const EpidemicParams& p, const State& s) { return aggregates(p.rank_one_factors(), s); }

Vector w_values(const EpidemicParams& p, const State& s)
{
    const auto f = p.rank_one_factors();
    const auto agg = aggregates(f, s);
    Vector w(p.n());
    for (std::size_t i = 0; i < p.n(); ++i) w[i] = agg.xtilde - p.gamma() - f.a[i] * agg.ybar;
    return w;
}

std::optional<RankOneInteraction> rank1_factorize(const Matrix& A, double tol)
{
    const std::size_t n = A.size();
    const double scale = A.max_entry();
    for (double v : A.data())
    {
        if (!std::isfinite(v) || v < 0.0)
        {
            throw Error(ErrorCode::InvalidParams, "rank1_factorize needs a finite nonnegative matrix");
        }
    }
    if (!(scale > 0.0)) throw Error(ErrorCode::ZeroMatrix, "cannot factorize the zero matrix");

    // For A = a bᵀ with 1ᵀb = 1, row sums are a and column sums are b·(1ᵀa).
    Vector a(n, 0.0);
    Vector b(n, 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i)
    {
        for (std::size_t j = 0; j < n; ++j)
        {
            a[i] += A(i, j);
            b[j] += A(i, j);
            total += A(i, j);
        }
    }
    for (double& v : b) v /= total;
    if (std::any_of(a.begin(), a.end(), [](double v) { return !(v > 0.0); }) ||
        std::any_of(b.begin(), b.end(), [](double v) { return !(v > 0.0); }))
    {
        return std::nullopt;
    }
    for (std::size_t i = 0; i < n; ++i)
    {
        for (std::size_t j = 0; j < n; ++j)
        {
            if (std::abs(A(i, j) - a[i] * b[j]) > tol * scale) return std::nullopt;
        }
    }
    return RankOneInteraction{std::move(a), std::move(b)};
}
}  // namespace netsir

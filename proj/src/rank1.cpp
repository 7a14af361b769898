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

#include "netsir/rank1.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace netsir
{
namespace
{
template <class... Ts>
struct overloaded : Ts...
{
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool all_zero(const Vector& v)
{
    return std::all_of(v.begin(), v.end(), [](double e) { return e == 0.0; });
}

/// Bisection for a continuous f with f(lo) > 0 >= f(hi), run to floating-point resolution.
template <class F>
double bisect_down(F&& f, double lo, double hi)
{
    for (int it = 0; it < 400; ++it)
    {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (f(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}
}  // namespace

std::string shape_tag(const CurveShape& s)
{
    return std::visit(overloaded{
                          [](const shape::Constant&) { return std::string("Constant"); },
                          [](const shape::MonotoneDecreasing&) { return std::string("MonotoneDecreasing"); },
                          [](const shape::Unimodal&) { return std::string("Unimodal"); },
                          [](const shape::Bimodal&) { return std::string("Bimodal"); },
                          [](const shape::Undetermined&) { return std::string("Undetermined"); },
                          [](const shape::Multimodal& m) {
                              return "Multimodal(" + std::to_string(m.peak_times.size()) + " peaks)";
                          },
                      },
                      s);
}

const char* to_string(Stability s)
{
    switch (s)
    {
        case Stability::Stable: return "Stable";
        case Stability::Unstable: return "Unstable";
        case Stability::Marginal: return "Marginal";
    }
    return "?";
}

InvariantVector invariants_h(const EpidemicParams& p, const State& s)
{
    const auto f = p.rank_one_factors();
    const auto agg = aggregates(f, s);
    InvariantVector out{Vector(p.n())};
    for (std::size_t i = 0; i < p.n(); ++i)
    {
        out.h[i] = s.x[i] * std::exp(-f.a[i] * (agg.xbar + agg.ybar) / p.gamma());
    }
    return out;
}

double solve_phi(const EpidemicParams& p, const State& s)
{
    const auto f = p.rank_one_factors();
    const auto agg = aggregates(f, s);
    const double gamma = p.gamma();
    if (all_zero(s.x)) return 0.0;
    if (all_zero(s.y))
    {
        if (agg.xtilde >= gamma)
        {
            throw Error(ErrorCode::DomainExcluded, "y = 0 with x̃ >= gamma has no unique limit root");
        }
        return agg.xbar;
    }

    const std::size_t n = p.n();
    Vector c(n);
    for (std::size_t j = 0; j < n; ++j) c[j] = s.x[j] * std::exp(-f.a[j] * (agg.xbar + agg.ybar) / gamma);
    auto g = [&](double xi) {
        double sum = 0.0;
        for (std::size_t j = 0; j < n; ++j) sum += f.b[j] * c[j] * std::exp(f.a[j] * xi / gamma);
        return sum - xi;
    };

    double hi = agg.xbar;
    if (g(hi) >= 0.0)
    {
        // ȳ below round-off: g(x̄) is numerically zero.
        if (agg.xtilde < gamma) return agg.xbar;
        auto dg = [&](double xi) {
            double sum = 0.0;
            for (std::size_t j = 0; j < n; ++j) sum += f.a[j] * f.b[j] * c[j] * std::exp(f.a[j] * xi / gamma);
            return sum / gamma - 1.0;
        };
        // g is convex, so its minimizer on [0, x̄] brackets the lower root
        const double xi_min = bisect_down([&](double xi) { return -dg(xi); }, 0.0, agg.xbar);
        if (g(xi_min) >= 0.0) return xi_min;
        hi = xi_min;
    }
    return bisect_down(g, 0.0, hi);
}

EquilibriumReport limit_state(const EpidemicParams& p, const State& s0)
{
    const auto f = p.rank_one_factors();
    const auto agg = aggregates(f, s0);
    EquilibriumReport rep;
    rep.phi = solve_phi(p, s0);
    rep.x_star.resize(p.n());
    for (std::size_t i = 0; i < p.n(); ++i)
    {
        rep.x_star[i] = s0.x[i] * std::exp(f.a[i] * (rep.phi - agg.xbar - agg.ybar) / p.gamma());
    }
    for (std::size_t i = 0; i < p.n(); ++i) rep.xtilde_star += f.a[i] * f.b[i] * rep.x_star[i];
    rep.tag = classify_equilibrium(p, rep.x_star);
    return rep;
}

Stability classify_equilibrium(const EpidemicParams& p, const Vector& x_star)
{
    const auto f = p.rank_one_factors();
    if (x_star.size() != p.n()) throw Error(ErrorCode::DimensionMismatch, "equilibrium has wrong length");
    double xtilde = 0.0;
    for (std::size_t i = 0; i < p.n(); ++i) xtilde += f.a[i] * f.b[i] * x_star[i];
    if (xtilde < p.gamma() - kClassifyBand) return Stability::Stable;
    if (xtilde > p.gamma() + kClassifyBand) return Stability::Unstable;
    return Stability::Marginal;
}

CurveShape classify_node_curve(const EpidemicParams& p, const State& s0, std::size_t i)
{
    const auto f = p.rank_one_factors();
    if (i >= p.n()) throw Error(ErrorCode::DimensionMismatch, "node index out of range");
    // A node with nothing left to infect or recover stays at zero.
    if (all_zero(s0.y) || (s0.x[i] == 0.0 && s0.y[i] == 0.0)) return shape::Constant{};

    const auto agg = aggregates(f, s0);
    const double d0 = f.a[i] * s0.x[i] * agg.ybar - p.gamma() * s0.y[i];
    const double w0 = agg.xtilde - p.gamma() - f.a[i] * agg.ybar;
    const int d_sign = d0 > kClassifyBand ? 1 : (d0 < -kClassifyBand ? -1 : 0);
    const bool w_positive = w0 > kClassifyBand;

    if (d_sign > 0 || (d_sign == 0 && w_positive)) return shape::Unimodal{};
    if (!w_positive) return shape::MonotoneDecreasing{};
    return shape::Undetermined{};
}

double g_special(double beta, double gamma, double b_i, double eps)
{
    if (eps >= 1.0) return -1.0;
    const double r = gamma / beta;
    const double shrink = 1.0 - b_i * eps;
    return (1.0 - eps) / shrink * (1.0 - r + r * std::log(r / shrink)) - eps;
}

double epsilon_bar(double beta, double gamma, double b_i)
{
    if (!(beta > gamma))
    {
        throw Error(ErrorCode::SupercriticalityRequired, "epsilon_bar needs beta > gamma");
    }
    if (!(b_i > 0.0) || b_i > 1.0) throw Error(ErrorCode::InvalidParams, "b_i must lie in (0, 1]");
    constexpr double kScanStep = 1e-3;
    constexpr int kScanPoints = 1000;
    auto g = [&](double e) { return g_special(beta, gamma, b_i, e); };
    double prev = 0.0;
    for (int k = 1; k <= kScanPoints; ++k)
    {
        const double cur = k == kScanPoints ? 1.0 : k * kScanStep;
        const double v = g(cur);
        if (v == 0.0) return cur;
        if (v < 0.0) return bisect_down(g, prev, cur);
        prev = cur;
    }
    return 1.0;  // unreachable: g(1) = -1
}

SpecialForm special_form(const EpidemicParams& p)
{
    const auto f = p.rank_one_factors();
    const double total = std::accumulate(f.b.begin(), f.b.end(), 0.0);
    SpecialForm sf;
    sf.beta = f.a[0] * total;
    for (double a : f.a)
    {
        if (std::abs(a * total - sf.beta) > 1e-12 * sf.beta)
        {
            throw Error(ErrorCode::NotSpecialForm, "interaction is not of the form beta·1·bᵀ");
        }
    }
    sf.b.resize(p.n());
    for (std::size_t j = 0; j < p.n(); ++j) sf.b[j] = f.b[j] / total;
    return sf;
}

MultimodalityReport check_multimodality_conditions(const EpidemicParams& p, const State& s0, std::size_t i)
{
    const auto sf = special_form(p);
    if (i >= p.n()) throw Error(ErrorCode::DimensionMismatch, "node index out of range");
    const double gamma = p.gamma();
    double xbar = 0.0, ybar = 0.0;
    for (std::size_t j = 0; j < p.n(); ++j)
    {
        xbar += sf.b[j] * s0.x[j];
        ybar += sf.b[j] * s0.y[j];
    }
    MultimodalityReport rep;
    rep.beta = sf.beta;
    rep.no_recovered = true;
    for (std::size_t j = 0; j < p.n(); ++j)
    {
        if (std::abs(s0.x[j] + s0.y[j] - 1.0) > 1e-12) rep.no_recovered = false;
    }
    rep.initially_decreasing = sf.beta * s0.x[i] * ybar - gamma * s0.y[i] < 0.0;
    rep.aggregate_supercritical = sf.beta * xbar > gamma;
    if (sf.beta > gamma)
    {
        rep.epsilon_bar = epsilon_bar(sf.beta, gamma, sf.b[i]);
        rep.small_seed = s0.y[i] > 0.0 && s0.y[i] < *rep.epsilon_bar;
    }
    rep.guaranteed = rep.no_recovered && rep.initially_decreasing && rep.aggregate_supercritical && rep.small_seed;
    return rep;
}

double peak_upper_bound(const EpidemicParams& p, const State& s0, std::size_t i)
{
    const auto sf = special_form(p);
    if (i >= p.n()) throw Error(ErrorCode::DimensionMismatch, "node index out of range");
    const double gamma = p.gamma();
    double xbar = 0.0;
    for (std::size_t j = 0; j < p.n(); ++j)
    {
        if (std::abs(s0.x[j] + s0.y[j] - 1.0) > 1e-12)
        {
            throw Error(ErrorCode::InvalidInitialState, "peak bound assumes x(0) + y(0) = 1");
        }
        xbar += sf.b[j] * s0.x[j];
    }
    if (!(sf.beta * xbar > gamma))
    {
        throw Error(ErrorCode::SubcriticalAggregate, "peak bound needs beta·x̄(0) > gamma");
    }
    const double r = gamma / sf.beta;
    const double ybar_peak = 1.0 - r + r * std::log(r / xbar);
    return s0.x[i] / r * ybar_peak;
}

std::vector<std::optional<double>> tbar_times(const Trajectory& traj)
{
    const auto& p = traj.params;
    const auto f = p.rank_one_factors();
    const double gamma = p.gamma();
    std::vector<std::optional<double>> out(p.n());
    for (std::size_t i = 0; i < p.n(); ++i)
    {
        auto w_i = [&](double, const State& s) {
            const auto agg = aggregates(f, s);
            return agg.xtilde - gamma - f.a[i] * agg.ybar;
        };
        if (w_i(0.0, traj.states[0]) <= 0.0)
        {
            out[i] = 0.0;
            continue;
        }
        for (std::size_t k = 1; k < traj.size(); ++k)
        {
            if (w_i(traj.times[k], traj.states[k]) <= 0.0)
            {
                out[i] = refine_crossing(traj, w_i, {k - 1, k});
                break;
            }
        }
    }
    return out;
}
}  // namespace netsir

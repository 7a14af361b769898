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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <random>
#include <vector>

#include "netsir/model.hpp"
#include "netsir/rank1.hpp"

namespace netsir::oracle
{
// Oracles are kept independent of the library: plain bisection on the defining equations.
inline double bisect(const std::function<double(double)>& f, double lo, double hi, int iters = 200)
{
    double flo = f(lo);
    for (int k = 0; k < iters; ++k)
    {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((fm > 0) == (flo > 0))
        {
            lo = mid;
            flo = fm;
        }
        else
        {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

inline double g_oracle(double beta, double gamma, double b, double eps)
{
    const double r = gamma / beta;
    return (1 - eps) / (1 - b * eps) * (1 - r + r * std::log(r / (1 - b * eps))) - eps;
}

inline double epsilon_bar_oracle(double beta, double gamma, double b)
{
    auto g = [&](double e) { return e >= 1.0 ? -1.0 : g_oracle(beta, gamma, b, e); };
    double lo = 0.0;
    for (int k = 1; k <= 1000; ++k)
    {
        const double hi = k * 1e-3;
        if (g(hi) <= 0) return bisect(g, lo, hi);
        lo = hi;
    }
    return 1.0;
}

// Frozen reference values, computed once in 50-digit arithmetic.
inline constexpr double kEpsBarHalf = 0.180851548814176775;   // beta=2, gamma=1, b=1/2
inline constexpr double kScalarFinal = 0.199796032323200736;  // beta=2, gamma=1, x0=.99, y0=.01
inline constexpr double kPhiExample1 = 0.358227588550406533;
inline constexpr double kOneMinusLog185 = 0.384814360909766549;
inline constexpr double kInv185 = 0.540540540540540541;
inline constexpr double kPeakBoundEx1 = 0.327092206773301567;

struct RandomScenario
{
    EpidemicParams params;
    State initial;
};

inline double xtilde_of(const Vector& a, const Vector& b, const Vector& x)
{
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += a[i] * b[i] * x[i];
    return s;
}

// Random rank-1 scenario with n <= 8; keeps x̃(0) away from gamma so extinction is not pathologically slow.
inline RandomScenario random_rank_one(std::mt19937_64& rng, std::size_t max_n = 8)
{
    std::uniform_int_distribution<std::size_t> dn(1, max_n);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (;;)
    {
        const std::size_t n = dn(rng);
        Vector a(n), b(n), x(n), y(n);
        for (std::size_t i = 0; i < n; ++i)
        {
            a[i] = 0.2 + 1.8 * u(rng);
            b[i] = 0.05 + 0.95 * u(rng);
            x[i] = 0.2 + 0.8 * u(rng);
            y[i] = u(rng) < 0.3 ? 0.0 : std::min(0.3 * u(rng), 1.0 - x[i]);
        }
        if (std::all_of(y.begin(), y.end(), [](double v) { return v <= 0.0; })) y[0] = 0.5 * (1.0 - x[0]);
        const double gamma = 0.3 + 1.2 * u(rng);
        if (std::abs(xtilde_of(a, b, x) - gamma) < 0.05 * gamma) continue;
        auto p = EpidemicParams::rank_one(a, b, gamma);
        auto s = validate_state(p, x, y);
        return {std::move(p), std::move(s)};
    }
}

// Seeded special-form scenario: A = beta 1 bᵀ, b_1 < min(r, 1 - r), seed only in node 1 with y_1 < ε̄_1.
inline RandomScenario recipe_scenario(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> dn(2, 6);
    const double beta = 1.5 + 1.5 * u(rng);
    const double r = 0.3 + 0.4 * u(rng);
    const double gamma = r * beta;
    const std::size_t n = dn(rng);
    Vector b(n);
    b[0] = (0.2 + 0.75 * u(rng)) * std::min(r, 1.0 - r);
    Vector w(n - 1);
    double total = 0.0;
    for (auto& v : w) total += (v = 0.1 + u(rng));
    for (std::size_t j = 1; j < n; ++j) b[j] = (1.0 - b[0]) * w[j - 1] / total;
    const double eps = (0.05 + 0.9 * u(rng)) * epsilon_bar_oracle(beta, gamma, b[0]);
    Vector x(n, 1.0), y(n, 0.0);
    x[0] = 1.0 - eps;
    y[0] = eps;
    auto p = EpidemicParams::rank_one(Vector(n, beta), b, gamma);
    auto s = validate_state(p, x, y);
    return {std::move(p), std::move(s)};
}
}  // namespace netsir::oracle

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

#include "netsir/spectral.hpp"

#include <cmath>
#include <vector>

#include "netsir/rank1.hpp"

namespace netsir
{
namespace
{
/// Strong connectivity of the positive pattern (Kosaraju on an n ≤ few-hundred graph).
bool is_irreducible(const Matrix& M)
{
    const std::size_t n = M.size();
    auto reaches_all = [&](bool transpose) {
        std::vector<bool> seen(n, false);
        std::vector<std::size_t> stack{0};
        seen[0] = true;
        std::size_t count = 1;
        while (!stack.empty())
        {
            const auto u = stack.back();
            stack.pop_back();
            for (std::size_t v = 0; v < n; ++v)
            {
                const double w = transpose ? M(v, u) : M(u, v);
                if (w > 0.0 && !seen[v])
                {
                    seen[v] = true;
                    ++count;
                    stack.push_back(v);
                }
            }
        }
        return count == n;
    };
    return n == 1 ? M(0, 0) > 0.0 : reaches_all(false) && reaches_all(true);
}
}  // namespace

DominantPair dominant_eig(const Matrix& M)
{
    const std::size_t n = M.size();
    if (n == 0) throw Error(ErrorCode::DimensionMismatch, "empty matrix");
    for (double e : M.data())
    {
        if (!std::isfinite(e) || e < 0.0) throw Error(ErrorCode::InvalidParams, "matrix must be nonnegative");
    }
    constexpr std::size_t kMaxIterations = 1'000'000;
    constexpr double kStepTol = 1e-12;

    DominantPair out;
    out.irreducible = is_irreducible(M);
    Vector v(n, 1.0 / static_cast<double>(n));
    Vector next(n);
    double norm = 1.0;
    for (std::size_t it = 1; it <= kMaxIterations; ++it)
    {
        // next = vᵀ (M + I)
        norm = 0.0;
        for (std::size_t j = 0; j < n; ++j)
        {
            double s = v[j];
            for (std::size_t i = 0; i < n; ++i) s += v[i] * M(i, j);
            next[j] = s;
            norm += s;
        }
        double diff = 0.0;
        for (std::size_t j = 0; j < n; ++j)
        {
            next[j] /= norm;
            diff += std::abs(next[j] - v[j]);
        }
        v.swap(next);
        if (diff < kStepTol)
        {
            out.iterations = it;
            // 1ᵀ((M+I)ᵀ v) / 1ᵀv with 1ᵀv = 1
            double growth = 0.0;
            for (std::size_t j = 0; j < n; ++j)
            {
                double s = v[j];
                for (std::size_t i = 0; i < n; ++i) s += v[i] * M(i, j);
                growth += s;
            }
            out.lambda_max = std::max(growth - 1.0, 0.0);
            out.v_max = std::move(v);
            return out;
        }
    }
    throw Error(ErrorCode::NoConvergence, "power iteration did not converge");
}

bool instability_check(const EpidemicParams& p, const Vector& x_star)
{
    if (x_star.size() != p.n()) throw Error(ErrorCode::DimensionMismatch, "equilibrium has wrong length");
    const auto pair = dominant_eig(Matrix::diag_times(x_star, p.dense_matrix()));
    return pair.lambda_max > p.gamma() + kClassifyBand;
}

double scalar_invariant(double beta, double gamma, double x, double y)
{
    if (!(x > 0.0)) throw Error(ErrorCode::NonpositiveSusceptibles, "log x needs x > 0");
    return beta * (x + y) - gamma * std::log(x);
}

double scalar_final_size(double beta, double gamma, double x0, double y0)
{
    if (!(beta > 0.0) || !(gamma > 0.0)) throw Error(ErrorCode::InvalidParams, "beta and gamma must be positive");
    if (!(x0 > 0.0) || !(y0 >= 0.0) || x0 > 1.0 - y0 + kSimplexSlack)
    {
        throw Error(ErrorCode::InvalidInitialState, "need 0 < x0 <= 1 - y0 <= 1");
    }
    // y0 = 0 is an equilibrium whatever beta·x0 is.
    if (y0 == 0.0) return x0;

    const double c0 = scalar_invariant(beta, gamma, x0, y0);
    auto excess = [&](double r) { return beta * r - gamma * std::log(r) - c0; };
    double hi = gamma / beta;
    if (excess(hi) == 0.0) return hi;
    double lo = std::min(x0, hi) * 1e-16;
    while (excess(lo) <= 0.0)
    {
        lo *= 1e-16;
        if (lo < 1e-300) return lo;  // root below double resolution
    }
    // excess is decreasing on (0, γ/β]
    for (int it = 0; it < 400; ++it)
    {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (excess(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}
}  // namespace netsir

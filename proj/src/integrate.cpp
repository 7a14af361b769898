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

#include "netsir/integrate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace netsir
{
namespace
{
// Dormand–Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784, a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200, e6 = 22.0 / 525,
                 e7 = -1.0 / 40;

// PI controller constants (Hairer–Wanner, DOPRI5 defaults).
constexpr double kSafety = 0.9;
constexpr double kBeta = 0.04;
constexpr double kExpo = 0.2 - kBeta * 0.75;
constexpr double kFacMin = 0.2;
constexpr double kFacMax = 10.0;

/// Packed z = [x; y], length 2n.
class Dopri5
{
public:
    Dopri5(const EpidemicParams& p, const IntegratorConfig& cfg) : p_(p), cfg_(cfg), n_(p.n())
    {
        for (auto& k : k_) k.assign(2 * n_, 0.0);
        tmp_.assign(2 * n_, 0.0);
        next_.assign(2 * n_, 0.0);
    }

    /// Integrates z from t0 to t1 in place.
    void advance(std::vector<double>& z, double t0, double t1)
    {
        double t = t0;
        if (h_ <= 0.0) h_ = initial_step(z, t1 - t0);
        bool fsal_valid = false;
        while (t1 - t > 1e-15 * std::max(1.0, std::abs(t1)))
        {
            double h = std::min({h_, t1 - t, cfg_.max_step});
            bool last = (h == t1 - t);
            if (!fsal_valid)
            {
                rhs(z, k_[0]);
                fsal_valid = true;
            }
            for (;;)
            {
                if (h < 1e-14 * std::max(1.0, std::abs(t)))
                {
                    throw Error(ErrorCode::StepSizeUnderflow,
                                "step size underflow at t=" + std::to_string(t));
                }
                const double err = try_step(z, h);
                const bool admissible = err <= 1.0 && stays_in_simplex();
                const double fac11 = std::pow(std::max(err, 1e-300), kExpo);
                if (admissible)
                {
                    double fac = fac11 / std::pow(fac_old_, kBeta);
                    fac = std::clamp(fac / kSafety, 1.0 / kFacMax, 1.0 / kFacMin);
                    const double h_new = h / fac;
                    fac_old_ = std::max(err, 1e-4);
                    z.swap(next_);
                    project(z);
                    std::swap(k_[0], k_[6]);
                    t = last ? t1 : t + h;
                    // a step shortened to hit t1 should not shrink the next one
                    if (!last || h_new > h_) h_ = h_new;
                    break;
                }
                const double shrink = err <= 1.0 ? 4.0 : std::min(1.0 / kFacMin, fac11 / kSafety);
                h /= shrink;
                last = false;
            }
        }
    }

private:
    void rhs(std::span<const double> z, std::span<double> out) const
    {
        vector_field_into(p_, z.subspan(0, n_), z.subspan(n_, n_), out.subspan(0, n_), out.subspan(n_, n_));
    }

    double initial_step(const std::vector<double>& z, double span) const
    {
        std::vector<double> f(2 * n_);
        rhs(z, f);
        double d0 = 0.0, d1 = 0.0;
        for (std::size_t i = 0; i < 2 * n_; ++i)
        {
            const double sc = cfg_.abs_tol + cfg_.rel_tol * std::abs(z[i]);
            d0 += (z[i] / sc) * (z[i] / sc);
            d1 += (f[i] / sc) * (f[i] / sc);
        }
        d0 = std::sqrt(d0 / (2.0 * n_));
        d1 = std::sqrt(d1 / (2.0 * n_));
        double h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
        return std::clamp(h, 1e-8, std::max(span, 1e-8));
    }

    double try_step(const std::vector<double>& z, double h)
    {
        const std::size_t m = 2 * n_;
        auto stage = [&](std::vector<double>& out, auto&& combine) {
            for (std::size_t i = 0; i < m; ++i) tmp_[i] = z[i] + h * combine(i);
            rhs(tmp_, out);
        };
        stage(k_[1], [&](std::size_t i) { return a21 * k_[0][i]; });
        stage(k_[2], [&](std::size_t i) { return a31 * k_[0][i] + a32 * k_[1][i]; });
        stage(k_[3], [&](std::size_t i) { return a41 * k_[0][i] + a42 * k_[1][i] + a43 * k_[2][i]; });
        stage(k_[4],
              [&](std::size_t i) { return a51 * k_[0][i] + a52 * k_[1][i] + a53 * k_[2][i] + a54 * k_[3][i]; });
        stage(k_[5], [&](std::size_t i) {
            return a61 * k_[0][i] + a62 * k_[1][i] + a63 * k_[2][i] + a64 * k_[3][i] + a65 * k_[4][i];
        });
        for (std::size_t i = 0; i < m; ++i)
        {
            next_[i] = z[i] + h * (a71 * k_[0][i] + a73 * k_[2][i] + a74 * k_[3][i] + a75 * k_[4][i] +
                                   a76 * k_[5][i]);
        }
        rhs(next_, k_[6]);
        double err = 0.0;
        for (std::size_t i = 0; i < m; ++i)
        {
            const double e = h * (e1 * k_[0][i] + e3 * k_[2][i] + e4 * k_[3][i] + e5 * k_[4][i] + e6 * k_[5][i] +
                                  e7 * k_[6][i]);
            const double sc = cfg_.abs_tol + cfg_.rel_tol * std::max(std::abs(z[i]), std::abs(next_[i]));
            err += (e / sc) * (e / sc);
        }
        return std::sqrt(err / static_cast<double>(m));
    }

    bool stays_in_simplex() const
    {
        for (std::size_t i = 0; i < n_; ++i)
        {
            const double x = next_[i];
            const double y = next_[n_ + i];
            if (!std::isfinite(x) || !std::isfinite(y)) return false;
            if (x < -kSimplexSlack || y < -kSimplexSlack || x + y > 1.0 + kSimplexSlack) return false;
        }
        return true;
    }

    void project(std::vector<double>& z) const
    {
        for (std::size_t i = 0; i < n_; ++i)
        {
            double& x = z[i];
            double& y = z[n_ + i];
            x = std::max(x, 0.0);
            y = std::max(y, 0.0);
            const double excess = x + y - 1.0;
            if (excess > 0.0) (x >= y ? x : y) -= excess;
        }
    }

    const EpidemicParams& p_;
    const IntegratorConfig& cfg_;
    std::size_t n_;
    std::array<std::vector<double>, 7> k_;
    std::vector<double> tmp_;
    std::vector<double> next_;
    double h_ = 0.0;
    double fac_old_ = 1e-4;
};

std::vector<double> pack(const State& s)
{
    std::vector<double> z(s.x);
    z.insert(z.end(), s.y.begin(), s.y.end());
    return z;
}

State unpack(const std::vector<double>& z, std::size_t n)
{
    return State{Vector(z.begin(), z.begin() + static_cast<std::ptrdiff_t>(n)),
                 Vector(z.begin() + static_cast<std::ptrdiff_t>(n), z.end())};
}

void check_start(const EpidemicParams& p, const State& s0)
{
    if (s0.x.size() != p.n() || s0.y.size() != p.n())
    {
        throw Error(ErrorCode::DimensionMismatch, "initial state does not match the parameter dimension");
    }
    if (!in_simplex(s0)) throw Error(ErrorCode::OutOfSimplex, "initial state is outside S");
}

void push_sample(Trajectory& traj, double t, State s)
{
    traj.derivs.push_back(vector_field(traj.params, s));
    traj.times.push_back(t);
    traj.states.push_back(std::move(s));
}

double max_abs(const Vector& v)
{
    double m = 0.0;
    for (double e : v) m = std::max(m, std::abs(e));
    return m;
}
}  // namespace

void IntegratorConfig::validate() const
{
    auto pos = [](double v) { return std::isfinite(v) && v > 0.0; };
    if (!pos(abs_tol) || !pos(rel_tol) || !pos(max_step) || !pos(sample_dt) || !pos(y_extinction_tol) ||
        (t_max && !pos(*t_max)))
    {
        throw Error(ErrorCode::InvalidParams, "integrator settings must all be positive");
    }
}

Trajectory integrate(const EpidemicParams& p, const State& s0, double horizon, const IntegratorConfig& cfg)
{
    cfg.validate();
    check_start(p, s0);
    if (!(horizon > 0.0) || !std::isfinite(horizon))
    {
        throw Error(ErrorCode::InvalidParams, "horizon must be positive");
    }
    Trajectory traj{{}, {}, {}, p, cfg};
    const auto steps = static_cast<std::size_t>(std::ceil(horizon / cfg.sample_dt - 1e-9));
    traj.times.reserve(steps + 1);
    traj.states.reserve(steps + 1);
    traj.derivs.reserve(steps + 1);

    Dopri5 solver(p, cfg);
    auto z = pack(s0);
    double t = 0.0;
    push_sample(traj, t, s0);
    for (std::size_t k = 1; k <= steps; ++k)
    {
        const double next = std::min(static_cast<double>(k) * cfg.sample_dt, horizon);
        solver.advance(z, t, next);
        t = next;
        push_sample(traj, t, unpack(z, p.n()));
    }
    return traj;
}

Trajectory integrate_rk4(const EpidemicParams& p, const State& s0, double horizon, double step)
{
    check_start(p, s0);
    IntegratorConfig cfg;
    cfg.sample_dt = step;
    Trajectory traj{{}, {}, {}, p, cfg};
    const std::size_t n = p.n();
    const auto steps = static_cast<std::size_t>(std::ceil(horizon / step - 1e-9));
    auto z = pack(s0);
    std::array<std::vector<double>, 4> k;
    for (auto& v : k) v.assign(2 * n, 0.0);
    std::vector<double> tmp(2 * n);
    auto rhs = [&](const std::vector<double>& in, std::vector<double>& out) {
        std::span<const double> zi(in);
        std::span<double> zo(out);
        vector_field_into(p, zi.subspan(0, n), zi.subspan(n, n), zo.subspan(0, n), zo.subspan(n, n));
    };
    double t = 0.0;
    push_sample(traj, t, s0);
    for (std::size_t s = 1; s <= steps; ++s)
    {
        const double next = std::min(static_cast<double>(s) * step, horizon);
        const double h = next - t;
        rhs(z, k[0]);
        for (std::size_t i = 0; i < 2 * n; ++i) tmp[i] = z[i] + 0.5 * h * k[0][i];
        rhs(tmp, k[1]);
        for (std::size_t i = 0; i < 2 * n; ++i) tmp[i] = z[i] + 0.5 * h * k[1][i];
        rhs(tmp, k[2]);
        for (std::size_t i = 0; i < 2 * n; ++i) tmp[i] = z[i] + h * k[2][i];
        rhs(tmp, k[3]);
        for (std::size_t i = 0; i < 2 * n; ++i) z[i] += h / 6.0 * (k[0][i] + 2.0 * k[1][i] + 2.0 * k[2][i] + k[3][i]);
        t = next;
        push_sample(traj, t, validate_state(p, Vector(z.begin(), z.begin() + static_cast<std::ptrdiff_t>(n)),
                                            Vector(z.begin() + static_cast<std::ptrdiff_t>(n), z.end())));
    }
    return traj;
}

ExtinctionRun integrate_until_extinction(const EpidemicParams& p, const State& s0, const IntegratorConfig& cfg)
{
    cfg.validate();
    check_start(p, s0);
    const double t_max = cfg.effective_t_max(p);
    Trajectory traj{{}, {}, {}, p, cfg};
    push_sample(traj, 0.0, s0);
    if (max_abs(s0.y) < cfg.y_extinction_tol) return ExtinctionRun{std::move(traj), s0, StopReason::Extinct};

    Dopri5 solver(p, cfg);
    auto z = pack(s0);
    double t = 0.0;
    for (std::size_t k = 1;; ++k)
    {
        const double next = std::min(static_cast<double>(k) * cfg.sample_dt, t_max);
        solver.advance(z, t, next);
        t = next;
        push_sample(traj, t, unpack(z, p.n()));
        const auto& last = traj.states.back();
        if (max_abs(last.y) < cfg.y_extinction_tol)
        {
            return ExtinctionRun{std::move(traj), last, StopReason::Extinct};
        }
        if (t >= t_max)
        {
            return ExtinctionRun{std::move(traj), last, StopReason::HorizonExceeded};
        }
    }
}

State propagate(const EpidemicParams& p, const State& s, double t0, double t1, const IntegratorConfig& cfg)
{
    if (t1 <= t0) return s;
    Dopri5 solver(p, cfg);
    auto z = pack(s);
    solver.advance(z, t0, t1);
    return unpack(z, p.n());
}

State state_at(const Trajectory& traj, double t)
{
    if (traj.times.empty()) throw Error(ErrorCode::InvalidParams, "empty trajectory");
    auto it = std::upper_bound(traj.times.begin(), traj.times.end(), t);
    const auto k = it == traj.times.begin() ? 0 : static_cast<std::size_t>(it - traj.times.begin()) - 1;
    return propagate(traj.params, traj.states[k], traj.times[k], t, traj.config);
}

double refine_crossing(const Trajectory& traj, const CrossingFunction& f, std::pair<std::size_t, std::size_t> bracket)
{
    auto [lo, hi] = bracket;
    if (lo >= hi || hi >= traj.size())
    {
        throw Error(ErrorCode::InvalidParams, "crossing bracket must be an increasing pair of sample indices");
    }
    double t_left = traj.times[lo];
    double t_right = traj.times[hi];
    State s_left = traj.states[lo];
    const double f_left = f(t_left, s_left);
    const double f_right = f(t_right, traj.states[hi]);
    if (f_left == 0.0) return t_left;
    if (f_right == 0.0) return t_right;
    if ((f_left > 0.0) == (f_right > 0.0))
    {
        throw Error(ErrorCode::NoSignChange, "function has the same sign at both bracket ends");
    }
    const bool left_positive = f_left > 0.0;
    while (t_right - t_left > kCrossingTimeTol)
    {
        const double mid = 0.5 * (t_left + t_right);
        State s_mid = propagate(traj.params, s_left, t_left, mid, traj.config);
        const double f_mid = f(mid, s_mid);
        if (f_mid == 0.0) return mid;
        if ((f_mid > 0.0) == left_positive)
        {
            t_left = mid;
            s_left = std::move(s_mid);
        }
        else
        {
            t_right = mid;
        }
    }
    return 0.5 * (t_left + t_right);
}
}  // namespace netsir

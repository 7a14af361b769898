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

#include "netsir/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <thread>

#include <fmt/format.h>

#include "json.hpp"
#include "netsir/spectral.hpp"
#include "netsir/svg.hpp"

namespace netsir
{
namespace
{
using json = nlohmann::json;

json opt(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json shape_json(const CurveShape& s)
{
    json j;
    j["tag"] = shape_tag(s);
    if (const auto* u = std::get_if<shape::Unimodal>(&s)) j["peak_time"] = opt(u->peak_time);
    if (const auto* b = std::get_if<shape::Bimodal>(&s))
    {
        j["min_time"] = opt(b->min_time);
        j["peak_time"] = opt(b->peak_time);
    }
    if (const auto* m = std::get_if<shape::Multimodal>(&s))
    {
        j["peak_times"] = m->peak_times;
        j["min_times"] = m->min_times;
    }
    return j;
}

void write_file(const std::filesystem::path& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::InvalidParams, "cannot write " + path.string());
    out << content;
}

void fail_node(NodeReport& node, const std::string& why)
{
    if (!node.verdict) node.verdict = Verdict{};
    node.verdict->pass = false;
    node.verdict->detail += (node.verdict->detail.empty() ? "" : "; ") + why;
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c == '\n' ? ' ' : c);
    return out + "\"";
}
}  // namespace

bool ScenarioReport::any_fail() const
{
    return std::any_of(nodes.begin(), nodes.end(), [](const NodeReport& n) { return n.verdict && !n.verdict->pass; });
}

ScenarioReport analyze_scenario(const Scenario& sc, bool resolve_undetermined)
{
    const auto& p = sc.params;
    const std::size_t n = p.n();
    const auto has = [&](Analysis a) { return sc.analyses.count(a) > 0; };

    ScenarioReport rep{sc.name, false, {}, integrate(p, sc.initial, sc.horizon, sc.integrator),
                       {}, std::nullopt, std::nullopt, {}, std::nullopt, {}, std::nullopt, std::nullopt, std::nullopt};
    const auto& traj = rep.trajectory;

    std::optional<RankOneInteraction> factors;
    try
    {
        factors = p.rank_one_factors();
        rep.rank_one = true;
    }
    catch (const Error& e)
    {
        if (e.code() != ErrorCode::NotRankOne) throw;
        rep.notices.push_back("NotRankOne: interaction matrix has no rank-1 factorization; rank-1 analyses skipped");
    }

    std::optional<SpecialForm> special;
    if (rep.rank_one && has(Analysis::Multimodality))
    {
        try
        {
            special = special_form(p);
        }
        catch (const Error& e)
        {
            if (e.code() != ErrorCode::NotSpecialForm) throw;
            rep.notices.push_back("NotSpecialForm: interaction is not beta·1·bᵀ; multimodality conditions skipped");
        }
    }

    std::vector<std::optional<double>> tbar(n);
    if (rep.rank_one && has(Analysis::Simulate)) tbar = tbar_times(traj);

    for (std::size_t i = 0; i < n; ++i)
    {
        NodeReport node;
        node.node = i;
        node.extrema = detect_extrema(traj, i);
        node.observed = shape_from_extrema(node.extrema);
        for (const auto& s : traj.states) node.max_value = std::max(node.max_value, s.y[i]);
        for (double t : node.extrema.times_of(ExtremumKind::LocalMax))
        {
            node.stationary_peak_values.push_back(state_at(traj, t).y[i]);
        }
        node.tbar = tbar[i];

        if (rep.rank_one && has(Analysis::Classify))
        {
            node.predicted = classify_node_curve(p, sc.initial, i);
            node.verdict = verify_prediction(*node.predicted, node.observed);
        }
        if (rep.rank_one && std::holds_alternative<shape::Multimodal>(node.observed))
        {
            fail_node(node, "more than two monotonicity changes under a rank-1 interaction");
        }
        if (special)
        {
            node.multimodality = check_multimodality_conditions(p, sc.initial, i);
            if (node.multimodality->guaranteed && !std::holds_alternative<shape::Bimodal>(node.observed))
            {
                fail_node(node, "sufficient conditions hold but observed " + shape_tag(node.observed));
            }
            try
            {
                node.peak_bound = peak_upper_bound(p, sc.initial, i);
            }
            catch (const Error&)
            {
                // bound not applicable to this initial state
            }
        }
        if (resolve_undetermined && node.predicted && std::holds_alternative<shape::Undetermined>(*node.predicted))
        {
            if (node.multimodality && node.multimodality->guaranteed)
            {
                node.resolved = shape::Bimodal{};
                node.resolved_by = "sufficient-condition";
            }
            else
            {
                node.resolved = node.observed;
                node.resolved_by = "simulation";
            }
        }
        rep.nodes.push_back(std::move(node));
    }

    if (rep.rank_one && has(Analysis::Simulate))
    {
        rep.xtilde0 = aggregates(*factors, sc.initial).xtilde;
        rep.aggregate_peak = aggregate_peak_time(traj);
        rep.ybar_maxima = detect_aggregate_extrema(traj).times_of(ExtremumKind::LocalMax);
        const auto h0 = invariants_h(p, traj.states.front()).h;
        rep.invariant_drift.assign(n, 0.0);
        for (const auto& s : traj.states)
        {
            const auto h = invariants_h(p, s).h;
            for (std::size_t i = 0; i < n; ++i)
            {
                rep.invariant_drift[i] = std::max(rep.invariant_drift[i], std::abs(h[i] - h0[i]));
            }
        }
    }
    if (rep.rank_one && has(Analysis::Limit))
    {
        try
        {
            rep.limit = limit_state(p, sc.initial);
        }
        catch (const Error& e)
        {
            if (e.code() != ErrorCode::DomainExcluded) throw;
            rep.notices.push_back(std::string(e.what()));
        }
    }
    if (has(Analysis::Spectral))
    {
        const auto A = p.dense_matrix();
        rep.lambda_initial = dominant_eig(Matrix::diag_times(sc.initial.x, A)).lambda_max;
        const auto& x_final = traj.states.back().x;
        rep.lambda_final = dominant_eig(Matrix::diag_times(x_final, A)).lambda_max;
        rep.final_unstable = instability_check(p, x_final);
    }
    return rep;
}

std::string trajectory_csv(const Trajectory& traj)
{
    const std::size_t n = traj.params.n();
    std::optional<RankOneInteraction> factors;
    try
    {
        factors = traj.params.rank_one_factors();
    }
    catch (const Error&)
    {
    }

    std::string out = "t";
    for (std::size_t i = 1; i <= n; ++i) out += fmt::format(",x_{}", i);
    for (std::size_t i = 1; i <= n; ++i) out += fmt::format(",y_{}", i);
    if (factors) out += ",xbar,xtilde,ybar";
    out += '\n';
    for (std::size_t k = 0; k < traj.size(); ++k)
    {
        const auto& s = traj.states[k];
        out += fmt::format("{}", traj.times[k]);
        for (double v : s.x) out += fmt::format(",{}", v);
        for (double v : s.y) out += fmt::format(",{}", v);
        if (factors)
        {
            const auto agg = aggregates(*factors, s);
            out += fmt::format(",{},{},{}", agg.xbar, agg.xtilde, agg.ybar);
        }
        out += '\n';
    }
    return out;
}

std::string report_json(const ScenarioReport& rep)
{
    json j;
    j["scenario"] = rep.name;
    j["n"] = rep.nodes.size();
    j["rank_one"] = rep.rank_one;
    j["notices"] = rep.notices;
    j["horizon"] = rep.trajectory.times.back();
    j["samples"] = rep.trajectory.size();

    json nodes = json::array();
    for (const auto& nd : rep.nodes)
    {
        json e;
        e["node"] = nd.node + 1;
        e["observed"] = shape_json(nd.observed);
        if (nd.predicted) e["predicted"] = shape_json(*nd.predicted);
        if (nd.resolved)
        {
            e["resolved"] = shape_json(*nd.resolved);
            e["resolved_by"] = nd.resolved_by;
        }
        json events = json::array();
        for (const auto& ev : nd.extrema.events) events.push_back({{"time", ev.time}, {"kind", to_string(ev.kind)}});
        e["extrema"] = std::move(events);
        e["stationary_peak_values"] = nd.stationary_peak_values;
        e["max_value"] = nd.max_value;
        e["tbar"] = opt(nd.tbar);
        if (nd.multimodality)
        {
            const auto& m = *nd.multimodality;
            e["multimodality"] = {{"no_recovered", m.no_recovered},
                                  {"initially_decreasing", m.initially_decreasing},
                                  {"aggregate_supercritical", m.aggregate_supercritical},
                                  {"small_seed", m.small_seed},
                                  {"epsilon_bar", opt(m.epsilon_bar)},
                                  {"guaranteed", m.guaranteed}};
        }
        e["peak_bound"] = opt(nd.peak_bound);
        if (nd.verdict) e["verdict"] = {{"pass", nd.verdict->pass}, {"detail", nd.verdict->detail}};
        nodes.push_back(std::move(e));
    }
    j["nodes"] = std::move(nodes);

    if (rep.rank_one)
    {
        j["aggregate"] = {{"xtilde0", opt(rep.xtilde0)},
                          {"peak_time", opt(rep.aggregate_peak)},
                          {"ybar_maxima", rep.ybar_maxima}};
        j["invariant_drift"] = rep.invariant_drift;
    }
    if (rep.limit)
    {
        j["limit"] = {{"x_star", rep.limit->x_star},
                      {"xtilde_star", rep.limit->xtilde_star},
                      {"phi", rep.limit->phi},
                      {"stability", to_string(rep.limit->tag)},
                      {"final_x", rep.trajectory.states.back().x}};
    }
    if (rep.lambda_initial)
    {
        j["spectral"] = {{"lambda_initial", *rep.lambda_initial},
                         {"lambda_final", opt(rep.lambda_final)},
                         {"final_unstable", rep.final_unstable.value_or(false)}};
    }
    j["verdict"] = rep.any_fail() ? "Fail" : "Pass";
    return j.dump(2) + "\n";
}

std::string report_text(const ScenarioReport& rep)
{
    std::string out = fmt::format("scenario {} (n={}, {})\n", rep.name, rep.nodes.size(),
                                  rep.rank_one ? "rank-1" : "general interaction");
    for (const auto& note : rep.notices) out += "  notice: " + note + "\n";
    for (const auto& nd : rep.nodes)
    {
        out += fmt::format("  node {}: observed {}", nd.node + 1, shape_tag(nd.observed));
        if (nd.predicted) out += fmt::format(", predicted {}", shape_tag(*nd.predicted));
        if (nd.resolved) out += fmt::format(" -> {} ({})", shape_tag(*nd.resolved), nd.resolved_by);
        const auto mins = nd.extrema.times_of(ExtremumKind::LocalMin);
        const auto maxs = nd.extrema.times_of(ExtremumKind::LocalMax);
        if (!mins.empty()) out += fmt::format(", min at {:.6g}", fmt::join(mins, "/"));
        if (!maxs.empty()) out += fmt::format(", max at {:.6g}", fmt::join(maxs, "/"));
        if (nd.verdict) out += nd.verdict->pass ? "  [pass]" : "  [FAIL: " + nd.verdict->detail + "]";
        out += '\n';
    }
    if (rep.aggregate_peak) out += fmt::format("  aggregate peak time t_hat = {:.9g}\n", *rep.aggregate_peak);
    if (rep.limit)
    {
        out += fmt::format("  limit x* = [{:.9g}], x_tilde* = {:.9g}, {}\n", fmt::join(rep.limit->x_star, ", "),
                           rep.limit->xtilde_star, to_string(rep.limit->tag));
    }
    if (!rep.invariant_drift.empty())
    {
        out += fmt::format("  max invariant drift = {:.3g}\n",
                           *std::max_element(rep.invariant_drift.begin(), rep.invariant_drift.end()));
    }
    if (rep.lambda_initial)
    {
        out += fmt::format("  lambda_max([x(0)]A) = {:.9g}, lambda_max([x(T)]A) = {:.9g}\n", *rep.lambda_initial,
                           rep.lambda_final.value_or(0.0));
    }
    out += rep.any_fail() ? "  verdict: FAIL\n" : "  verdict: pass\n";
    return out;
}

ScenarioReport run_scenario(const Scenario& sc, const RunOptions& opts)
{
    auto rep = analyze_scenario(sc, opts.resolve_undetermined);
    std::filesystem::create_directories(opts.out_dir);
    write_file(opts.out_dir / (sc.name + ".csv"), trajectory_csv(rep.trajectory));
    write_file(opts.out_dir / (sc.name + ".report.json"), report_json(rep));
    if (opts.svg)
    {
        const auto& traj = rep.trajectory;
        std::vector<svg::Series> infected;
        for (std::size_t i = 0; i < sc.params.n(); ++i)
        {
            svg::Series s{fmt::format("y_{}", i + 1), {}};
            for (const auto& st : traj.states) s.values.push_back(st.y[i]);
            infected.push_back(std::move(s));
        }
        write_file(opts.out_dir / (sc.name + ".infected.svg"),
                   svg::line_chart(sc.name + ": infected fraction per node", traj.times, infected));
        if (rep.rank_one)
        {
            const auto f = sc.params.rank_one_factors();
            std::vector<svg::Series> agg{{"ybar", {}}};
            for (const auto& st : traj.states) agg[0].values.push_back(aggregates(f, st).ybar);
            write_file(opts.out_dir / (sc.name + ".aggregate.svg"),
                       svg::line_chart(sc.name + ": weighted aggregate infected", traj.times, agg));
        }
    }
    return rep;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, unsigned threads)
{
    std::vector<SweepRow> rows(spec.values.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t k = next++; k < rows.size(); k = next++)
        {
            SweepRow& row = rows[k];
            row.value = spec.values[k];
            try
            {
                const auto sc = instantiate(spec.base, spec.axis, row.value);
                const auto rep = analyze_scenario(sc);
                for (const auto& nd : rep.nodes)
                {
                    row.shapes.push_back(shape_tag(nd.observed));
                    row.peaks.push_back(nd.max_value);
                }
                row.t_hat = rep.aggregate_peak;
                if (rep.limit)
                {
                    row.xtilde_star = rep.limit->xtilde_star;
                    row.phi = rep.limit->phi;
                }
            }
            catch (const std::exception& e)
            {
                row.error = e.what();
            }
        }
    };
    const unsigned count = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(rows.size())));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < count; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    return rows;
}

std::string sweep_csv(const SweepSpec& spec, const std::vector<SweepRow>& rows)
{
    const std::size_t n = spec.base.params.n();
    std::string out = "value";
    for (std::size_t i = 1; i <= n; ++i) out += fmt::format(",shape_{}", i);
    out += ",t_hat";
    for (std::size_t i = 1; i <= n; ++i) out += fmt::format(",peak_{}", i);
    out += ",xtilde_star,phi,error\n";
    auto cell = [](const std::optional<double>& v) { return v ? fmt::format("{}", *v) : std::string(); };
    for (const auto& r : rows)
    {
        out += fmt::format("{}", r.value);
        for (std::size_t i = 0; i < n; ++i) out += "," + (i < r.shapes.size() ? csv_field(r.shapes[i]) : "");
        out += "," + cell(r.t_hat);
        for (std::size_t i = 0; i < n; ++i) out += "," + (i < r.peaks.size() ? fmt::format("{}", r.peaks[i]) : "");
        out += "," + cell(r.xtilde_star) + "," + cell(r.phi) + "," + csv_field(r.error) + "\n";
    }
    return out;
}

unsigned sweep_threads_from_env()
{
    if (const char* env = std::getenv("NETSIR_THREADS"))
    {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}
}  // namespace netsir

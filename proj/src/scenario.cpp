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

#include "netsir/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <regex>
#include <sstream>

#include "json.hpp"

namespace netsir
{
namespace
{
using json = nlohmann::json;

constexpr std::pair<Analysis, const char*> kAnalysisNames[] = {
    {Analysis::Simulate, "simulate"},   {Analysis::Classify, "classify"}, {Analysis::Limit, "limit"},
    {Analysis::Multimodality, "multimodality"}, {Analysis::Spectral, "spectral"},
};

std::set<Analysis> all_analyses()
{
    std::set<Analysis> out;
    for (const auto& [a, _] : kAnalysisNames) out.insert(a);
    return out;
}

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

Vector get_vector(const json& j, const char* key)
{
    if (!j.contains(key) || !j.at(key).is_array()) parse_fail(std::string("missing array '") + key + "'");
    Vector out;
    for (const auto& e : j.at(key))
    {
        if (!e.is_number()) parse_fail(std::string("non-numeric entry in '") + key + "'");
        out.push_back(e.get<double>());
    }
    return out;
}

double get_number(const json& j, const char* key)
{
    if (!j.contains(key) || !j.at(key).is_number()) parse_fail(std::string("missing number '") + key + "'");
    return j.at(key).get<double>();
}

Scenario from_json(const json& j)
{
    if (!j.is_object()) parse_fail("scenario must be a JSON object");
    const double gamma = get_number(j, "gamma");
    const bool has_dense = j.contains("A");
    const bool has_factors = j.contains("a") || j.contains("b");
    if (has_dense == has_factors) parse_fail("give either 'A' or both 'a' and 'b'");

    auto params = [&]() {
        if (!has_dense) return EpidemicParams::rank_one(get_vector(j, "a"), get_vector(j, "b"), gamma);
        const auto& rows = j.at("A");
        if (!rows.is_array()) parse_fail("'A' must be an array of rows");
        const std::size_t n = rows.size();
        std::vector<double> flat;
        for (const auto& row : rows)
        {
            if (!row.is_array() || row.size() != n) parse_fail("'A' must be square");
            for (const auto& e : row)
            {
                if (!e.is_number()) parse_fail("non-numeric entry in 'A'");
                flat.push_back(e.get<double>());
            }
        }
        return EpidemicParams::dense(Matrix(n, std::move(flat)), gamma);
    }();

    IntegratorConfig cfg;
    if (j.contains("integrator"))
    {
        const auto& c = j.at("integrator");
        if (!c.is_object()) parse_fail("'integrator' must be an object");
        if (c.contains("abs_tol")) cfg.abs_tol = get_number(c, "abs_tol");
        if (c.contains("rel_tol")) cfg.rel_tol = get_number(c, "rel_tol");
        if (c.contains("max_step")) cfg.max_step = get_number(c, "max_step");
        if (c.contains("sample_dt")) cfg.sample_dt = get_number(c, "sample_dt");
        if (c.contains("t_max")) cfg.t_max = get_number(c, "t_max");
        if (c.contains("y_extinction_tol")) cfg.y_extinction_tol = get_number(c, "y_extinction_tol");
    }
    cfg.validate();

    std::set<Analysis> analyses;
    if (j.contains("analyses"))
    {
        for (const auto& e : j.at("analyses"))
        {
            const auto name = e.get<std::string>();
            auto it = std::find_if(std::begin(kAnalysisNames), std::end(kAnalysisNames),
                                   [&](const auto& kv) { return name == kv.second; });
            if (it == std::end(kAnalysisNames)) parse_fail("unknown analysis '" + name + "'");
            analyses.insert(it->first);
        }
    }
    else
    {
        analyses = all_analyses();
    }

    auto initial = validate_state(params, get_vector(j, "x0"), get_vector(j, "y0"));
    const double horizon = get_number(j, "horizon");
    if (!(horizon > 0.0)) parse_fail("'horizon' must be positive");
    return Scenario{j.value("name", std::string("unnamed")), std::move(params), std::move(initial), horizon, cfg,
                    std::move(analyses)};
}

json to_json(const Scenario& sc)
{
    json j;
    j["name"] = sc.name;
    j["gamma"] = sc.params.gamma();
    if (const auto* r = std::get_if<RankOneInteraction>(&sc.params.interaction()))
    {
        j["a"] = r->a;
        j["b"] = r->b;
    }
    else
    {
        const auto& A = std::get<DenseInteraction>(sc.params.interaction()).A;
        json rows = json::array();
        for (std::size_t i = 0; i < A.size(); ++i)
        {
            json row = json::array();
            for (std::size_t k = 0; k < A.size(); ++k) row.push_back(A(i, k));
            rows.push_back(std::move(row));
        }
        j["A"] = std::move(rows);
    }
    j["x0"] = sc.initial.x;
    j["y0"] = sc.initial.y;
    j["horizon"] = sc.horizon;
    json c;
    c["abs_tol"] = sc.integrator.abs_tol;
    c["rel_tol"] = sc.integrator.rel_tol;
    c["max_step"] = sc.integrator.max_step;
    c["sample_dt"] = sc.integrator.sample_dt;
    if (sc.integrator.t_max) c["t_max"] = *sc.integrator.t_max;
    c["y_extinction_tol"] = sc.integrator.y_extinction_tol;
    j["integrator"] = std::move(c);
    json an = json::array();
    for (const auto& [a, name] : kAnalysisNames)
    {
        if (sc.analyses.count(a)) an.push_back(name);
    }
    j["analyses"] = std::move(an);
    return j;
}

json parse_text(std::string_view text)
{
    try
    {
        return json::parse(text);
    }
    catch (const json::parse_error& e)
    {
        parse_fail(e.what());
    }
}

std::string read_file(const std::filesystem::path& file)
{
    std::ifstream in(file);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open " + file.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Scenario make_rank_one(std::string name, Vector a, Vector b, double gamma, Vector x0, Vector y0, double horizon)
{
    auto p = EpidemicParams::rank_one(std::move(a), std::move(b), gamma);
    auto s = validate_state(p, std::move(x0), std::move(y0));
    return Scenario{std::move(name), std::move(p), std::move(s), horizon, IntegratorConfig{}, all_analyses()};
}

Vector complement(const Vector& x)
{
    Vector y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = 1.0 - x[i];
    return y;
}
}  // namespace

Scenario parse_scenario(std::string_view json_text)
{
    try
    {
        return from_json(parse_text(json_text));
    }
    catch (const json::exception& e)
    {
        parse_fail(e.what());
    }
}

std::string serialize_scenario(const Scenario& sc) { return to_json(sc).dump(2) + "\n"; }

Scenario load_scenario(const std::filesystem::path& file) { return parse_scenario(read_file(file)); }

std::vector<std::string> builtin_names() { return {"example1", "fig2", "fig2-transposed", "fig5"}; }

std::optional<Scenario> builtin_scenario(std::string_view name)
{
    const Vector fig2_a{0.1, 0.25, 0.6, 1.0, 0.2};
    const Vector fig2_b{0.45, 0.4, 0.6, 0.65, 0.01};
    const Vector fig2_x{0.85, 0.999, 0.8, 1.0, 0.75};
    if (name == "example1")
    {
        return make_rank_one("example1", {1.0, 1.0}, {1.0, 1.0}, 1.0, {0.85, 1.0}, {0.15, 0.0}, 40.0);
    }
    if (name == "fig2")
    {
        return make_rank_one("fig2", fig2_a, fig2_b, 0.6, fig2_x, complement(fig2_x), 60.0);
    }
    if (name == "fig2-transposed")
    {
        // same vectors with the roles of a and b exchanged (A = b aᵀ)
        return make_rank_one("fig2-transposed", fig2_b, fig2_a, 0.6, fig2_x, complement(fig2_x), 60.0);
    }
    if (name == "fig5")
    {
        Matrix A(4, {0.05, 0.07, 0.05, 0.05,        //
                     0.0001, 0.8, 0.0001, 0.0001,   //
                     0.0001, 0.0001, 0.1, 0.0001,   //
                     0.01, 0.01, 0.01, 0.9});
        auto p = EpidemicParams::dense(std::move(A), 0.5);
        auto s = validate_state(p, {1.0, 1.0, 0.9, 1.0}, {0.0, 0.0, 0.1, 0.0});
        return Scenario{"fig5", std::move(p), std::move(s), 100.0, IntegratorConfig{}, all_analyses()};
    }
    return std::nullopt;
}

namespace
{
enum class AxisKind
{
    Gamma,
    A,
    B,
    Dense,
    X,
    Y,
    Eps,
    Horizon,
};

struct AxisPath
{
    AxisKind kind;
    std::size_t i = 0;
    std::size_t j = 0;
};

AxisPath parse_axis(const Scenario& base, const std::string& axis)
{
    static const std::regex indexed(R"((params\.a|params\.b|initial\.x|initial\.y|initial\.eps)\[(\d+)\])");
    static const std::regex matrix(R"(params\.A\[(\d+)\]\[(\d+)\])");
    const std::size_t n = base.params.n();
    std::smatch m;
    if (axis == "params.gamma") return {AxisKind::Gamma};
    if (axis == "horizon") return {AxisKind::Horizon};
    if (std::regex_match(axis, m, matrix))
    {
        if (base.params.is_rank_one()) parse_fail("axis '" + axis + "' needs a dense scenario");
        AxisPath path{AxisKind::Dense, std::stoul(m[1]), std::stoul(m[2])};
        if (path.i >= n || path.j >= n) parse_fail("axis index out of range in '" + axis + "'");
        return path;
    }
    if (std::regex_match(axis, m, indexed))
    {
        const std::string head = m[1];
        AxisPath path{AxisKind::X, std::stoul(m[2])};
        if (path.i >= n) parse_fail("axis index out of range in '" + axis + "'");
        if (head == "params.a") path.kind = AxisKind::A;
        if (head == "params.b") path.kind = AxisKind::B;
        if (head == "initial.y") path.kind = AxisKind::Y;
        if (head == "initial.eps") path.kind = AxisKind::Eps;
        if ((path.kind == AxisKind::A || path.kind == AxisKind::B) && !base.params.is_rank_one())
        {
            parse_fail("axis '" + axis + "' needs a rank-1 scenario");
        }
        return path;
    }
    parse_fail("unknown sweep axis '" + axis + "'");
}
}  // namespace

Scenario instantiate(const Scenario& base, const std::string& axis, double value)
{
    const auto path = parse_axis(base, axis);
    const auto& p = base.params;
    Vector x = base.initial.x;
    Vector y = base.initial.y;
    double horizon = base.horizon;
    std::optional<EpidemicParams> params;
    switch (path.kind)
    {
        case AxisKind::Gamma:
            params = p.is_rank_one()
                         ? EpidemicParams::rank_one(p.rank_one_factors().a, p.rank_one_factors().b, value)
                         : EpidemicParams::dense(p.dense_matrix(), value);
            break;
        case AxisKind::A:
        case AxisKind::B:
        {
            auto f = p.rank_one_factors();
            (path.kind == AxisKind::A ? f.a : f.b)[path.i] = value;
            params = EpidemicParams::rank_one(std::move(f.a), std::move(f.b), p.gamma());
            break;
        }
        case AxisKind::Dense:
        {
            auto A = p.dense_matrix();
            A(path.i, path.j) = value;
            params = EpidemicParams::dense(std::move(A), p.gamma());
            break;
        }
        case AxisKind::X: x[path.i] = value; break;
        case AxisKind::Y: y[path.i] = value; break;
        case AxisKind::Eps:
            y[path.i] = value;
            x[path.i] = 1.0 - value;
            break;
        case AxisKind::Horizon:
            if (!(value > 0.0)) throw Error(ErrorCode::InvalidParams, "horizon must be positive");
            horizon = value;
            break;
    }
    Scenario sc = base;
    if (params) sc.params = *std::move(params);
    sc.initial = validate_state(sc.params, std::move(x), std::move(y));
    sc.horizon = horizon;
    return sc;
}

SweepSpec parse_sweep(std::string_view json_text)
{
    try
    {
        const auto j = parse_text(json_text);
        if (!j.is_object() || !j.contains("base") || !j.contains("axis"))
        {
            parse_fail("sweep needs 'base' and 'axis'");
        }
        const auto& base_j = j.at("base");
        std::optional<Scenario> base;
        if (base_j.is_string())
        {
            base = builtin_scenario(base_j.get<std::string>());
            if (!base) parse_fail("unknown built-in scenario '" + base_j.get<std::string>() + "'");
        }
        else
        {
            base = from_json(base_j);
        }
        SweepSpec spec{*std::move(base), j.at("axis").get<std::string>(), {}};
        parse_axis(spec.base, spec.axis);
        if (j.contains("values")) spec.values = get_vector(j, "values");
        return spec;
    }
    catch (const json::exception& e)
    {
        parse_fail(e.what());
    }
}

SweepSpec load_sweep(const std::filesystem::path& file) { return parse_sweep(read_file(file)); }
}  // namespace netsir

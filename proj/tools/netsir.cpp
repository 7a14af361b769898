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

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "netsir/runner.hpp"

namespace
{
struct Overrides
{
    std::optional<double> tol_abs;
    std::optional<double> tol_rel;
    std::optional<double> horizon;
};

void apply(const Overrides& o, netsir::Scenario& sc)
{
    if (o.tol_abs) sc.integrator.abs_tol = *o.tol_abs;
    if (o.tol_rel) sc.integrator.rel_tol = *o.tol_rel;
    if (o.horizon) sc.horizon = *o.horizon;
    sc.integrator.validate();
    if (!(sc.horizon > 0.0)) throw netsir::Error(netsir::ErrorCode::InvalidParams, "horizon must be positive");
}

int finish(const netsir::ScenarioReport& rep)
{
    std::cout << netsir::report_text(rep);
    return rep.any_fail() ? 2 : 0;
}
}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Network SIR simulator and infection-curve shape analysis"};
    app.require_subcommand(1);
    app.fallthrough();

    netsir::RunOptions run;
    Overrides ov;
    std::string out_dir = ".";
    app.add_option("--out-dir", out_dir, "Directory for CSV, report and SVG output");
    app.add_flag("--svg", run.svg, "Also write SVG charts");
    app.add_flag("--resolve-undetermined", run.resolve_undetermined,
                 "Collapse Undetermined predictions via the sufficient condition or simulation");
    app.add_option("--tol-abs", ov.tol_abs, "Absolute integrator tolerance");
    app.add_option("--tol-rel", ov.tol_rel, "Relative integrator tolerance");
    app.add_option("--horizon", ov.horizon, "Simulation horizon");

    std::string file;
    auto* simulate = app.add_subcommand("simulate", "Run every analysis listed in a scenario file");
    simulate->add_option("file", file, "Scenario JSON")->required();
    auto* classify = app.add_subcommand("classify", "Predicted vs observed infection-curve shapes");
    classify->add_option("file", file, "Scenario JSON")->required();
    auto* limit = app.add_subcommand("limit", "Asymptotic susceptible state and its stability");
    limit->add_option("file", file, "Scenario JSON")->required();
    std::string name;
    auto* reproduce = app.add_subcommand("reproduce", "Run a built-in scenario");
    reproduce->add_option("name", name, "Built-in scenario")
        ->required()
        ->check(CLI::IsMember(netsir::builtin_names()));
    auto* sweep = app.add_subcommand("sweep", "One analysis per value of a parameter axis");
    sweep->add_option("file", file, "Sweep JSON")->required();

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        return app.exit(e) == 0 ? 0 : 1;
    }
    run.out_dir = out_dir;

    try
    {
        using netsir::Analysis;
        if (*sweep)
        {
            auto spec = netsir::load_sweep(file);
            apply(ov, spec.base);
            const auto rows = netsir::run_sweep(spec, netsir::sweep_threads_from_env());
            std::filesystem::create_directories(run.out_dir);
            const auto path = run.out_dir / (spec.base.name + ".sweep.csv");
            std::ofstream(path, std::ios::binary) << netsir::sweep_csv(spec, rows);
            std::cout << "wrote " << path.string() << " (" << rows.size() << " rows)\n";
            return 0;
        }
        auto sc = *reproduce ? *netsir::builtin_scenario(name) : netsir::load_scenario(file);
        apply(ov, sc);
        if (*classify) sc.analyses = {Analysis::Simulate, Analysis::Classify, Analysis::Multimodality};
        if (*limit) sc.analyses = {Analysis::Simulate, Analysis::Limit, Analysis::Spectral};
        const auto rep = netsir::run_scenario(sc, run);
        if (*reproduce)
        {
            std::ofstream(run.out_dir / (sc.name + ".scenario.json"), std::ios::binary)
                << netsir::serialize_scenario(sc);
        }
        return finish(rep);
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

/*
 * Copyright 2026 The tasdn Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Command-line front end: run, sweep and validate scenario files.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "tasdn/metrics/kpi.hpp"
#include "tasdn/scenario/config.hpp"
#include "tasdn/scenario/simulation.hpp"
#include "tasdn/scenario/sweep.hpp"
#include "tasdn/sim/errors.hpp"
#include "tasdn/topology/topology.hpp"

namespace fs = std::filesystem;
using namespace tasdn;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitRuntime = 3;

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    return out;
}

void prepare_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
}

int cmd_run(const std::string& file, std::optional<std::uint64_t> seed, const std::string& out_dir, bool trace) {
    auto config = scenario::load_scenario(file);
    if (seed) {
        config.seed = *seed;
        config.topology.seed = *seed;
    }
    scenario::Simulation sim(config);
    sim.set_tracing(trace || !out_dir.empty());
    const auto result = sim.run();

    std::cout << "scenario " << config.name << " seed " << config.seed << ", " << result.events_processed
              << " events\n";
    metrics::print_summary(result.report, std::cout);

    if (!out_dir.empty()) {
        const fs::path dir(out_dir);
        prepare_dir(dir);
        metrics::emit_csv(std::vector{result.report}, dir / "kpi.csv");
        auto decisions = open_out(dir / "decisions.csv");
        controller::write_decision_log(result.decisions, decisions);
        auto topo = open_out(dir / "topology.txt");
        topology::export_text(sim.network(), topo);
        if (trace) {
            auto t = open_out(dir / "trace.csv");
            result.trace.write(t);
        }
        std::cout << "wrote " << dir.string() << '\n';
    } else if (trace) {
        result.trace.write(std::cout);
    }
    return kExitOk;
}

int cmd_sweep(const std::string& file, const std::string& sizes_text, const std::string& out_dir) {
    const auto config = scenario::load_scenario(file);
    const auto sizes = scenario::parse_sizes(sizes_text);
    const auto result = scenario::sweep(config, sizes);
    if (out_dir.empty()) {
        std::cout << result.csv;
        return kExitOk;
    }
    const fs::path dir(out_dir);
    prepare_dir(dir);
    auto out = open_out(dir / "kpi.csv");
    out << result.csv;
    for (const auto& r : result.reports) metrics::print_summary(r, std::cout);
    std::cout << "wrote " << (dir / "kpi.csv").string() << '\n';
    return kExitOk;
}

int cmd_validate(const std::string& file, bool topology) {
    const auto config = scenario::load_scenario(file);
    const auto net = topology::build(config.topology);
    const auto violations = topology::validate(net);
    for (const auto& v : violations) {
        std::cerr << "topology: " << topology::to_string(v.kind) << ' ' << v.element << '\n';
    }
    if (!violations.empty()) return kExitValidation;
    std::cout << "ok: " << config.name << ", " << config.topology.n_hosts << " hosts, "
              << scenario::expanded_traffic(config).size() << " flows, " << config.directives.size()
              << " directives\n";
    if (topology) topology::export_text(net, std::cout);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tasdn: trust-aware dual-channel SDN simulator"};
    app.require_subcommand(1);

    std::string file;
    std::optional<std::uint64_t> seed;
    std::string out_dir;
    bool trace = false;
    auto* run = app.add_subcommand("run", "Run one scenario");
    run->add_option("scenario", file, "Scenario file")->required();
    run->add_option("--seed", seed, "Override the scenario seed");
    run->add_option("--out", out_dir, "Write kpi.csv, decisions.csv and topology.txt here");
    run->add_flag("--trace", trace, "Dump the event trace (trace.csv under --out, else stdout)");

    std::string sizes;
    std::string sweep_out;
    auto* sweep = app.add_subcommand("sweep", "Run the scenario at several host counts");
    sweep->add_option("scenario", file, "Scenario file")->required();
    sweep->add_option("--sizes", sizes, "Comma-separated host counts, e.g. 15,30,50")->required();
    sweep->add_option("--out", sweep_out, "Write kpi.csv here instead of stdout");

    bool show_topology = false;
    auto* validate = app.add_subcommand("validate", "Check a scenario file");
    validate->add_option("scenario", file, "Scenario file")->required();
    validate->add_flag("--topology", show_topology, "Print the topology export");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }

    try {
        if (*run) return cmd_run(file, seed, out_dir, trace);
        if (*sweep) return cmd_sweep(file, sizes, sweep_out);
        return cmd_validate(file, show_topology);
    } catch (const ParseError& e) {
        std::cerr << file << ':' << e.line() << ": " << e.what() << '\n';
        return kExitValidation;
    } catch (const ValidationError& e) {
        std::cerr << file << ": invalid scenario: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
}

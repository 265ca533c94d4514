// conelab: scenario files in, certificates and reports out.
//
//   conelab run <scenario.json> [--seed N] [--parallel] [--json-only] [--max-dim N]
//   conelab validate <scenario.json>
//   conelab gallery <name>
//   conelab list-galleries
//
// Exit codes: 0 all tasks pass, 1 certification failure, 2 input error,
// 3 inconclusive.

#include "conelab/scenario.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

namespace {

constexpr int exit_input_error = 2;

conelab::Json read_document(const std::string& path) {
    std::ostringstream buf;
    if (path == "-") {
        buf << std::cin.rdbuf();
    } else {
        std::ifstream in(path);
        if (!in) throw conelab::InputError("cannot open '" + path + "'");
        buf << in.rdbuf();
    }
    try {
        return conelab::Json::parse(buf.str());
    } catch (const conelab::Json::parse_error& e) {
        throw conelab::InputError(std::string("not valid JSON: ") + e.what());
    }
}

std::vector<conelab::TaskReport> run_all(const conelab::Scenario& s,
                                         const conelab::RunOptions& opts, bool parallel) {
    if (!parallel) return run_scenario(s, opts);
    std::vector<std::future<conelab::TaskReport>> futures;
    for (std::size_t i = 0; i < s.tasks.size(); ++i) {
        futures.push_back(std::async(std::launch::async,
                                     [&s, i, opts] { return run_task(s, i, opts); }));
    }
    std::vector<conelab::TaskReport> reports;
    for (auto& f : futures) reports.push_back(f.get());  // report order = task order
    return reports;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact certificates for tangent cones, transversality, and sum rules"};
    app.require_subcommand(1);

    std::string run_path, validate_path, gallery_name;
    conelab::RunOptions opts;
    bool parallel = false, json_only = false;

    CLI::App* run_cmd = app.add_subcommand("run", "execute a scenario file ('-' for stdin)");
    run_cmd->add_option("file", run_path, "scenario JSON document")->required();
    run_cmd->add_option("--seed", opts.seed, "seed for sampled oracle rows");
    run_cmd->add_option("--max-dim", opts.max_dim, "dimension cap on inputs");
    run_cmd->add_flag("--parallel", parallel, "run tasks concurrently (order preserved)");
    run_cmd->add_flag("--json-only", json_only, "suppress the plain-text rendering");

    CLI::App* validate_cmd =
        app.add_subcommand("validate", "schema-check a scenario file without running it");
    validate_cmd->add_option("file", validate_path, "scenario JSON document")->required();

    CLI::App* gallery_cmd =
        app.add_subcommand("gallery", "emit a built-in scenario as JSON");
    gallery_cmd->add_option("name", gallery_name, "gallery name")->required();

    CLI::App* list_cmd = app.add_subcommand("list-galleries", "list built-in scenarios");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : exit_input_error;
    }

    try {
        if (list_cmd->parsed()) {
            for (const std::string& n : conelab::gallery_names()) std::cout << n << "\n";
            return 0;
        }
        if (gallery_cmd->parsed()) {
            std::cout << scenario_to_json(conelab::gallery(gallery_name)).dump(2) << "\n";
            return 0;
        }
        if (validate_cmd->parsed()) {
            conelab::scenario_from_json(read_document(validate_path));
            std::cout << "valid\n";
            return 0;
        }
        if (run_cmd->parsed()) {
            conelab::Scenario s = conelab::scenario_from_json(read_document(run_path));
            std::vector<conelab::TaskReport> reports = run_all(s, opts, parallel);
            if (!json_only) std::cout << report_to_text(reports);
            std::cout << report_to_json(reports).dump(2) << "\n";
            return conelab::exit_code(reports);
        }
    } catch (const conelab::InputError& e) {
        // SchemaError::what() already carries the field path
        std::cerr << "input error: " << e.what() << "\n";
        return exit_input_error;
    }
    return exit_input_error;
}

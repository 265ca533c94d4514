#pragma once

#include "conelab/serialize.hpp"
#include "conelab/subdiff.hpp"
#include "conelab/zoo.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace conelab {

/// One scenario step: an operation name plus its JSON arguments.
/// Set- and function-valued arguments are names resolved against the
/// scenario's tables.
struct Task {
    std::string op;
    Json args;
};

/// A runnable document: named inputs plus an ordered task list.
/// Parsing validates the version, the schema, and that every set or
/// function reference resolves.
struct Scenario {
    int version = 1;
    std::map<std::string, UnionSet> sets;
    std::map<std::string, PWAFunction> functions;
    std::vector<Task> tasks;
};

Json scenario_to_json(const Scenario& s);
Scenario scenario_from_json(const Json& j);

/// Demo marks demonstration tasks whose evidence is validated but which
/// certify nothing (e.g. a non-closedness sequence); it counts as a
/// success for the exit code.
enum class TaskOutcome { Pass, Fail, Inconclusive, Demo };

std::string outcome_name(TaskOutcome o);

/// Verdict plus certificates for one task.  `text` is the one-line
/// human rendering and always starts with the same verdict the JSON
/// carries; `exact` records whether any sampled (as opposed to
/// LP-certified) evidence contributed to the verdict.
struct TaskReport {
    std::string op;
    Json echo;
    TaskOutcome outcome = TaskOutcome::Fail;
    bool exact = true;
    Json details;
    std::string text;
    double seconds = 0;
};

struct RunOptions {
    std::uint64_t seed = 0;
    std::size_t max_dim = 6;
};

/// Runs a single task (tasks are independent, so callers may fan out);
/// run_scenario executes them in order.  Both throw InputError /
/// SchemaError on malformed or over-dimensioned inputs.
TaskReport run_task(const Scenario& s, std::size_t index, const RunOptions& opts);
std::vector<TaskReport> run_scenario(const Scenario& s, const RunOptions& opts = {});

Json report_to_json(const std::vector<TaskReport>& reports);
std::string report_to_text(const std::vector<TaskReport>& reports);

/// 0 when every task passed (Demo included), 1 on any failure,
/// 3 when the worst outcome is Inconclusive.
int exit_code(const std::vector<TaskReport>& reports);

/// Built-in scenarios.
std::vector<std::string> gallery_names();
Scenario gallery(const std::string& name);

/// The named UnionSets appearing across the galleries, deduplicated,
/// in a fixed order (the exact-vs-oracle corpus).
std::vector<std::pair<std::string, UnionSet>> gallery_sets();

} // namespace conelab

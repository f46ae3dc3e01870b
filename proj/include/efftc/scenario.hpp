#pragma once

#include "efftc/bounds.hpp"

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace efftc {

/// Malformed scenario document or a reference that cannot be resolved.
class ScenarioError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ScenarioOverrides {
    std::optional<int> grid;
    std::optional<double> epsilon;
    std::optional<double> delta;
    std::optional<double> modulus;
    std::optional<std::size_t> samples;
};

struct TableRow {
    std::string action_class;
    int n = 0;
    std::string invariant;
    int lower = 0;
    int upper = 0;
    int paper = 0;

    bool match() const { return lower <= paper && paper <= upper; }
};

struct ScenarioResult {
    std::string id;
    std::vector<BoundReport> reports;
    /// One line per pipeline step.
    std::vector<std::string> log;
    /// Contradictions, chain violations and expectation misses.
    std::vector<std::string> failures;
    std::vector<TableRow> table;

    int exit_code() const { return failures.empty() ? 0 : 1; }
    const BoundReport* find(const std::string& invariant) const;
    nlohmann::ordered_json to_json() const;
    std::string csv() const;
};

/// Parses a scenario document; throws ScenarioError on malformed JSON.
nlohmann::json parse_scenario(const std::string& text);

/// Runs the pipeline of a parsed scenario. Relative file references resolve
/// against base_dir. Throws ScenarioError for unknown operations, planners,
/// spaces or missing files.
ScenarioResult run_scenario_json(const nlohmann::json& doc, const ScenarioOverrides& overrides = {},
                                 const std::string& base_dir = ".");

/// Loads a builtin by name or a scenario file by path and runs it.
ScenarioResult run_scenario(const std::string& name_or_path, const ScenarioOverrides& overrides = {});

std::vector<std::string> builtin_names();
/// Document text of a builtin scenario; throws ScenarioError if unknown.
std::string builtin_scenario(const std::string& name);

/// Rows every reproduction table must contain, as (class, n).
std::vector<std::pair<std::string, int>> required_table_rows();

/// Collects the table rows of the results; lists a failure for each required
/// row no scenario provides.
std::vector<TableRow> collect_table(const std::vector<ScenarioResult>& results, std::vector<std::string>& missing);

std::string format_table(const std::vector<TableRow>& rows);
std::string table_csv(const std::vector<TableRow>& rows);

} // namespace efftc

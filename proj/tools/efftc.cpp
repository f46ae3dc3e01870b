#include "efftc/scenario.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    out << text;
}

void print_summary(const efftc::ScenarioResult& r)
{
    std::cerr << "scenario " << r.id << "\n";
    for (const auto& line : r.log)
        std::cerr << "  " << line << "\n";
    for (const auto& b : r.reports)
        std::cerr << "  " << b.invariant << " in [" << b.lower.value << ", " << b.upper.value << "]"
                  << (b.status == efftc::Status::consistent ? "" : " CONTRADICTION") << "\n";
    for (const auto& f : r.failures)
        std::cerr << "  error: " << f << "\n";
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Bounds for effective topological complexity of symmetric spaces"};
    app.require_subcommand(1);

    efftc::ScenarioOverrides overrides;
    std::string scenario, out_path, csv_path;
    auto* run = app.add_subcommand("run", "Run a scenario file or builtin");
    run->add_option("scenario", scenario, "Scenario JSON file or builtin name")->required();
    run->add_option("--grid", overrides.grid, "Grid resolution R");
    run->add_option("--epsilon", overrides.epsilon, "Cover margin");
    run->add_option("--delta", overrides.delta, "Joint tolerance");
    run->add_option("--modulus", overrides.modulus, "Continuity modulus L");
    run->add_option("--samples", overrides.samples, "Samples per path leg");
    run->add_option("--out", out_path, "Write the JSON report here instead of stdout");
    run->add_option("--csv", csv_path, "Also write the reports as CSV");

    std::string dir;
    auto* table = app.add_subcommand("table", "Run every scenario in a directory and print the reproduction table");
    table->add_option("dir", dir, "Directory of scenario JSON files")->required();
    table->add_option("--grid", overrides.grid, "Grid resolution R");
    table->add_option("--csv", csv_path, "Also write the table as CSV");

    app.add_subcommand("list-builtins", "List builtin scenario names");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            const auto result = efftc::run_scenario(scenario, overrides);
            print_summary(result);
            const std::string report = result.to_json().dump(2) + "\n";
            if (out_path.empty())
                std::cout << report;
            else
                write_file(out_path, report);
            if (!csv_path.empty())
                write_file(csv_path, result.csv());
            return result.exit_code();
        }
        if (*table) {
            std::vector<std::string> files;
            for (const auto& entry : std::filesystem::directory_iterator(dir))
                if (entry.path().extension() == ".json")
                    files.push_back(entry.path().string());
            std::sort(files.begin(), files.end());
            std::vector<efftc::ScenarioResult> results;
            int code = 0;
            for (const auto& f : files) {
                results.push_back(efftc::run_scenario(f, overrides));
                print_summary(results.back());
                code = std::max(code, results.back().exit_code());
            }
            std::vector<std::string> missing;
            const auto rows = efftc::collect_table(results, missing);
            std::cout << efftc::format_table(rows);
            if (!csv_path.empty())
                write_file(csv_path, efftc::table_csv(rows));
            for (const auto& m : missing)
                std::cerr << "error: " << m << "\n";
            return missing.empty() ? code : 1;
        }
        for (const auto& name : efftc::builtin_names())
            std::cout << name << "\n";
        return 0;
    } catch (const efftc::ScenarioError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dpamimo/config_io.hpp"
#include "dpamimo/errors.hpp"
#include "dpamimo/report_io.hpp"
#include "dpamimo/scenario.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalidConfig = 1;
constexpr int kExitRuntime = 2;

void emit(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

std::vector<dpamimo::GripScenario> parse_grips(const std::string& list) {
    std::vector<dpamimo::GripScenario> grips;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        auto g = dpamimo::parse_grip(item);
        if (!g) throw dpamimo::ConfigError("unknown grip '" + item + "'", "--grips");
        grips.push_back(*g);
    }
    if (grips.empty()) grips.assign(std::begin(dpamimo::kAllGrips), std::end(dpamimo::kAllGrips));
    return grips;
}

int cmd_validate(const std::string& path) {
    const auto config = dpamimo::load_scenario(path);
    const auto report = dpamimo::validate_spacing(config.layout, config.catalog);
    std::printf("config: ok (%zu modules)\n", config.layout.size());
    std::printf("spacing: %zu pairs checked, %zu violations\n", report.pairs_checked,
                report.violations.size());
    for (const auto& v : report.violations) {
        std::printf("  %s-%s band=%s required>%s mm actual=%s mm\n", v.a.c_str(), v.b.c_str(),
                    v.band_id.c_str(), dpamimo::format_number(v.required_mm).c_str(),
                    dpamimo::format_number(v.actual_mm).c_str());
    }
    return report.ok() ? kExitOk : kExitInvalidConfig;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"DPA-MIMO UE scenario simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::string csv_path;
    bool oracle = false;
    bool strict = false;
    unsigned jobs = 1;
    std::string grips = "free_space,one_hand_center,two_hand_landscape,one_hand_portrait_bottom";

    auto* validate = app.add_subcommand("validate", "Check a config and print its spacing report");
    validate->add_option("config", config_path, "Scenario config")->required();

    auto* run = app.add_subcommand("run", "Run one scenario and emit its metrics report");
    run->add_option("config", config_path, "Scenario config")->required();
    run->add_flag("--oracle", oracle, "Use the exhaustive allocator (n_bf <= 6)");
    run->add_option("--out", out_path, "Report path (default stdout)");
    run->add_option("--csv", csv_path, "Per-module CSV path");
    run->add_flag("--strict", strict, "Exit 2 when the scenario is infeasible");

    auto* sweep = app.add_subcommand("sweep", "Run every point of a parameter grid");
    sweep->add_option("grid", config_path, "Grid config")->required();
    sweep->add_option("--jobs", jobs, "Worker threads (0 = hardware concurrency)");
    sweep->add_flag("--oracle", oracle, "Use the exhaustive allocator (n_bf <= 6)");
    sweep->add_option("--out", out_path, "Report path (default stdout)");
    sweep->add_flag("--strict", strict, "Exit 2 when any point fails or is infeasible");

    auto* compare = app.add_subcommand("compare", "Compare the preset layouts across grips");
    compare->add_option("config", config_path, "Base scenario config")->required();
    compare->add_option("--grips", grips, "Comma-separated grip names");
    compare->add_flag("--oracle", oracle, "Use the exhaustive allocator (n_bf <= 6)");
    compare->add_option("--out", out_path, "CSV path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        const dpamimo::RunOptions options{oracle};
        if (*validate) return cmd_validate(config_path);

        if (*run) {
            const auto config = dpamimo::load_scenario(config_path);
            const auto report = dpamimo::run(config, options);
            emit(dpamimo::report_to_json(report), out_path);
            if (!csv_path.empty()) emit(dpamimo::report_to_csv(report), csv_path);
            if (report.infeasibility) {
                std::cerr << "infeasible: " << *report.infeasibility << '\n';
                if (strict) return kExitRuntime;
            }
            return kExitOk;
        }

        if (*sweep) {
            const auto text = dpamimo::read_file(config_path);
            const auto points =
                dpamimo::expand_grid(text, std::filesystem::path(config_path).parent_path());
            std::vector<dpamimo::ScenarioConfig> configs;
            std::vector<std::string> labels;
            std::vector<std::size_t> slots;
            std::vector<dpamimo::SweepResult> results(points.size());
            for (std::size_t i = 0; i < points.size(); ++i) {
                labels.push_back(points[i].label);
                if (points[i].config) {
                    configs.push_back(*points[i].config);
                    slots.push_back(i);
                } else {
                    results[i].error = points[i].error;
                }
            }
            auto ran = dpamimo::sweep(configs, options, jobs);
            for (std::size_t k = 0; k < ran.size(); ++k) results[slots[k]] = std::move(ran[k]);
            emit(dpamimo::sweep_to_json(results, labels), out_path);
            bool failed = false;
            for (std::size_t i = 0; i < results.size(); ++i) {
                if (results[i].error) {
                    std::cerr << labels[i] << ": " << *results[i].error << '\n';
                    failed = true;
                } else if (results[i].report && results[i].report->infeasibility) {
                    failed = true;
                }
            }
            return strict && failed ? kExitRuntime : kExitOk;
        }

        if (*compare) {
            const auto config = dpamimo::load_scenario(config_path);
            const auto rows = dpamimo::compare_layouts(parse_grips(grips), config, options);
            emit(dpamimo::comparison_to_csv(rows), out_path);
            return kExitOk;
        }
    } catch (const dpamimo::ConfigError& e) {
        std::cerr << "invalid config: " << e.what() << '\n';
        return kExitInvalidConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return kExitOk;
}

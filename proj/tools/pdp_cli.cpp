#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pdp/benchmark.hpp"
#include "pdp/instance_gen.hpp"
#include "pdp/json_io.hpp"
#include "pdp/svg.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitValidationFailure = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitIo = 3;

struct CliOptions {
    std::string config_path;
    std::string backend;
    long long seed = -1;
    int exact_threshold = -1;
};

pdp::PlannerConfig load_planner_config(const CliOptions& opts) {
    pdp::PlannerConfig config;
    if (!opts.config_path.empty()) {
        const json j = pdp::parse_json_text(pdp::read_text_file(opts.config_path),
                                            opts.config_path);
        config.solver.seed = j.value("seed", config.solver.seed);
        config.solver.exact_threshold = j.value("exact_threshold", config.solver.exact_threshold);
        config.distance_weight = j.value("distance_weight", config.distance_weight);
        config.coverage_weight = j.value("coverage_weight", config.coverage_weight);
        if (j.contains("backend")) {
            const std::string b = j["backend"].get<std::string>();
            if (b == "exact") config.solver.backend = pdp::Backend::Exact;
            else if (b == "anneal") config.solver.backend = pdp::Backend::Anneal;
            else if (b == "auto") config.solver.backend = pdp::Backend::Auto;
            else throw pdp::Error("config: unknown backend \"" + b + "\"");
        }
        if (j.contains("constraint_form")) {
            const std::string f = j["constraint_form"].get<std::string>();
            if (f == "aggregate") config.solver.constraint_form = pdp::ConstraintForm::Aggregate;
            else if (f == "literal") config.solver.constraint_form = pdp::ConstraintForm::Literal;
            else throw pdp::Error("config: unknown constraint_form \"" + f + "\"");
        }
        if (j.contains("tp_selection")) {
            const std::string s = j["tp_selection"].get<std::string>();
            if (s == "earliest-deadline") config.tp_selection = pdp::TpSelection::EarliestDeadline;
            else if (s == "nearest") config.tp_selection = pdp::TpSelection::Nearest;
            else throw pdp::Error("config: unknown tp_selection \"" + s + "\"");
        }
        if (j.contains("anneal")) {
            const auto& a = j["anneal"];
            config.solver.anneal.restarts = a.value("restarts", config.solver.anneal.restarts);
            config.solver.anneal.steps = a.value("steps", config.solver.anneal.steps);
            config.solver.anneal.initial_temperature =
                a.value("initial_temperature", config.solver.anneal.initial_temperature);
            config.solver.anneal.final_temperature_ratio =
                a.value("final_temperature_ratio", config.solver.anneal.final_temperature_ratio);
            if (a.contains("penalty_weight") && !a["penalty_weight"].is_null()) {
                config.solver.anneal.penalty_weight = a["penalty_weight"].get<double>();
            }
        }
    }
    if (!opts.backend.empty()) {
        if (opts.backend == "exact") config.solver.backend = pdp::Backend::Exact;
        else if (opts.backend == "anneal") config.solver.backend = pdp::Backend::Anneal;
        else if (opts.backend == "auto") config.solver.backend = pdp::Backend::Auto;
        else throw pdp::Error("unknown backend \"" + opts.backend + "\"");
    }
    if (opts.seed >= 0) config.solver.seed = static_cast<uint64_t>(opts.seed);
    if (opts.exact_threshold >= 0) config.solver.exact_threshold = opts.exact_threshold;
    return config;
}

pdp::ProblemInstance load_instance_file(const std::string& path) {
    const json j = pdp::parse_json_text(pdp::read_text_file(path), path);
    pdp::ParsedInstance parsed = pdp::instance_from_json(j);
    for (const auto& w : parsed.warnings) std::cerr << "warning: " << w << "\n";
    return std::move(parsed.instance);
}

void write_or_print(const std::string& out, const std::string& content) {
    if (out.empty() || out == "-") {
        std::cout << content;
    } else {
        pdp::write_text_file(out, content);
    }
}

int require_valid_instance(const pdp::ProblemInstance& instance) {
    const auto issues = pdp::validate_instance(instance);
    for (const auto& issue : issues) {
        std::cerr << "instance issue [" << pdp::issue_code_name(issue.code)
                  << "]: " << issue.detail << "\n";
    }
    return issues.empty() ? kExitOk : kExitInfeasible;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"2DH-PDP route planner: heterogeneous fleet, two-dimensional capacities, "
                 "priority deadlines"};
    app.require_subcommand(1);

    CliOptions opts;
    std::string instance_path, solution_path, out_path, svg_path, profile_name, table_path;
    std::vector<std::string> profile_names;
    std::string dataset_dir;
    bool include_validation = true;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", opts.config_path, "planner config JSON");
        cmd->add_option("--backend", opts.backend, "auto|exact|anneal");
        cmd->add_option("--seed", opts.seed, "solver seed override");
        cmd->add_option("--exact-threshold", opts.exact_threshold,
                        "largest SRP solved exhaustively");
    };

    auto* generate = app.add_subcommand("generate", "emit a benchmark instance as JSON");
    generate->add_option("--profile", profile_name, "profile name, e.g. D14_P1")->required();
    generate->add_option("--seed", opts.seed, "generator seed override");
    generate->add_option("--out", out_path, "output file (default stdout)");

    auto* solve = app.add_subcommand("solve", "plan routes for an instance");
    solve->add_option("--instance", instance_path, "instance JSON")->required();
    solve->add_option("--out", out_path, "solution JSON output (default stdout)");
    solve->add_option("--svg", svg_path, "also plot the routes to this SVG file");
    solve->add_flag("!--no-validation", include_validation,
                    "skip the embedded validation block");
    add_common(solve);

    auto* validate = app.add_subcommand("validate", "re-verify a solution against an instance");
    validate->add_option("--instance", instance_path, "instance JSON")->required();
    validate->add_option("--solution", solution_path, "solution JSON")->required();
    validate->add_option("--out", out_path, "validation report output (default stdout)");

    auto* benchmark = app.add_subcommand("benchmark", "run profiles end to end and report");
    benchmark->add_option("--profiles", profile_names,
                          "profile names (default: all six bundled)")
        ->delimiter(',');
    benchmark->add_option("--out", out_path, "report JSON output (default stdout)");
    benchmark->add_option("--table", table_path, "also write the plain-text table here");
    add_common(benchmark);

    auto* plot = app.add_subcommand("plot", "render a solved instance to SVG");
    plot->add_option("--instance", instance_path, "instance JSON")->required();
    plot->add_option("--solution", solution_path, "solution JSON")->required();
    plot->add_option("--out", svg_path, "SVG output path")->required();

    auto* ingest = app.add_subcommand("ingest",
                                      "import externally published instances if their format "
                                      "matches the documented schema");
    ingest->add_option("--dir", dataset_dir, "directory of candidate instance files")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (generate->parsed()) {
            pdp::InstanceProfile profile = pdp::profile_by_name(profile_name);
            if (opts.seed >= 0) profile.seed = static_cast<uint64_t>(opts.seed);
            const pdp::ProblemInstance instance = pdp::generate_instance(profile);
            write_or_print(out_path, pdp::instance_to_json(instance).dump(2) + "\n");
            return kExitOk;
        }

        if (solve->parsed()) {
            const pdp::ProblemInstance instance = load_instance_file(instance_path);
            if (int rc = require_valid_instance(instance); rc != kExitOk) return rc;
            const pdp::PlannerConfig config = load_planner_config(opts);
            const pdp::PlanSolution solution = pdp::run(instance, config);
            json out = pdp::solution_to_json(solution);
            if (include_validation) {
                out["validation"] =
                    pdp::validation_to_json(pdp::validate_solution(solution, instance));
            }
            write_or_print(out_path, out.dump(2) + "\n");
            if (!svg_path.empty()) pdp::emit_svg(solution, instance, svg_path);
            return kExitOk;
        }

        if (validate->parsed()) {
            const pdp::ProblemInstance instance = load_instance_file(instance_path);
            const json sj = pdp::parse_json_text(pdp::read_text_file(solution_path),
                                                 solution_path);
            const pdp::PlanSolution solution = pdp::solution_from_json(sj);
            const pdp::ValidationReport report = pdp::validate_solution(solution, instance);
            write_or_print(out_path, pdp::validation_to_json(report).dump(2) + "\n");
            return report.constraints_pass() && report.preferences_pass() ? kExitOk
                                                                          : kExitValidationFailure;
        }

        if (benchmark->parsed()) {
            const pdp::PlannerConfig config = load_planner_config(opts);
            std::vector<pdp::NamedInstance> instances;
            if (profile_names.empty()) {
                for (const auto& p : pdp::named_profiles()) profile_names.push_back(p.name);
            }
            for (const auto& name : profile_names) {
                pdp::InstanceProfile profile = pdp::profile_by_name(name);
                if (opts.seed >= 0) profile.seed = static_cast<uint64_t>(opts.seed);
                instances.push_back({name, pdp::generate_instance(profile)});
            }
            const pdp::BenchmarkReport report = pdp::run_benchmark(instances, config);
            write_or_print(out_path, pdp::benchmark_to_json(report).dump(2) + "\n");
            const std::string table = pdp::benchmark_to_table(report);
            if (!table_path.empty()) {
                pdp::write_text_file(table_path, table);
            }
            std::cerr << table;
            const bool all_ok = std::all_of(report.rows.begin(), report.rows.end(),
                                            [](const pdp::BenchmarkRow& r) { return r.solved; });
            return all_ok ? kExitOk : kExitInfeasible;
        }

        if (plot->parsed()) {
            const pdp::ProblemInstance instance = load_instance_file(instance_path);
            const json sj = pdp::parse_json_text(pdp::read_text_file(solution_path),
                                                 solution_path);
            const pdp::PlanSolution solution = pdp::solution_from_json(sj);
            pdp::emit_svg(solution, instance, svg_path);
            return kExitOk;
        }

        if (ingest->parsed()) {
            namespace fs = std::filesystem;
            if (!fs::is_directory(dataset_dir)) {
                std::cerr << "ingest: " << dataset_dir << " is not a directory\n";
                return kExitIo;
            }
            int imported = 0, rejected = 0;
            std::vector<fs::path> files;
            for (const auto& entry : fs::directory_iterator(dataset_dir)) {
                if (entry.is_regular_file()) files.push_back(entry.path());
            }
            std::sort(files.begin(), files.end());
            for (const auto& path : files) {
                try {
                    const json j =
                        pdp::parse_json_text(pdp::read_text_file(path.string()), path.string());
                    pdp::ParsedInstance parsed = pdp::instance_from_json(j);
                    const auto issues = pdp::validate_instance(parsed.instance);
                    if (!issues.empty()) {
                        std::cerr << "rejected " << path.filename().string() << ": "
                                  << issues.front().detail << "\n";
                        ++rejected;
                        continue;
                    }
                    std::cout << "imported " << path.filename().string() << " ("
                              << parsed.instance.deliveries.size() << " deliveries, "
                              << parsed.instance.fleet.size() << " trucks)\n";
                    ++imported;
                } catch (const pdp::Error& e) {
                    std::cerr << "rejected " << path.filename().string()
                              << ": unsupported format: " << e.what() << "\n";
                    ++rejected;
                }
            }
            std::cout << imported << " imported, " << rejected << " rejected\n";
            return imported > 0 || rejected == 0 ? kExitOk : kExitIo;
        }
    } catch (const pdp::IoFailure& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIo;
    } catch (const pdp::FleetExhausted& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const pdp::DeadlineImpossible& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const pdp::NoFeasibleRoute& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const pdp::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidationFailure;
    }
    return kExitOk;
}

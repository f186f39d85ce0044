#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "pdp/baseline.hpp"
#include "pdp/instance_gen.hpp"
#include "pdp/orchestrator.hpp"
#include "pdp/validation.hpp"

namespace pdp {

struct BenchmarkRow {
    std::string instance_name;
    bool solved = false;
    std::string error;  // set when the instance failed instead of solving

    int full_routes = 0;
    std::array<int, 4> subroute_mix{0, 0, 0, 0};
    Mark r1 = Mark::Pass;
    Mark r2 = Mark::Pass;
    Mark r3 = Mark::Pass;
    bool p1 = false;
    bool p2 = false;
    Mark p3 = Mark::Pass;

    double total_distance = 0.0;
    double tsp_total = 0.0;
    double deviation_pct = 0.0;
    bool deviation_heuristic = false;  // a route was too large for the exact oracle

    bool coverage_optimal = true;  // every audited sub-route serves the max possible
    int coverage_checked = 0;

    int srp_count = 0;
    long long srp_variables = 0;
    long long srp_constraints = 0;
};

struct BenchmarkReport {
    std::vector<BenchmarkRow> rows;
};

struct NamedInstance {
    std::string name;
    ProblemInstance instance;
};

// Runs planner + validation + oracle comparison per instance. Failures become
// row-level errors, never aborts.
BenchmarkReport run_benchmark(const std::vector<NamedInstance>& instances,
                              const PlannerConfig& config);

nlohmann::json benchmark_to_json(const BenchmarkReport& report);
std::string benchmark_to_table(const BenchmarkReport& report);

}  // namespace pdp

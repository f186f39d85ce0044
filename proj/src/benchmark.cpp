#include "pdp/benchmark.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "pdp/solvers.hpp"

namespace pdp {

BenchmarkReport run_benchmark(const std::vector<NamedInstance>& instances,
                              const PlannerConfig& config) {
    BenchmarkReport report;
    for (const auto& named : instances) {
        BenchmarkRow row;
        row.instance_name = named.name;
        try {
            const PlanSolution solution = run(named.instance, config);
            const ValidationReport validation = validate_solution(solution, named.instance);
            const ComparisonReport comparison = compare_solution(solution, named.instance);

            row.solved = true;
            row.full_routes = static_cast<int>(solution.routes.size());
            row.subroute_mix = solution.totals.subroute_mix;
            row.r1 = validation.r1.mark;
            row.r2 = validation.r2.mark;
            row.r3 = validation.r3.mark;
            row.p1 = validation.p1.mark == Mark::Pass;
            row.p2 = validation.p2.mark == Mark::Pass;
            row.p3 = validation.p3.mark;
            row.total_distance = comparison.total_route_distance;
            row.tsp_total = comparison.total_tsp_length;
            row.deviation_pct = comparison.deviation_pct;
            row.deviation_heuristic = comparison.any_heuristic;
            row.srp_count = solution.srp_count;
            row.srp_variables = solution.total_srp_variables;
            row.srp_constraints = solution.total_srp_constraints;

            for (const auto& route : solution.routes) {
                for (const auto& sub : route.subroutes) {
                    if (sub.spec.travel.empty()) continue;  // loaded, not solved in-process
                    if (sub.candidate_pool > config.solver.exact_threshold) continue;
                    ++row.coverage_checked;
                    const int served_candidates =
                        sub.route.deliveries_served() - (sub.spec.destination_delivery ? 1 : 0);
                    const int best = max_servable_candidates(sub.spec,
                                                             config.solver.exact_threshold);
                    if (served_candidates < best) row.coverage_optimal = false;
                }
            }
        } catch (const Error& e) {
            row.error = e.what();
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

nlohmann::json benchmark_to_json(const BenchmarkReport& report) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : report.rows) {
        nlohmann::json rj;
        rj["instance"] = row.instance_name;
        rj["solved"] = row.solved;
        if (!row.solved) {
            rj["error"] = row.error;
            rows.push_back(rj);
            continue;
        }
        rj["full_routes"] = row.full_routes;
        rj["subroute_mix"] = row.subroute_mix;
        rj["r1"] = mark_name(row.r1);
        rj["r2"] = mark_name(row.r2);
        rj["r3"] = mark_name(row.r3);
        rj["p1"] = row.p1;
        rj["p2"] = row.p2;
        rj["p3"] = mark_name(row.p3);
        rj["total_distance"] = row.total_distance;
        rj["tsp_total"] = row.tsp_total;
        rj["deviation_pct"] = row.deviation_pct;
        rj["deviation_heuristic"] = row.deviation_heuristic;
        rj["coverage_optimal"] = row.coverage_optimal;
        rj["coverage_checked"] = row.coverage_checked;
        rj["srp_count"] = row.srp_count;
        rj["srp_variables"] = row.srp_variables;
        rj["srp_constraints"] = row.srp_constraints;
        rows.push_back(rj);
    }
    return nlohmann::json{{"rows", rows}};
}

namespace {

std::string fixed2(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string mark_cell(Mark m) {
    switch (m) {
        case Mark::Pass: return "pass";
        case Mark::Fail: return "FAIL";
        case Mark::NotPresent: return "-";
    }
    return "?";
}

}  // namespace

std::string benchmark_to_table(const BenchmarkReport& report) {
    std::ostringstream os;
    char line[256];
    std::snprintf(line, sizeof(line), "%-10s %6s %-14s %-5s %-5s %-5s %-14s %-9s %-8s %5s %6s %6s\n",
                  "instance", "routes", "mix[R,DT,TT,TD]", "R1", "R2", "R3", "dist", "vs-tsp",
                  "coverage", "srps", "vars", "cons");
    os << line;
    for (const auto& row : report.rows) {
        if (!row.solved) {
            std::snprintf(line, sizeof(line), "%-10s FAILED: %s\n", row.instance_name.c_str(),
                          row.error.c_str());
            os << line;
            continue;
        }
        std::string mix = "[" + std::to_string(row.subroute_mix[0]) + "," +
                          std::to_string(row.subroute_mix[1]) + "," +
                          std::to_string(row.subroute_mix[2]) + "," +
                          std::to_string(row.subroute_mix[3]) + "]";
        std::string dev = (row.deviation_pct >= 0 ? "+" : "") + fixed2(row.deviation_pct) + "%";
        if (row.deviation_heuristic) dev += "*";
        std::snprintf(line, sizeof(line), "%-10s %6d %-14s %-5s %-5s %-5s %-14s %-9s %-8s %5d %6lld %6lld\n",
                      row.instance_name.c_str(), row.full_routes, mix.c_str(),
                      mark_cell(row.r1).c_str(), mark_cell(row.r2).c_str(),
                      mark_cell(row.r3).c_str(), fixed2(row.total_distance).c_str(), dev.c_str(),
                      row.coverage_optimal ? "optimal" : "SUBOPT", row.srp_count,
                      row.srp_variables, row.srp_constraints);
        os << line;
    }
    if (std::any_of(report.rows.begin(), report.rows.end(),
                    [](const BenchmarkRow& r) { return r.deviation_heuristic; })) {
        os << "* baseline used the 2-opt heuristic for at least one route\n";
    }
    return os.str();
}

}  // namespace pdp

#pragma once

#include <string>
#include <vector>

#include "pdp/model.hpp"
#include "pdp/orchestrator.hpp"

namespace pdp {

enum class Mark { Pass, Fail, NotPresent };

const char* mark_name(Mark m);

struct CheckResult {
    Mark mark = Mark::Pass;
    std::vector<std::string> details;
};

struct CostBreakdown {
    double distance = 0.0;
    double rental = 0.0;
    double total = 0.0;
};

struct ValidationReport {
    CheckResult r1;  // truck capacities
    CheckResult r2;  // top-priority deadlines; NotPresent when the instance has none
    CheckResult r3;  // working-day bound
    CheckResult p1;  // one route per truck
    CheckResult p2;  // owned trucks before rentals
    CheckResult p3;  // fleet-size audit, reported but never enforced
    CostBreakdown cost;

    bool constraints_pass() const;   // r1..r3
    bool preferences_pass() const;  // p1, p2
};

// Recomputes loads, durations, and arrival times from raw travel data and
// audits the solution against them. Never trusts solver-reported figures.
ValidationReport validate_solution(const PlanSolution& solution, const ProblemInstance& instance);

CostBreakdown account_cost(const PlanSolution& solution, const ProblemInstance& instance);

}  // namespace pdp

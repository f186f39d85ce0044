#pragma once

#include <string>

#include "pdp/model.hpp"
#include "pdp/orchestrator.hpp"

namespace pdp {

// Renders depot, deliveries (priority drops ringed), and one colored polyline
// per truck route. Output is byte-stable for identical inputs.
std::string render_svg(const PlanSolution& solution, const ProblemInstance& instance);

void emit_svg(const PlanSolution& solution, const ProblemInstance& instance,
              const std::string& path);

}  // namespace pdp

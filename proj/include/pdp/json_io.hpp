#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "pdp/model.hpp"
#include "pdp/orchestrator.hpp"
#include "pdp/validation.hpp"

namespace pdp {

struct ParsedInstance {
    ProblemInstance instance;
    std::vector<std::string> warnings;  // one entry per unknown field
};

ParsedInstance instance_from_json(const nlohmann::json& j);
nlohmann::json instance_to_json(const ProblemInstance& instance);

nlohmann::json solution_to_json(const PlanSolution& solution);
PlanSolution solution_from_json(const nlohmann::json& j);

nlohmann::json validation_to_json(const ValidationReport& report);

// file helpers; throw IoFailure / Error on problems
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);
nlohmann::json parse_json_text(const std::string& text, const std::string& origin);

}  // namespace pdp

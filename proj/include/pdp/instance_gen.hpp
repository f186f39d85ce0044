#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pdp/model.hpp"

namespace pdp {

struct InstanceProfile {
    std::string name;
    int deliveries = 0;
    int tp_count = 0;
    int owned = 0;
    int rentals = 0;
    double working_day = 480.0;
    double coord_min = 0.0;
    double coord_max = 0.7;
    double weight_min = 5.0;
    double weight_max = 15.0;
    double dimension_min = 20.0;
    double dimension_max = 60.0;
    int duplicate_customer_pairs = 0;
    uint64_t seed = 1;
};

// The six bundled benchmark profiles, with their in-repo default seeds.
std::vector<InstanceProfile> named_profiles();

// throws ProfileInvalid for unknown names
InstanceProfile profile_by_name(const std::string& name);

// Deterministic under profile.seed. Guarantees: every delivery fits at least
// one truck, every deadline is satisfiable from the depot, and deadlines are
// tight enough that a priority drop cannot wait behind another stop.
ProblemInstance generate_instance(const InstanceProfile& profile);

}  // namespace pdp

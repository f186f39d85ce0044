#pragma once

// Shared helpers for the test suites: spec generators over integer travel
// matrices (so objective sums are exact in doubles) and oracles coded
// independently of the solver paths they check.

#include <algorithm>
#include <optional>
#include <vector>

#include "pdp/rng.hpp"
#include "pdp/srp.hpp"

namespace pdp_test {

// Random SRP spec with integer distances, weights, and dimensions.
inline pdp::SrpSpec random_int_spec(pdp::Rng& rng, int max_candidates,
                                    bool force_destination_delivery = false) {
    pdp::SrpSpec spec;
    const int candidates = rng.uniform_int(0, max_candidates);
    const int m = candidates + 1;

    pdp::TravelMatrix travel(static_cast<std::size_t>(m) + 1);
    for (int i = 0; i <= m; ++i) {
        for (int j = i + 1; j <= m; ++j) {
            const double d = rng.uniform_int(1, 20);
            travel.set(i, j, d);
            travel.set(j, i, d);
        }
    }
    spec.travel = travel;
    spec.origin_location = 100;  // arbitrary external ids
    spec.destination_location = 101;

    if (force_destination_delivery || rng.uniform_int(0, 1) == 1) {
        pdp::Delivery dest;
        dest.id = 900;
        dest.location = {101, 0.0, 0.0};
        dest.weight = rng.uniform_int(1, 8);
        dest.dimension = rng.uniform_int(1, 8);
        dest.customer_id = 900;
        spec.destination_delivery = dest;
    }
    for (int c = 0; c < candidates; ++c) {
        pdp::Delivery d;
        d.id = 200 + c;
        d.location = {102 + c, 0.0, 0.0};
        d.weight = rng.uniform_int(1, 8);
        d.dimension = rng.uniform_int(1, 8);
        d.customer_id = d.id;
        spec.candidates.push_back(d);
    }

    spec.max_duration = rng.uniform_int(15, 70);
    spec.max_weight = rng.uniform_int(6, 30);
    spec.max_dimension = rng.uniform_int(6, 30);
    return spec;
}

struct BruteForceBest {
    bool feasible = false;
    double objective = 0.0;
    int max_served_candidates = -1;  // over feasible routes
};

// Exhaustive oracle over every ordered candidate subset. Scores and checks
// each permutation through the CQM: the assignment is written directly from
// the permutation and judged by evaluate_objective / check_feasibility,
// touching none of the route-space arithmetic used by the solvers.
inline BruteForceBest brute_force_reference(const pdp::SrpSpec& spec) {
    const auto built = pdp::build_srp_model(spec);
    const int m = built.encoding.slot_count;
    const int candidates = static_cast<int>(spec.candidates.size());

    BruteForceBest best;
    for (unsigned mask = 0; mask < (1u << candidates); ++mask) {
        std::vector<int> slots;
        for (int c = 0; c < candidates; ++c) {
            if (mask & (1u << c)) slots.push_back(2 + c);
        }
        std::sort(slots.begin(), slots.end());
        do {
            pdp::Assignment a(static_cast<std::size_t>(built.encoding.variables()), 0);
            a[static_cast<std::size_t>(built.encoding.var_index(0, 0))] = 1;
            int position = 1;
            for (int slot : slots) {
                a[static_cast<std::size_t>(built.encoding.var_index(slot, position++))] = 1;
            }
            a[static_cast<std::size_t>(built.encoding.var_index(1, position))] = 1;

            bool ok = true;
            for (const auto& report : built.model.check_feasibility(a)) {
                if (!report.satisfied) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            const double objective = built.model.evaluate_objective(a);
            if (!best.feasible || objective < best.objective) {
                best.feasible = true;
                best.objective = objective;
            }
            best.max_served_candidates =
                std::max(best.max_served_candidates, static_cast<int>(slots.size()));
        } while (std::next_permutation(slots.begin(), slots.end()));
    }
    return best;
}

}  // namespace pdp_test

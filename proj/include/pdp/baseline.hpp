#pragma once

#include <cstdint>
#include <vector>

#include "pdp/model.hpp"
#include "pdp/orchestrator.hpp"

namespace pdp {

enum class TourMethod { HeldKarp, TwoOpt };

struct TourResult {
    std::vector<int> order;  // closed tour; starts and ends at `start`
    double length = 0.0;
    TourMethod method = TourMethod::HeldKarp;
};

// Exact closed tour by dynamic programming over subsets. node count <= 14.
TourResult tsp_exact(const std::vector<int>& nodes, const TravelMatrix& travel, int start);

// Nearest-neighbour construction plus first-improvement 2-opt.
TourResult tsp_2opt(const std::vector<int>& nodes, const TravelMatrix& travel, int start,
                    uint64_t seed);

inline constexpr int kHeldKarpLimit = 14;

struct RouteComparison {
    int truck_id = 0;
    double route_distance = 0.0;  // recomputed from raw travel data
    double tsp_length = 0.0;      // closed tour over {depot} + served locations
    double deviation_pct = 0.0;
    TourMethod method = TourMethod::HeldKarp;
    // true when no traversal direction of the tour meets every priority deadline
    bool tsp_violates_deadline = false;
};

struct ComparisonReport {
    std::vector<RouteComparison> routes;
    double total_route_distance = 0.0;
    double total_tsp_length = 0.0;
    double deviation_pct = 0.0;
    bool any_heuristic = false;  // some route was too large for the exact oracle
};

// Per-route comparison against the unconstrained TSP optimum, with priority
// deadlines of each oracle tour audited in both traversal directions.
ComparisonReport compare_solution(const PlanSolution& solution, const ProblemInstance& instance);

}  // namespace pdp

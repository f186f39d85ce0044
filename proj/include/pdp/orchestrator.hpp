#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "pdp/model.hpp"
#include "pdp/solvers.hpp"
#include "pdp/srp.hpp"

namespace pdp {

enum class TrajectoryType { Regular, DepotTp, TpTp, TpDepot };

const char* trajectory_name(TrajectoryType t);

struct Visit {
    int location_id = 0;   // 0 = depot
    int delivery_id = -1;  // -1 when nothing is dropped here
    double arrival = 0.0;  // absolute time since the truck left the depot
};

struct SubRoute {
    TrajectoryType type = TrajectoryType::Regular;
    SrpRoute route;
    Backend solved_by = Backend::Exact;
    int origin_location = 0;
    int destination_location = 0;
    double start_time = 0.0;
    std::vector<Visit> visits;  // origin first, destination last
    int candidate_pool = 0;     // candidates offered to the SRP
    int srp_variables = 0;
    int srp_constraints = 0;
    SrpSpec spec;  // kept in memory for audits; never serialized
};

struct TruckState {
    Truck truck;
    int position_location = 0;  // 0 = depot, otherwise a TP location id
    double elapsed = 0.0;
    double used_weight = 0.0;
    double used_dimension = 0.0;
    std::vector<SubRoute> accumulated;

    bool at_depot() const { return position_location == 0; }
};

struct FullRoute {
    int truck_id = 0;
    std::vector<SubRoute> subroutes;
    std::vector<Visit> visits;  // depot .. depot
    double total_distance = 0.0;
    double total_weight = 0.0;
    double total_dimension = 0.0;

    int deliveries_served() const;
};

struct PlanTotals {
    double distance = 0.0;
    double rental_cost = 0.0;
    int trucks_used = 0;
    // counts by trajectory type: [regular, depot-tp, tp-tp, tp-depot]
    std::array<int, 4> subroute_mix{0, 0, 0, 0};
};

struct PlanSolution {
    std::vector<FullRoute> routes;
    PlanTotals totals;
    long long total_srp_variables = 0;
    long long total_srp_constraints = 0;
    int srp_count = 0;
    std::vector<std::string> notes;
};

enum class TpSelection { EarliestDeadline, Nearest };

struct PlannerConfig {
    SolverConfig solver;
    double distance_weight = 1.0;
    double coverage_weight = 2.0;
    TpSelection tp_selection = TpSelection::EarliestDeadline;
};

// owned before rental, each group by descending (weight, dimension), ties by id
std::vector<Truck> order_vehicles(const std::vector<Truck>& fleet);

// top-priority deliveries first by ascending deadline (ties by id), the rest by id
std::vector<Delivery> order_deliveries(const std::vector<Delivery>& deliveries);

const TruckState& select_vehicle(const std::vector<TruckState>& queue);

// capacity fits, the deadline can still be met, and the depot remains reachable
// within the working day
bool is_reachable(const TruckState& state, const Delivery& tp, const TravelMatrix& travel,
                  double working_day);

struct RouteChoice {
    TrajectoryType type = TrajectoryType::Regular;
    std::optional<Delivery> tp;  // destination delivery for DepotTp / TpTp
};

RouteChoice select_route_type(const TruckState& state, const std::vector<Delivery>& pending,
                              const TravelMatrix& travel, double working_day,
                              TpSelection tp_selection);

double max_trajectory_duration(TrajectoryType type, const TruckState& state,
                               std::optional<double> tp_deadline, double working_day);

// (remaining weight, remaining dimension)
std::pair<double, double> usable_capacity(const TruckState& state);

SrpSpec build_srp_spec(const RouteChoice& choice, const TruckState& state,
                       const std::vector<Delivery>& pending, const ProblemInstance& instance,
                       const TravelMatrix& travel, const PlannerConfig& config);

FullRoute concatenate(const std::vector<SubRoute>& subroutes);

PlanSolution run(const ProblemInstance& instance, const PlannerConfig& config);

}  // namespace pdp

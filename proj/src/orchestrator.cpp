#include "pdp/orchestrator.hpp"

#include <algorithm>
#include <sstream>

namespace pdp {

const char* trajectory_name(TrajectoryType t) {
    switch (t) {
        case TrajectoryType::Regular: return "regular";
        case TrajectoryType::DepotTp: return "depot-tp";
        case TrajectoryType::TpTp: return "tp-tp";
        case TrajectoryType::TpDepot: return "tp-depot";
    }
    return "unknown";
}

int FullRoute::deliveries_served() const {
    int count = 0;
    for (const auto& v : visits) {
        if (v.delivery_id >= 0) ++count;
    }
    return count;
}

std::vector<Truck> order_vehicles(const std::vector<Truck>& fleet) {
    if (fleet.empty()) throw EmptyFleet("fleet is empty");
    std::vector<Truck> ordered = fleet;
    std::sort(ordered.begin(), ordered.end(), [](const Truck& a, const Truck& b) {
        if (a.ownership != b.ownership) return a.ownership == Ownership::Owned;
        if (a.max_weight != b.max_weight) return a.max_weight > b.max_weight;
        if (a.max_dimension != b.max_dimension) return a.max_dimension > b.max_dimension;
        return a.id < b.id;
    });
    return ordered;
}

std::vector<Delivery> order_deliveries(const std::vector<Delivery>& deliveries) {
    std::vector<Delivery> ordered = deliveries;
    std::sort(ordered.begin(), ordered.end(), [](const Delivery& a, const Delivery& b) {
        const bool atp = a.is_top_priority();
        const bool btp = b.is_top_priority();
        if (atp != btp) return atp;
        if (atp && btp && *a.tp_deadline != *b.tp_deadline) return *a.tp_deadline < *b.tp_deadline;
        return a.id < b.id;
    });
    return ordered;
}

const TruckState& select_vehicle(const std::vector<TruckState>& queue) {
    if (queue.empty()) throw FleetExhausted("no trucks remain in the vehicle queue");
    return queue.front();
}

bool is_reachable(const TruckState& state, const Delivery& tp, const TravelMatrix& travel,
                  double working_day) {
    if (!tp.is_top_priority()) {
        throw NotATpDelivery("delivery " + std::to_string(tp.id) + " has no deadline");
    }
    const auto [w, d] = usable_capacity(state);
    if (tp.weight > w + kEqualityTolerance || tp.dimension > d + kEqualityTolerance) return false;
    const double leg = travel.at(state.position_location, tp.id);
    if (state.elapsed + leg > *tp.tp_deadline + kEqualityTolerance) return false;
    const double back = travel.at(tp.id, 0);
    return state.elapsed + leg + back <= working_day + kEqualityTolerance;
}

RouteChoice select_route_type(const TruckState& state, const std::vector<Delivery>& pending,
                              const TravelMatrix& travel, double working_day,
                              TpSelection tp_selection) {
    std::vector<const Delivery*> tps;
    for (const auto& d : pending) {
        if (d.is_top_priority()) tps.push_back(&d);
    }

    if (!state.at_depot()) {
        if (!tps.empty()) {
            const Delivery* chosen = nullptr;
            for (const Delivery* tp : tps) {
                if (!is_reachable(state, *tp, travel, working_day)) continue;
                if (!chosen) {
                    chosen = tp;
                    if (tp_selection == TpSelection::EarliestDeadline) break;  // queue order
                } else if (tp_selection == TpSelection::Nearest) {
                    const double a = travel.at(state.position_location, tp->id);
                    const double b = travel.at(state.position_location, chosen->id);
                    if (a < b || (a == b && *tp->tp_deadline < *chosen->tp_deadline)) chosen = tp;
                }
            }
            if (chosen) return {TrajectoryType::TpTp, *chosen};
        }
        return {TrajectoryType::TpDepot, std::nullopt};
    }
    if (!tps.empty()) {
        return {TrajectoryType::DepotTp, *tps.front()};  // pending is deadline-ordered
    }
    return {TrajectoryType::Regular, std::nullopt};
}

double max_trajectory_duration(TrajectoryType type, const TruckState& state,
                               std::optional<double> tp_deadline, double working_day) {
    double rt = 0.0;
    switch (type) {
        case TrajectoryType::TpTp:
            rt = *tp_deadline - state.elapsed;
            break;
        case TrajectoryType::TpDepot:
            rt = working_day - state.elapsed;
            break;
        case TrajectoryType::DepotTp:
            rt = *tp_deadline;
            break;
        case TrajectoryType::Regular:
            rt = working_day;
            break;
    }
    if (rt <= 0.0) {
        throw NonPositiveRt("trajectory " + std::string(trajectory_name(type)) +
                            " has no usable duration budget");
    }
    return rt;
}

std::pair<double, double> usable_capacity(const TruckState& state) {
    return {state.truck.max_weight - state.used_weight,
            state.truck.max_dimension - state.used_dimension};
}

SrpSpec build_srp_spec(const RouteChoice& choice, const TruckState& state,
                       const std::vector<Delivery>& pending, const ProblemInstance& instance,
                       const TravelMatrix& travel, const PlannerConfig& config) {
    SrpSpec spec;
    spec.origin_location = state.position_location;
    spec.distance_weight = config.distance_weight;
    spec.coverage_weight = config.coverage_weight;
    spec.max_duration = max_trajectory_duration(
        choice.type, state, choice.tp ? choice.tp->tp_deadline : std::nullopt,
        instance.working_day);
    const auto [w, d] = usable_capacity(state);
    spec.max_weight = w;
    spec.max_dimension = d;

    if (choice.tp) {
        spec.destination_location = choice.tp->location.id;
        spec.destination_delivery = *choice.tp;
    } else {
        spec.destination_location = 0;  // close at the depot
    }

    for (const auto& delivery : pending) {
        if (delivery.is_top_priority()) continue;  // TPs only ever travel as destinations
        if (delivery.weight <= w + kEqualityTolerance &&
            delivery.dimension <= d + kEqualityTolerance) {
            spec.candidates.push_back(delivery);
        }
    }

    const int m = spec.slot_count();
    TravelMatrix sub(static_cast<std::size_t>(m) + 1);
    for (int i = 0; i <= m; ++i) {
        for (int j = 0; j <= m; ++j) {
            sub.set(i, j, travel.at(spec.slot_location(i), spec.slot_location(j)));
        }
    }
    spec.travel = sub;
    return spec;
}

namespace {

std::vector<Visit> subroute_visits(const SrpSpec& spec, const SrpRoute& route,
                                   double start_time) {
    std::vector<Visit> visits;
    visits.reserve(route.visit_slots.size());
    double t = start_time;
    for (std::size_t k = 0; k < route.visit_slots.size(); ++k) {
        if (k > 0) t += route.leg_durations[k - 1];
        const int slot = route.visit_slots[k];
        Visit v;
        v.location_id = spec.slot_location(slot);
        v.delivery_id = (k == 0) ? -1 : spec.slot_delivery_id(slot);
        v.arrival = t;
        visits.push_back(v);
    }
    return visits;
}

SubRoute make_subroute(const RouteChoice& choice, const SrpSpec& spec, const SrpRoute& route,
                       const TruckState& state, Backend backend, ConstraintForm form) {
    SubRoute sub;
    sub.type = choice.type;
    sub.route = route;
    sub.solved_by = backend;
    sub.origin_location = spec.origin_location;
    sub.destination_location = spec.destination_location;
    sub.start_time = state.elapsed;
    sub.visits = subroute_visits(spec, route, state.elapsed);
    sub.candidate_pool = static_cast<int>(spec.candidates.size());
    const int m = spec.slot_count();
    sub.srp_variables = (m + 1) * (m + 1);
    sub.srp_constraints = form == ConstraintForm::Aggregate ? 3 * m + 6 : 6 * m + 5;
    sub.spec = spec;
    return sub;
}

void apply_subroute(TruckState& state, const SubRoute& sub) {
    state.elapsed += sub.route.total_duration;
    state.used_weight += sub.route.total_weight;
    state.used_dimension += sub.route.total_dimension;
    state.position_location = sub.destination_location;
    state.accumulated.push_back(sub);
}

void remove_served(std::vector<Delivery>& pending, const SrpRoute& route) {
    for (int id : route.served_delivery_ids) {
        std::erase_if(pending, [id](const Delivery& d) { return d.id == id; });
    }
}

// When every detour costs more than the coverage reward, the optimal regular
// route serves nothing and the truck would be burned for zero progress. Fall
// back to the cheapest single drop that still fits the bounds.
std::optional<SrpRoute> cheapest_single_drop(const SrpSpec& spec) {
    std::optional<SrpRoute> best;
    for (int slot = 2; slot <= spec.slot_count(); ++slot) {
        SrpRoute route = route_from_candidates(spec, {slot});
        if (!route_within_bounds(spec, route)) continue;
        if (!best || route.total_duration < best->total_duration) best = std::move(route);
    }
    return best;
}

}  // namespace

FullRoute concatenate(const std::vector<SubRoute>& subroutes) {
    if (subroutes.empty()) throw ChainBroken("no sub-routes to concatenate");
    if (subroutes.front().origin_location != 0) {
        throw ChainBroken("route chain does not start at the depot");
    }
    if (subroutes.back().destination_location != 0) {
        throw ChainBroken("route chain does not end at the depot");
    }
    FullRoute full;
    full.subroutes = subroutes;
    for (std::size_t k = 0; k < subroutes.size(); ++k) {
        const auto& sub = subroutes[k];
        if (k > 0 && sub.origin_location != subroutes[k - 1].destination_location) {
            throw ChainBroken("sub-route " + std::to_string(k) +
                              " does not start where the previous one ended");
        }
        full.total_distance += sub.route.total_duration;
        full.total_weight += sub.route.total_weight;
        full.total_dimension += sub.route.total_dimension;
        const std::size_t skip = (k == 0) ? 0 : 1;  // junction visit is shared
        full.visits.insert(full.visits.end(), sub.visits.begin() + static_cast<std::ptrdiff_t>(skip),
                           sub.visits.end());
    }
    return full;
}

PlanSolution run(const ProblemInstance& instance, const PlannerConfig& config) {
    {
        const auto issues = validate_instance(instance);
        if (!issues.empty()) {
            throw Error(std::string("instance fails validation: ") + issues.front().detail);
        }
    }
    const TravelMatrix travel = build_travel_matrix(instance);
    std::vector<Delivery> pending = order_deliveries(instance.deliveries);

    std::vector<TruckState> queue;
    for (const auto& truck : order_vehicles(instance.fleet)) {
        TruckState state;
        state.truck = truck;
        queue.push_back(std::move(state));
    }

    PlanSolution solution;

    auto account = [&solution](const SubRoute& sub) {
        ++solution.srp_count;
        solution.total_srp_variables += sub.srp_variables;
        solution.total_srp_constraints += sub.srp_constraints;
    };

    auto close_route = [&](TruckState& state) {
        FullRoute full = concatenate(state.accumulated);
        full.truck_id = state.truck.id;
        if (full.deliveries_served() > 0) {
            solution.totals.distance += full.total_distance;
            if (state.truck.ownership == Ownership::Rental) {
                solution.totals.rental_cost += state.truck.rental_cost;
            }
            for (const auto& sub : full.subroutes) {
                solution.totals.subroute_mix[static_cast<std::size_t>(sub.type)] += 1;
            }
            solution.routes.push_back(std::move(full));
        } else {
            solution.notes.push_back("truck " + std::to_string(state.truck.id) +
                                     " produced an empty route and was set aside");
        }
    };

    while (!pending.empty()) {
        if (queue.empty()) {
            throw FleetExhausted(std::to_string(pending.size()) +
                                 " deliveries remain but the fleet is exhausted");
        }
        TruckState& state = queue.front();
        const RouteChoice choice =
            select_route_type(state, pending, travel, instance.working_day, config.tp_selection);

        SolverConfig solver = config.solver;
        bool solved = false;
        SrpSpec spec;
        SrpRoute route;

        try {
            spec = build_srp_spec(choice, state, pending, instance, travel, config);
            route = solve(spec, solver);
            solved = true;
        } catch (const NoFeasibleRoute& e) {
            if (choice.type != TrajectoryType::DepotTp) {
                std::ostringstream os;
                os << "truck " << state.truck.id << " cannot complete a "
                   << trajectory_name(choice.type) << " trajectory: " << e.what();
                throw NoFeasibleRoute(os.str());
            }
        }

        if (!solved) {
            // The head truck cannot serve this TP from the depot; try the other
            // idle trucks in queue order before giving up on the deadline.
            bool rescued = false;
            for (std::size_t k = 1; k < queue.size() && !rescued; ++k) {
                TruckState& other = queue[k];
                if (!other.at_depot()) continue;
                try {
                    SrpSpec retry_spec =
                        build_srp_spec(choice, other, pending, instance, travel, config);
                    SrpRoute retry_route = solve(retry_spec, solver);
                    const Backend backend = dispatch_backend(retry_spec, solver);
                    SubRoute sub =
                        make_subroute(choice, retry_spec, retry_route, other, backend,
                                      solver.constraint_form);
                    account(sub);
                    apply_subroute(other, sub);
                    remove_served(pending, retry_route);
                    solution.notes.push_back("tp delivery " + std::to_string(choice.tp->id) +
                                             " reassigned from truck " +
                                             std::to_string(state.truck.id) + " to truck " +
                                             std::to_string(other.truck.id));
                    // Half-done routes must sit at the head of the queue.
                    std::rotate(queue.begin(), queue.begin() + static_cast<std::ptrdiff_t>(k),
                                queue.begin() + static_cast<std::ptrdiff_t>(k) + 1);
                    rescued = true;
                } catch (const NoFeasibleRoute&) {
                    continue;
                }
            }
            if (!rescued) {
                throw DeadlineImpossible("tp delivery " + std::to_string(choice.tp->id) +
                                         " cannot be served by any truck in the queue");
            }
            continue;
        }

        if (choice.type == TrajectoryType::Regular && route.served_delivery_ids.empty() &&
            !spec.candidates.empty()) {
            if (auto forced = cheapest_single_drop(spec)) {
                route = *forced;
                solution.notes.push_back(
                    "truck " + std::to_string(state.truck.id) +
                    " served delivery " + std::to_string(route.served_delivery_ids.front()) +
                    " as forced progress; every detour exceeds the coverage reward");
            }
        }

        const Backend backend = dispatch_backend(spec, solver);
        SubRoute sub = make_subroute(choice, spec, route, state, backend, solver.constraint_form);
        account(sub);
        apply_subroute(state, sub);
        remove_served(pending, route);

        if (state.position_location == 0) {
            close_route(state);
            queue.erase(queue.begin());
        }
    }

    // Trucks still mid-route when the work ran out head home.
    for (auto& state : queue) {
        if (state.at_depot()) continue;
        const RouteChoice choice{TrajectoryType::TpDepot, std::nullopt};
        SrpSpec spec = build_srp_spec(choice, state, pending, instance, travel, config);
        SrpRoute route = solve(spec, config.solver);
        SubRoute sub = make_subroute(choice, spec, route, state, dispatch_backend(spec, config.solver),
                                     config.solver.constraint_form);
        account(sub);
        apply_subroute(state, sub);
        close_route(state);
    }

    solution.totals.trucks_used = static_cast<int>(solution.routes.size());
    return solution;
}

}  // namespace pdp

#include "pdp/validation.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace pdp {

const char* mark_name(Mark m) {
    switch (m) {
        case Mark::Pass: return "pass";
        case Mark::Fail: return "fail";
        case Mark::NotPresent: return "not-present";
    }
    return "unknown";
}

bool ValidationReport::constraints_pass() const {
    return r1.mark == Mark::Pass && r3.mark == Mark::Pass &&
           (r2.mark == Mark::Pass || r2.mark == Mark::NotPresent);
}

bool ValidationReport::preferences_pass() const {
    return p1.mark == Mark::Pass && p2.mark == Mark::Pass;
}

namespace {

struct RecomputedRoute {
    double duration = 0.0;
    double weight = 0.0;
    double dimension = 0.0;
    std::vector<double> arrivals;  // aligned with visits
};

RecomputedRoute recompute(const FullRoute& route, const ProblemInstance& instance,
                          const TravelMatrix& travel) {
    RecomputedRoute r;
    double t = 0.0;
    for (std::size_t k = 0; k < route.visits.size(); ++k) {
        const auto& v = route.visits[k];
        if (k > 0) t += travel.at(route.visits[k - 1].location_id, v.location_id);
        r.arrivals.push_back(t);
        if (v.delivery_id >= 0) {
            const auto& d = instance.deliveries[static_cast<std::size_t>(v.delivery_id - 1)];
            r.weight += d.weight;
            r.dimension += d.dimension;
        }
    }
    r.duration = t;
    return r;
}

const Truck* find_truck(const ProblemInstance& instance, int id) {
    for (const auto& t : instance.fleet) {
        if (t.id == id) return &t;
    }
    return nullptr;
}

void check_structure(const PlanSolution& solution, const ProblemInstance& instance) {
    std::map<int, int> served_count;
    for (const auto& route : solution.routes) {
        if (!find_truck(instance, route.truck_id)) {
            throw MalformedSolution("route references unknown truck " +
                                    std::to_string(route.truck_id));
        }
        if (route.visits.size() < 2 || route.visits.front().location_id != 0 ||
            route.visits.back().location_id != 0) {
            throw MalformedSolution("route of truck " + std::to_string(route.truck_id) +
                                    " does not start and end at the depot");
        }
        for (const auto& v : route.visits) {
            if (v.location_id < 0 ||
                static_cast<std::size_t>(v.location_id) > instance.deliveries.size()) {
                throw MalformedSolution("route visits unknown location " +
                                        std::to_string(v.location_id));
            }
            if (v.delivery_id >= 0) {
                if (v.delivery_id < 1 ||
                    static_cast<std::size_t>(v.delivery_id) > instance.deliveries.size()) {
                    throw MalformedSolution("route drops unknown delivery " +
                                            std::to_string(v.delivery_id));
                }
                served_count[v.delivery_id] += 1;
            }
        }
    }
    for (const auto& d : instance.deliveries) {
        const auto it = served_count.find(d.id);
        if (it == served_count.end()) {
            throw MalformedSolution("delivery " + std::to_string(d.id) + " is never served");
        }
        if (it->second > 1) {
            throw MalformedSolution("delivery " + std::to_string(d.id) + " is served " +
                                    std::to_string(it->second) + " times");
        }
    }
}

}  // namespace

CostBreakdown account_cost(const PlanSolution& solution, const ProblemInstance& instance) {
    CostBreakdown cost;
    if (solution.routes.empty()) return cost;
    const TravelMatrix travel = build_travel_matrix(instance);
    for (const auto& route : solution.routes) {
        cost.distance += recompute(route, instance, travel).duration;
        if (const Truck* truck = find_truck(instance, route.truck_id);
            truck && truck->ownership == Ownership::Rental) {
            cost.rental += truck->rental_cost;
        }
    }
    cost.total = cost.distance + cost.rental;
    return cost;
}

ValidationReport validate_solution(const PlanSolution& solution,
                                   const ProblemInstance& instance) {
    check_structure(solution, instance);
    const TravelMatrix travel = build_travel_matrix(instance);

    ValidationReport report;
    const bool has_tp = std::any_of(instance.deliveries.begin(), instance.deliveries.end(),
                                    [](const Delivery& d) { return d.is_top_priority(); });
    if (!has_tp) report.r2.mark = Mark::NotPresent;

    for (const auto& route : solution.routes) {
        const Truck* truck = find_truck(instance, route.truck_id);
        const RecomputedRoute actual = recompute(route, instance, travel);

        if (actual.weight > truck->max_weight + kEqualityTolerance ||
            actual.dimension > truck->max_dimension + kEqualityTolerance) {
            report.r1.mark = Mark::Fail;
            std::ostringstream os;
            os << "truck " << truck->id << " carries " << actual.weight << " kg / "
               << actual.dimension << " cm3, capacity is " << truck->max_weight << " / "
               << truck->max_dimension;
            report.r1.details.push_back(os.str());
        }
        if (actual.duration > instance.working_day + kEqualityTolerance) {
            report.r3.mark = Mark::Fail;
            std::ostringstream os;
            os << "route of truck " << truck->id << " lasts " << actual.duration
               << ", working day is " << instance.working_day;
            report.r3.details.push_back(os.str());
        }
        for (std::size_t k = 0; k < route.visits.size(); ++k) {
            const int id = route.visits[k].delivery_id;
            if (id < 0) continue;
            const auto& d = instance.deliveries[static_cast<std::size_t>(id - 1)];
            if (d.tp_deadline && actual.arrivals[k] > *d.tp_deadline + kEqualityTolerance) {
                report.r2.mark = Mark::Fail;
                std::ostringstream os;
                os << "delivery " << id << " arrives at " << actual.arrivals[k]
                   << ", deadline is " << *d.tp_deadline;
                report.r2.details.push_back(os.str());
            }
        }
    }

    // P1: a truck may appear behind at most one route
    {
        std::set<int> seen;
        for (const auto& route : solution.routes) {
            if (!seen.insert(route.truck_id).second) {
                report.p1.mark = Mark::Fail;
                report.p1.details.push_back("truck " + std::to_string(route.truck_id) +
                                            " is assigned more than one route");
            }
        }
    }

    // P2: the set of used trucks must be a prefix of the vehicle ordering
    {
        std::set<int> used;
        for (const auto& route : solution.routes) used.insert(route.truck_id);
        const auto ordered = order_vehicles(instance.fleet);
        std::set<int> prefix;
        for (std::size_t k = 0; k < used.size() && k < ordered.size(); ++k) {
            prefix.insert(ordered[k].id);
        }
        if (used != prefix) {
            report.p2.mark = Mark::Fail;
            std::ostringstream os;
            os << "used trucks are not the first " << used.size() << " of the vehicle ordering";
            report.p2.details.push_back(os.str());
        }
    }

    // P3 audit: compare against a capacity lower bound on the fleet size.
    {
        double total_weight = 0.0, total_dimension = 0.0;
        for (const auto& d : instance.deliveries) {
            total_weight += d.weight;
            total_dimension += d.dimension;
        }
        auto bound = [&](auto key) {
            std::vector<double> caps;
            for (const auto& t : instance.fleet) caps.push_back(key(t));
            std::sort(caps.rbegin(), caps.rend());
            return caps;
        };
        const auto weight_caps = bound([](const Truck& t) { return t.max_weight; });
        const auto dim_caps = bound([](const Truck& t) { return t.max_dimension; });
        int k_weight = 0, k_dim = 0;
        for (double need = total_weight; need > kEqualityTolerance;) {
            if (k_weight >= static_cast<int>(weight_caps.size())) break;
            need -= weight_caps[static_cast<std::size_t>(k_weight++)];
        }
        for (double need = total_dimension; need > kEqualityTolerance;) {
            if (k_dim >= static_cast<int>(dim_caps.size())) break;
            need -= dim_caps[static_cast<std::size_t>(k_dim++)];
        }
        const int lower_bound = std::max(k_weight, k_dim);
        const int used = static_cast<int>(solution.routes.size());
        if (used > lower_bound) {
            report.p3.mark = Mark::Fail;
            std::ostringstream os;
            os << "solution uses " << used << " trucks; capacity bound suggests " << lower_bound
               << " might suffice";
            report.p3.details.push_back(os.str());
        }
    }

    report.cost = account_cost(solution, instance);
    return report;
}

}  // namespace pdp

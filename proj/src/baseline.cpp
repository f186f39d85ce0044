#include "pdp/baseline.hpp"

#include <algorithm>
#include <limits>

#include "pdp/errors.hpp"

namespace pdp {

namespace {

double tour_length(const std::vector<int>& order, const TravelMatrix& travel) {
    double total = 0.0;
    for (std::size_t k = 1; k < order.size(); ++k) {
        total += travel.at(order[k - 1], order[k]);
    }
    return total;
}

}  // namespace

TourResult tsp_exact(const std::vector<int>& nodes, const TravelMatrix& travel, int start) {
    const int n = static_cast<int>(nodes.size());
    if (n > kHeldKarpLimit) {
        throw TooLarge("tsp_exact limited to " + std::to_string(kHeldKarpLimit) + " nodes, got " +
                       std::to_string(n));
    }
    if (n == 0) throw Error("tsp_exact needs at least one node");

    std::vector<int> others;
    bool has_start = false;
    for (int node : nodes) {
        if (node == start) {
            has_start = true;
        } else {
            others.push_back(node);
        }
    }
    if (!has_start) throw Error("start node missing from the node set");

    TourResult result;
    result.method = TourMethod::HeldKarp;
    const int k = static_cast<int>(others.size());
    if (k == 0) {
        result.order = {start, start};
        result.length = 0.0;
        return result;
    }

    const std::size_t masks = std::size_t{1} << k;
    constexpr double kInf = std::numeric_limits<double>::infinity();
    // cost[mask][j] = min length of a path start -> (visits mask) ending at others[j]
    std::vector<std::vector<double>> cost(masks, std::vector<double>(static_cast<std::size_t>(k),
                                                                     kInf));
    std::vector<std::vector<int>> parent(masks,
                                         std::vector<int>(static_cast<std::size_t>(k), -1));
    for (int j = 0; j < k; ++j) {
        cost[std::size_t{1} << j][static_cast<std::size_t>(j)] =
            travel.at(start, others[static_cast<std::size_t>(j)]);
    }
    for (std::size_t mask = 1; mask < masks; ++mask) {
        for (int j = 0; j < k; ++j) {
            if (!(mask & (std::size_t{1} << j))) continue;
            const double base = cost[mask][static_cast<std::size_t>(j)];
            if (base == kInf) continue;
            for (int next = 0; next < k; ++next) {
                if (mask & (std::size_t{1} << next)) continue;
                const std::size_t to = mask | (std::size_t{1} << next);
                const double cand = base + travel.at(others[static_cast<std::size_t>(j)],
                                                     others[static_cast<std::size_t>(next)]);
                if (cand < cost[to][static_cast<std::size_t>(next)]) {
                    cost[to][static_cast<std::size_t>(next)] = cand;
                    parent[to][static_cast<std::size_t>(next)] = j;
                }
            }
        }
    }

    const std::size_t full = masks - 1;
    double best = kInf;
    int best_end = -1;
    for (int j = 0; j < k; ++j) {
        const double cand =
            cost[full][static_cast<std::size_t>(j)] + travel.at(others[static_cast<std::size_t>(j)], start);
        if (cand < best) {
            best = cand;
            best_end = j;
        }
    }

    std::vector<int> reversed;
    std::size_t mask = full;
    int at = best_end;
    while (at != -1) {
        reversed.push_back(others[static_cast<std::size_t>(at)]);
        const int prev = parent[mask][static_cast<std::size_t>(at)];
        mask &= ~(std::size_t{1} << at);
        at = prev;
    }
    result.order.push_back(start);
    for (auto it = reversed.rbegin(); it != reversed.rend(); ++it) result.order.push_back(*it);
    result.order.push_back(start);
    result.length = best;
    return result;
}

TourResult tsp_2opt(const std::vector<int>& nodes, const TravelMatrix& travel, int start,
                    uint64_t seed) {
    if (nodes.size() < 3) throw Error("tsp_2opt needs at least three nodes");
    (void)seed;  // construction is deterministic already; kept for interface stability

    std::vector<int> remaining;
    for (int node : nodes) {
        if (node != start) remaining.push_back(node);
    }
    std::sort(remaining.begin(), remaining.end());

    // nearest neighbour, ties by smaller node id
    std::vector<int> order{start};
    int at = start;
    while (!remaining.empty()) {
        std::size_t pick = 0;
        for (std::size_t i = 1; i < remaining.size(); ++i) {
            if (travel.at(at, remaining[i]) < travel.at(at, remaining[pick])) pick = i;
        }
        at = remaining[pick];
        order.push_back(at);
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(pick));
    }
    order.push_back(start);

    // first-improvement 2-opt on the closed tour
    bool improved = true;
    while (improved) {
        improved = false;
        const std::size_t n = order.size();
        for (std::size_t i = 1; i + 1 < n && !improved; ++i) {
            for (std::size_t j = i + 1; j + 1 < n && !improved; ++j) {
                const double before = travel.at(order[i - 1], order[i]) +
                                      travel.at(order[j], order[j + 1]);
                const double after = travel.at(order[i - 1], order[j]) +
                                     travel.at(order[i], order[j + 1]);
                if (after + 1e-12 < before) {
                    std::reverse(order.begin() + static_cast<std::ptrdiff_t>(i),
                                 order.begin() + static_cast<std::ptrdiff_t>(j + 1));
                    improved = true;
                }
            }
        }
    }

    TourResult result;
    result.order = std::move(order);
    result.length = tour_length(result.order, travel);
    result.method = TourMethod::TwoOpt;
    return result;
}

namespace {

bool direction_meets_deadlines(const std::vector<int>& order, const TravelMatrix& travel,
                               const ProblemInstance& instance) {
    double t = 0.0;
    for (std::size_t k = 1; k < order.size(); ++k) {
        t += travel.at(order[k - 1], order[k]);
        const int node = order[k];
        if (node == 0) continue;
        const auto& d = instance.deliveries[static_cast<std::size_t>(node - 1)];
        if (d.tp_deadline && t > *d.tp_deadline + kEqualityTolerance) return false;
    }
    return true;
}

}  // namespace

ComparisonReport compare_solution(const PlanSolution& solution, const ProblemInstance& instance) {
    const TravelMatrix travel = build_travel_matrix(instance);
    ComparisonReport report;
    for (const auto& route : solution.routes) {
        RouteComparison cmp;
        cmp.truck_id = route.truck_id;

        std::vector<int> nodes{0};
        for (const auto& v : route.visits) {
            if (v.delivery_id >= 0) nodes.push_back(v.location_id);
        }
        for (std::size_t k = 1; k < route.visits.size(); ++k) {
            cmp.route_distance +=
                travel.at(route.visits[k - 1].location_id, route.visits[k].location_id);
        }

        if (nodes.size() < 2) {
            report.routes.push_back(cmp);
            continue;
        }
        TourResult tour = static_cast<int>(nodes.size()) <= kHeldKarpLimit
                              ? tsp_exact(nodes, travel, 0)
                              : tsp_2opt(nodes, travel, 0, 0);
        cmp.tsp_length = tour.length;
        cmp.method = tour.method;
        if (tour.method == TourMethod::TwoOpt) report.any_heuristic = true;
        if (cmp.tsp_length > kEqualityTolerance) {
            cmp.deviation_pct = (cmp.route_distance - cmp.tsp_length) / cmp.tsp_length * 100.0;
        }

        std::vector<int> reversed(tour.order.rbegin(), tour.order.rend());
        cmp.tsp_violates_deadline =
            !direction_meets_deadlines(tour.order, travel, instance) &&
            !direction_meets_deadlines(reversed, travel, instance);

        report.routes.push_back(cmp);
    }
    for (const auto& r : report.routes) {
        report.total_route_distance += r.route_distance;
        report.total_tsp_length += r.tsp_length;
    }
    if (report.total_tsp_length > kEqualityTolerance) {
        report.deviation_pct = (report.total_route_distance - report.total_tsp_length) /
                               report.total_tsp_length * 100.0;
    }
    return report;
}

}  // namespace pdp

#include "pdp/srp.hpp"

#include <algorithm>
#include <string>

namespace pdp {

double SrpSpec::slot_weight(int slot) const {
    if (slot == 0) return 0.0;
    if (slot == 1) return destination_delivery ? destination_delivery->weight : 0.0;
    return candidates[static_cast<std::size_t>(slot - 2)].weight;
}

double SrpSpec::slot_dimension(int slot) const {
    if (slot == 0) return 0.0;
    if (slot == 1) return destination_delivery ? destination_delivery->dimension : 0.0;
    return candidates[static_cast<std::size_t>(slot - 2)].dimension;
}

int SrpSpec::slot_location(int slot) const {
    if (slot == 0) return origin_location;
    if (slot == 1) return destination_location;
    return candidates[static_cast<std::size_t>(slot - 2)].location.id;
}

int SrpSpec::slot_delivery_id(int slot) const {
    if (slot == 0) return -1;
    if (slot == 1) return destination_delivery ? destination_delivery->id : -1;
    return candidates[static_cast<std::size_t>(slot - 2)].id;
}

void SrpSpec::require_valid() const {
    if (max_duration <= 0.0) throw SpecInvalid("max_duration must be positive");
    // zero capacity is legal: a fully loaded truck can still run straight home
    if (max_weight < 0.0) throw SpecInvalid("max_weight must not be negative");
    if (max_dimension < 0.0) throw SpecInvalid("max_dimension must not be negative");
    const std::size_t slots = static_cast<std::size_t>(slot_count()) + 1;
    if (travel.size() != slots) {
        throw SpecInvalid("travel matrix is " + std::to_string(travel.size()) +
                          "x, expected " + std::to_string(slots) + "x");
    }
}

SrpModel build_srp_model(const SrpSpec& spec, ConstraintForm form) {
    spec.require_valid();
    const int m = spec.slot_count();
    SrpEncoding enc{m};
    CqmModel model(enc.variables());

    // o1: leg distances between consecutive positions
    for (int p = 0; p < m; ++p) {
        for (int i = 0; i <= m; ++i) {
            for (int j = 0; j <= m; ++j) {
                if (i == j) continue;
                const double d = spec.travel.at(i, j);
                if (d != 0.0) {
                    model.add_quadratic(enc.var_index(i, p), enc.var_index(j, p + 1),
                                        spec.distance_weight * d);
                }
            }
        }
    }
    // o2: the later the destination, the lower the objective
    for (int p = 0; p <= m; ++p) {
        model.add_linear(enc.var_index(1, p),
                         spec.coverage_weight * destination_position_objective(p, m));
    }

    for (int i = 0; i <= m; ++i) {
        Constraint c;
        c.label = "delivery-consistency[" + std::to_string(i) + "]";
        for (int p = 0; p <= m; ++p) c.linear.push_back({enc.var_index(i, p), 1.0});
        c.sense = Sense::LE;
        c.rhs = 1.0;
        model.add_constraint(std::move(c));
    }
    for (int p = 0; p <= m; ++p) {
        Constraint c;
        c.label = "location-consistency[" + std::to_string(p) + "]";
        for (int i = 0; i <= m; ++i) c.linear.push_back({enc.var_index(i, p), 1.0});
        c.sense = Sense::LE;
        c.rhs = 1.0;
        model.add_constraint(std::move(c));
    }
    for (int p = 0; p < m; ++p) {
        Constraint c;
        c.label = "delivery-consecutiveness[" + std::to_string(p) + "]";
        for (int i = 0; i <= m; ++i) {
            c.linear.push_back({enc.var_index(i, p), 1.0});
            c.linear.push_back({enc.var_index(i, p + 1), -1.0});
        }
        c.sense = Sense::GE;
        c.rhs = 0.0;
        model.add_constraint(std::move(c));
    }
    {
        Constraint c;
        c.label = "destination-inclusion";
        for (int p = 0; p <= m; ++p) c.linear.push_back({enc.var_index(1, p), 1.0});
        c.sense = Sense::EQ;
        c.rhs = 1.0;
        model.add_constraint(std::move(c));
    }

    auto leg_terms = [&](int p) {
        std::vector<QuadTerm> terms;
        for (int i = 0; i <= m; ++i) {
            for (int j = 0; j <= m; ++j) {
                if (i == j) continue;
                const double d = spec.travel.at(i, j);
                if (d != 0.0) {
                    terms.push_back({enc.var_index(i, p), enc.var_index(j, p + 1), d});
                }
            }
        }
        return terms;
    };

    if (form == ConstraintForm::Aggregate) {
        Constraint time;
        time.label = "time-restriction";
        for (int p = 0; p < m; ++p) {
            auto terms = leg_terms(p);
            time.quadratic.insert(time.quadratic.end(), terms.begin(), terms.end());
        }
        time.sense = Sense::LE;
        time.rhs = spec.max_duration;
        model.add_constraint(std::move(time));

        Constraint weight;
        weight.label = "weight-restriction";
        for (int i = 0; i <= m; ++i) {
            const double w = spec.slot_weight(i);
            if (w == 0.0) continue;
            for (int p = 0; p <= m; ++p) weight.linear.push_back({enc.var_index(i, p), w});
        }
        weight.sense = Sense::LE;
        weight.rhs = spec.max_weight;
        model.add_constraint(std::move(weight));

        Constraint dim;
        dim.label = "dimension-restriction";
        for (int i = 0; i <= m; ++i) {
            const double d = spec.slot_dimension(i);
            if (d == 0.0) continue;
            for (int p = 0; p <= m; ++p) dim.linear.push_back({enc.var_index(i, p), d});
        }
        dim.sense = Sense::LE;
        dim.rhs = spec.max_dimension;
        model.add_constraint(std::move(dim));
    } else {
        // Literal reading: one duration bound per leg position and one load
        // bound per delivery. Kept for comparison; the aggregate form is the
        // one that actually enforces the route-level limits.
        for (int p = 0; p < m; ++p) {
            Constraint c;
            c.label = "time-restriction[" + std::to_string(p) + "]";
            c.quadratic = leg_terms(p);
            c.sense = Sense::LE;
            c.rhs = spec.max_duration;
            model.add_constraint(std::move(c));
        }
        for (int i = 0; i <= m; ++i) {
            Constraint c;
            c.label = "weight-restriction[" + std::to_string(i) + "]";
            const double w = spec.slot_weight(i);
            if (w != 0.0) {
                for (int p = 0; p <= m; ++p) c.linear.push_back({enc.var_index(i, p), w});
            }
            c.sense = Sense::LE;
            c.rhs = spec.max_weight;
            model.add_constraint(std::move(c));
        }
        for (int i = 0; i <= m; ++i) {
            Constraint c;
            c.label = "dimension-restriction[" + std::to_string(i) + "]";
            const double d = spec.slot_dimension(i);
            if (d != 0.0) {
                for (int p = 0; p <= m; ++p) c.linear.push_back({enc.var_index(i, p), d});
            }
            c.sense = Sense::LE;
            c.rhs = spec.max_dimension;
            model.add_constraint(std::move(c));
        }
    }

    // The route starts at the origin: x(0,0)=1, and the origin slot and the
    // first position cannot be used by anything else.
    model.fix_variable(enc.var_index(0, 0), 1);
    for (int p = 1; p <= m; ++p) model.fix_variable(enc.var_index(0, p), 0);
    for (int i = 1; i <= m; ++i) model.fix_variable(enc.var_index(i, 0), 0);

    return {std::move(model), enc};
}

double route_distance(const std::vector<int>& visit_slots, const TravelMatrix& travel) {
    double total = 0.0;
    for (std::size_t k = 1; k < visit_slots.size(); ++k) {
        total += travel.at(visit_slots[k - 1], visit_slots[k]);
    }
    return total;
}

double destination_position_objective(int position, int slot_count) {
    (void)slot_count;  // the printed sums collapse to a value independent of M
    return -1.0 - (position + 1.0);
}

double scalar_objective(const SrpSpec& spec, const SrpRoute& route) {
    return spec.distance_weight * route.distance_objective +
           spec.coverage_weight * route.position_objective;
}

SrpRoute route_from_candidates(const SrpSpec& spec, const std::vector<int>& candidate_slots) {
    SrpRoute route;
    route.visit_slots.reserve(candidate_slots.size() + 2);
    route.visit_slots.push_back(0);
    for (int slot : candidate_slots) route.visit_slots.push_back(slot);
    route.visit_slots.push_back(1);

    route.leg_durations.reserve(route.visit_slots.size() - 1);
    for (std::size_t k = 1; k < route.visit_slots.size(); ++k) {
        const double leg = spec.travel.at(route.visit_slots[k - 1], route.visit_slots[k]);
        route.leg_durations.push_back(leg);
        route.total_duration += leg;
    }
    for (std::size_t k = 1; k < route.visit_slots.size(); ++k) {
        const int slot = route.visit_slots[k];
        route.total_weight += spec.slot_weight(slot);
        route.total_dimension += spec.slot_dimension(slot);
        const int id = spec.slot_delivery_id(slot);
        if (id >= 0) route.served_delivery_ids.push_back(id);
    }
    route.destination_position = static_cast<int>(route.visit_slots.size()) - 1;
    route.distance_objective = route.total_duration;
    route.position_objective =
        destination_position_objective(route.destination_position, spec.slot_count());
    return route;
}

bool route_within_bounds(const SrpSpec& spec, const SrpRoute& route) {
    return route.total_duration <= spec.max_duration + kEqualityTolerance &&
           route.total_weight <= spec.max_weight + kEqualityTolerance &&
           route.total_dimension <= spec.max_dimension + kEqualityTolerance;
}

Assignment encode_route(const SrpEncoding& encoding, const SrpRoute& route) {
    Assignment a(static_cast<std::size_t>(encoding.variables()), 0);
    for (std::size_t p = 0; p < route.visit_slots.size(); ++p) {
        a[static_cast<std::size_t>(
            encoding.var_index(route.visit_slots[p], static_cast<int>(p)))] = 1;
    }
    return a;
}

SrpRoute decode_assignment(const SrpEncoding& encoding, const Assignment& a, const SrpSpec& spec) {
    const int m = encoding.slot_count;
    if (static_cast<int>(a.size()) != encoding.variables()) {
        throw LengthMismatch("assignment size does not match the encoding");
    }

    std::vector<int> slot_at(static_cast<std::size_t>(m) + 1, -1);
    std::vector<int> uses(static_cast<std::size_t>(m) + 1, 0);
    for (int i = 0; i <= m; ++i) {
        for (int p = 0; p <= m; ++p) {
            if (!a[static_cast<std::size_t>(encoding.var_index(i, p))]) continue;
            if (slot_at[static_cast<std::size_t>(p)] != -1) {
                throw InfeasibleAssignment("two deliveries share position " + std::to_string(p));
            }
            slot_at[static_cast<std::size_t>(p)] = i;
            if (++uses[static_cast<std::size_t>(i)] > 1) {
                throw InfeasibleAssignment("delivery slot " + std::to_string(i) +
                                           " appears more than once");
            }
        }
    }
    if (slot_at[0] != 0) {
        throw InfeasibleAssignment("route does not start at the origin");
    }
    if (uses[1] != 1) {
        throw InfeasibleAssignment("destination must appear exactly once");
    }

    int last_occupied = 0;
    for (int p = 0; p <= m; ++p) {
        if (slot_at[static_cast<std::size_t>(p)] != -1) last_occupied = p;
    }
    for (int p = 0; p <= last_occupied; ++p) {
        if (slot_at[static_cast<std::size_t>(p)] == -1) {
            throw InfeasibleAssignment("occupied positions are not a prefix");
        }
    }
    if (slot_at[static_cast<std::size_t>(last_occupied)] != 1) {
        throw DestinationNotLast("destination is not the last visited position");
    }

    std::vector<int> candidate_slots;
    candidate_slots.reserve(static_cast<std::size_t>(last_occupied));
    for (int p = 1; p < last_occupied; ++p) {
        candidate_slots.push_back(slot_at[static_cast<std::size_t>(p)]);
    }
    return route_from_candidates(spec, candidate_slots);
}

}  // namespace pdp

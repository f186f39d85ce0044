#pragma once

#include <optional>
#include <vector>

#include "pdp/cqm.hpp"
#include "pdp/model.hpp"

namespace pdp {

// One (sub-)route request. Slot indices are local to the request:
// slot 0 is the origin, slot 1 the destination, slots 2..M the candidate
// deliveries. M = candidates + 1. The travel matrix is indexed by slot.
struct SrpSpec {
    int origin_location = 0;
    int destination_location = 0;
    std::vector<Delivery> candidates;
    // Present when the destination is itself a delivery (a top-priority drop);
    // absent when the route closes at the depot (zero weight/dimension).
    std::optional<Delivery> destination_delivery;
    double max_duration = 0.0;   // upper bound on the (sub-)route duration
    double max_weight = 0.0;     // usable truck weight
    double max_dimension = 0.0;  // usable truck dimension
    double distance_weight = 1.0;
    double coverage_weight = 2.0;  // reward per delivery served before the destination
    TravelMatrix travel;           // (M+1)x(M+1), slot-indexed

    int slot_count() const { return static_cast<int>(candidates.size()) + 1; }

    double slot_weight(int slot) const;
    double slot_dimension(int slot) const;
    // instance location id behind a slot
    int slot_location(int slot) const;
    // instance delivery id behind a slot, or -1 for a depot slot
    int slot_delivery_id(int slot) const;

    void require_valid() const;  // throws SpecInvalid
};

// slot/position -> variable index bijection over the (M+1)^2 grid
struct SrpEncoding {
    int slot_count = 0;  // M

    int variables() const { return (slot_count + 1) * (slot_count + 1); }
    int var_index(int slot, int position) const { return slot * (slot_count + 1) + position; }
};

struct SrpRoute {
    std::vector<int> visit_slots;          // starts with 0, ends with 1
    std::vector<int> served_delivery_ids;  // instance ids, destination included when a delivery
    std::vector<double> leg_durations;
    double total_duration = 0.0;  // equals total distance
    double total_weight = 0.0;
    double total_dimension = 0.0;
    double distance_objective = 0.0;  // o1
    double position_objective = 0.0;  // o2
    int destination_position = 0;

    int deliveries_served() const { return static_cast<int>(served_delivery_ids.size()); }
};

enum class ConstraintForm {
    Aggregate,  // one total-duration / total-weight / total-dimension constraint each
    Literal,    // per-position duration and per-delivery load bounds, as a weaker variant
};

struct SrpModel {
    CqmModel model;
    SrpEncoding encoding;
};

SrpModel build_srp_model(const SrpSpec& spec, ConstraintForm form = ConstraintForm::Aggregate);

// o1: total travel over consecutive visits
double route_distance(const std::vector<int>& visit_slots, const TravelMatrix& travel);

// o2 for a destination placed at `position` on a route with M slots.
// Closed form of the position objective: -1 - (position + 1).
double destination_position_objective(int position, int slot_count);

double scalar_objective(const SrpSpec& spec, const SrpRoute& route);

// Builds the route for an ordered pick of candidate slots; the destination is
// appended implicitly. Does not check the rt/W/D bounds.
SrpRoute route_from_candidates(const SrpSpec& spec, const std::vector<int>& candidate_slots);

bool route_within_bounds(const SrpSpec& spec, const SrpRoute& route);

Assignment encode_route(const SrpEncoding& encoding, const SrpRoute& route);

SrpRoute decode_assignment(const SrpEncoding& encoding, const Assignment& a, const SrpSpec& spec);

}  // namespace pdp

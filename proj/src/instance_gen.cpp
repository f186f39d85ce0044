#include "pdp/instance_gen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pdp/rng.hpp"

namespace pdp {

std::vector<InstanceProfile> named_profiles() {
    std::vector<InstanceProfile> profiles;
    auto make = [](const std::string& name, int deliveries, int tps, int owned, int rentals,
                   double day, int dup_pairs, uint64_t seed) {
        InstanceProfile p;
        p.name = name;
        p.deliveries = deliveries;
        p.tp_count = tps;
        p.owned = owned;
        p.rentals = rentals;
        p.working_day = day;
        p.duplicate_customer_pairs = dup_pairs;
        p.seed = seed;
        return p;
    };
    profiles.push_back(make("D14_P1", 14, 1, 2, 3, 480.0, 0, 101));
    profiles.push_back(make("D16_P1", 16, 1, 0, 4, 90.0, 1, 102));
    profiles.push_back(make("D14_P2", 14, 2, 2, 3, 480.0, 1, 103));
    profiles.push_back(make("D21_P2", 21, 2, 3, 2, 480.0, 0, 104));
    profiles.push_back(make("D21_P0", 21, 0, 2, 2, 480.0, 0, 105));
    profiles.push_back(make("D29_P0", 29, 0, 0, 4, 480.0, 0, 106));
    return profiles;
}

InstanceProfile profile_by_name(const std::string& name) {
    for (const auto& p : named_profiles()) {
        if (p.name == name) return p;
    }
    throw ProfileInvalid("unknown profile \"" + name + "\"");
}

namespace {

double dist(const Location& a, const Location& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

void require_profile(const InstanceProfile& p) {
    if (p.deliveries < 1) throw ProfileInvalid("profile needs at least one delivery");
    if (p.tp_count < 0 || p.tp_count > p.deliveries) {
        throw ProfileInvalid("tp_count must be between 0 and the delivery count");
    }
    if (p.owned + p.rentals < 1) throw ProfileInvalid("profile needs at least one truck");
    if (p.working_day <= 0.0) throw ProfileInvalid("working_day must be positive");
    if (p.coord_max <= p.coord_min) throw ProfileInvalid("coordinate bounds are empty");
    if (p.weight_max < p.weight_min || p.weight_min <= 0.0) {
        throw ProfileInvalid("weight range is invalid");
    }
    if (p.dimension_max < p.dimension_min || p.dimension_min <= 0.0) {
        throw ProfileInvalid("dimension range is invalid");
    }
    if (p.duplicate_customer_pairs * 2 > p.deliveries) {
        throw ProfileInvalid("too many duplicate-customer pairs");
    }
}

}  // namespace

namespace {

ProblemInstance generate_attempt(const InstanceProfile& profile, uint64_t salt, bool& ok);

}  // namespace

ProblemInstance generate_instance(const InstanceProfile& profile) {
    require_profile(profile);
    // A draw is rejected when a priority stop lands exactly on a depot-to-stop
    // segment, which would void the tight-deadline guarantee. Practically this
    // never loops more than once.
    for (uint64_t salt = 0;; ++salt) {
        bool ok = true;
        ProblemInstance inst = generate_attempt(profile, salt, ok);
        if (ok) return inst;
    }
}

namespace {

ProblemInstance generate_attempt(const InstanceProfile& profile, uint64_t salt, bool& ok) {
    Rng rng(salt == 0 ? profile.seed : mix_seed(profile.seed, salt));

    ProblemInstance inst;
    const double span = profile.coord_max - profile.coord_min;
    const double cx = profile.coord_min + span / 2.0;
    inst.depot = {0, cx, cx};
    inst.working_day = profile.working_day;

    // Deliveries; a small keep-out disc around the depot avoids degenerate legs.
    const double keep_out = 0.05 * span;
    for (int id = 1; id <= profile.deliveries; ++id) {
        Delivery d;
        d.id = id;
        do {
            d.location = {id, rng.uniform(profile.coord_min, profile.coord_max),
                          rng.uniform(profile.coord_min, profile.coord_max)};
        } while (dist(d.location, inst.depot) < keep_out);
        d.weight = rng.uniform(profile.weight_min, profile.weight_max);
        d.dimension = rng.uniform(profile.dimension_min, profile.dimension_max);
        d.customer_id = id;
        inst.deliveries.push_back(d);
    }

    // Duplicate-customer orders: the second order of the pair moves next to the
    // first and takes over its customer id.
    for (int pair = 0; pair < profile.duplicate_customer_pairs; ++pair) {
        auto& a = inst.deliveries[static_cast<std::size_t>(2 * pair)];
        auto& b = inst.deliveries[static_cast<std::size_t>(2 * pair + 1)];
        b.customer_id = a.customer_id;
        do {
            b.location.x = std::clamp(a.location.x + rng.uniform(-0.04, 0.04) * span,
                                      profile.coord_min, profile.coord_max);
            b.location.y = std::clamp(a.location.y + rng.uniform(-0.04, 0.04) * span,
                                      profile.coord_min, profile.coord_max);
        } while (dist(b.location, inst.depot) < keep_out);
    }

    // Top-priority picks come from the outer half of the depot distances so a
    // deadline is a real constraint rather than a footnote.
    if (profile.tp_count > 0) {
        std::vector<int> by_distance(static_cast<std::size_t>(profile.deliveries));
        std::iota(by_distance.begin(), by_distance.end(), 1);
        std::sort(by_distance.begin(), by_distance.end(), [&](int lhs, int rhs) {
            const double dl = dist(inst.deliveries[static_cast<std::size_t>(lhs - 1)].location,
                                   inst.depot);
            const double dr = dist(inst.deliveries[static_cast<std::size_t>(rhs - 1)].location,
                                   inst.depot);
            if (dl != dr) return dl > dr;
            return lhs < rhs;
        });
        const int pool = std::max(profile.tp_count, profile.deliveries / 2);
        std::vector<int> tp_ids;
        while (static_cast<int>(tp_ids.size()) < profile.tp_count) {
            const int pick = by_distance[static_cast<std::size_t>(rng.uniform_int(0, pool - 1))];
            if (std::find(tp_ids.begin(), tp_ids.end(), pick) == tp_ids.end()) {
                tp_ids.push_back(pick);
            }
        }
        std::sort(tp_ids.begin(), tp_ids.end());

        // Deadline = direct travel + half the cheapest detour through any other
        // stop. No route can squeeze a stop in before the priority drop, and two
        // priority drops can never share a route.
        for (int tp_id : tp_ids) {
            const auto& tp_loc = inst.deliveries[static_cast<std::size_t>(tp_id - 1)].location;
            const double direct = dist(inst.depot, tp_loc);
            double min_detour = 2.0 * span;  // upper bound to start from
            for (const auto& other : inst.deliveries) {
                if (other.id == tp_id) continue;
                const double via =
                    dist(inst.depot, other.location) + dist(other.location, tp_loc);
                min_detour = std::min(min_detour, via - direct);
            }
            if (min_detour <= 1e-9) {
                ok = false;  // collinear draw; reject and salt the seed
                return inst;
            }
            inst.deliveries[static_cast<std::size_t>(tp_id - 1)].tp_deadline =
                direct + 0.5 * min_detour;
        }
    }

    // Fleet: capacities are shares of the total demand, sized so the whole
    // fleet comfortably covers the instance while single trucks cannot.
    double total_weight = 0.0, total_dimension = 0.0;
    for (const auto& d : inst.deliveries) {
        total_weight += d.weight;
        total_dimension += d.dimension;
    }
    const int truck_count = profile.owned + profile.rentals;
    const double share_lo = std::max(0.26, 1.40 / truck_count - 0.05);
    for (int i = 0; i < truck_count; ++i) {
        Truck t;
        t.id = i + 1;
        t.ownership = i < profile.owned ? Ownership::Owned : Ownership::Rental;
        t.max_weight = rng.uniform(share_lo, share_lo + 0.10) * total_weight;
        t.max_dimension = rng.uniform(0.38, 0.52) * total_dimension;
        t.rental_cost = t.ownership == Ownership::Rental ? rng.uniform(20.0, 60.0) : 0.0;
        inst.fleet.push_back(t);
    }

    return inst;
}

}  // namespace

}  // namespace pdp

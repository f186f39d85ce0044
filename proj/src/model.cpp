#include "pdp/model.hpp"

#include <cmath>
#include <set>
#include <sstream>

namespace pdp {

const char* issue_code_name(IssueCode code) {
    switch (code) {
        case IssueCode::BadWorkingDay: return "BadWorkingDay";
        case IssueCode::BadLocationId: return "BadLocationId";
        case IssueCode::DuplicateDeliveryId: return "DuplicateDeliveryId";
        case IssueCode::NonDenseDeliveryIds: return "NonDenseDeliveryIds";
        case IssueCode::BadWeight: return "BadWeight";
        case IssueCode::BadDimension: return "BadDimension";
        case IssueCode::BadDeadline: return "BadDeadline";
        case IssueCode::BadCustomerId: return "BadCustomerId";
        case IssueCode::BadTruck: return "BadTruck";
        case IssueCode::RentalCostOnOwned: return "RentalCostOnOwned";
        case IssueCode::UnservableDelivery: return "UnservableDelivery";
        case IssueCode::UnreachableDeadline: return "UnreachableDeadline";
        case IssueCode::BadTravelMatrix: return "BadTravelMatrix";
        case IssueCode::EmptyFleet: return "EmptyFleet";
    }
    return "Unknown";
}

namespace {

double euclidean(const Location& a, const Location& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return std::sqrt(dx * dx + dy * dy);
}

void check_explicit_matrix(const TravelMatrix& m, std::size_t expected) {
    if (m.size() != expected) {
        std::ostringstream os;
        os << "travel matrix is " << m.size() << "x" << m.size() << ", expected " << expected
           << "x" << expected;
        throw InvalidMatrix(os.str());
    }
    const int n = static_cast<int>(m.size());
    for (int i = 0; i < n; ++i) {
        if (m.at(i, i) != 0.0) {
            throw InvalidMatrix("travel matrix has nonzero diagonal at " + std::to_string(i));
        }
        for (int j = 0; j < n; ++j) {
            if (m.at(i, j) < 0.0) {
                throw NegativeEntry("travel matrix entry (" + std::to_string(i) + "," +
                                    std::to_string(j) + ") is negative");
            }
            if (m.at(i, j) != m.at(j, i)) {
                throw AsymmetricMatrix("travel matrix entries (" + std::to_string(i) + "," +
                                       std::to_string(j) + ") and transpose differ");
            }
        }
    }
}

}  // namespace

TravelMatrix build_travel_matrix(const ProblemInstance& instance) {
    const std::size_t n = instance.deliveries.size() + 1;
    if (instance.travel) {
        check_explicit_matrix(*instance.travel, n);
        return *instance.travel;
    }
    std::vector<Location> locs(n);
    locs[0] = instance.depot;
    for (const auto& d : instance.deliveries) {
        if (d.id < 1 || static_cast<std::size_t>(d.id) >= n) {
            throw InvalidMatrix("delivery ids must be dense 1..M to derive a travel matrix");
        }
        locs[static_cast<std::size_t>(d.id)] = d.location;
    }
    TravelMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = euclidean(locs[i], locs[j]);
            m.set(static_cast<int>(i), static_cast<int>(j), v);
            m.set(static_cast<int>(j), static_cast<int>(i), v);
        }
    }
    return m;
}

std::vector<Issue> validate_instance(const ProblemInstance& instance) {
    std::vector<Issue> issues;
    auto add = [&issues](IssueCode code, const std::string& detail) {
        issues.push_back({code, detail});
    };

    if (instance.working_day <= 0.0) {
        add(IssueCode::BadWorkingDay, "working_day must be positive");
    }
    if (instance.depot.id != 0) {
        add(IssueCode::BadLocationId, "depot must have id 0");
    }
    if (instance.fleet.empty()) {
        add(IssueCode::EmptyFleet, "instance has no trucks");
    }

    std::set<int> ids;
    for (const auto& d : instance.deliveries) {
        if (d.id < 1) {
            add(IssueCode::BadLocationId, "delivery id " + std::to_string(d.id) + " must be >= 1");
        }
        if (!ids.insert(d.id).second) {
            add(IssueCode::DuplicateDeliveryId, "delivery id " + std::to_string(d.id) + " repeats");
        }
        if (d.location.id != d.id) {
            add(IssueCode::BadLocationId,
                "delivery " + std::to_string(d.id) + " location id mismatch");
        }
        if (d.weight <= 0.0) {
            add(IssueCode::BadWeight, "delivery " + std::to_string(d.id) + " weight must be > 0");
        }
        if (d.dimension <= 0.0) {
            add(IssueCode::BadDimension,
                "delivery " + std::to_string(d.id) + " dimension must be > 0");
        }
        if (d.tp_deadline) {
            if (*d.tp_deadline <= 0.0) {
                add(IssueCode::BadDeadline,
                    "delivery " + std::to_string(d.id) + " deadline must be > 0");
            } else if (*d.tp_deadline > instance.working_day) {
                add(IssueCode::BadDeadline, "delivery " + std::to_string(d.id) +
                                                " deadline exceeds the working day");
            }
        }
    }
    // dense 1..M
    if (!instance.deliveries.empty()) {
        const int m = static_cast<int>(instance.deliveries.size());
        for (int want = 1; want <= m; ++want) {
            if (!ids.count(want)) {
                add(IssueCode::NonDenseDeliveryIds,
                    "delivery ids are not dense 1..M (missing " + std::to_string(want) + ")");
                break;
            }
        }
    }

    for (const auto& t : instance.fleet) {
        if (t.max_weight <= 0.0 || t.max_dimension <= 0.0) {
            add(IssueCode::BadTruck, "truck " + std::to_string(t.id) + " capacities must be > 0");
        }
        if (t.rental_cost < 0.0) {
            add(IssueCode::BadTruck,
                "truck " + std::to_string(t.id) + " rental cost must be >= 0");
        }
        if (t.ownership == Ownership::Owned && t.rental_cost != 0.0) {
            add(IssueCode::RentalCostOnOwned,
                "owned truck " + std::to_string(t.id) + " has nonzero rental cost");
        }
    }

    for (const auto& d : instance.deliveries) {
        bool fits = instance.fleet.empty();
        for (const auto& t : instance.fleet) {
            if (d.weight <= t.max_weight && d.dimension <= t.max_dimension) {
                fits = true;
                break;
            }
        }
        if (!fits) {
            add(IssueCode::UnservableDelivery,
                "delivery " + std::to_string(d.id) + " fits no truck");
        }
    }

    // The deadline check needs the travel matrix; skip it if one cannot be built.
    TravelMatrix travel;
    try {
        travel = build_travel_matrix(instance);
    } catch (const Error& e) {
        add(IssueCode::BadTravelMatrix, e.what());
        return issues;
    }

    for (const auto& d : instance.deliveries) {
        if (d.tp_deadline && d.id >= 1 && static_cast<std::size_t>(d.id) < travel.size() &&
            travel.at(0, d.id) > *d.tp_deadline) {
            add(IssueCode::UnreachableDeadline,
                "delivery " + std::to_string(d.id) + " cannot be reached before its deadline");
        }
    }

    return issues;
}

}  // namespace pdp

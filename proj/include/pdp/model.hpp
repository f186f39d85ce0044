#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pdp/errors.hpp"

namespace pdp {

// Location id 0 is reserved for the depot; deliveries use ids 1..M.
struct Location {
    int id = 0;
    double x = 0.0;
    double y = 0.0;
};

struct Delivery {
    int id = 0;
    Location location;
    double weight = 0.0;     // kg
    double dimension = 0.0;  // cm^3
    std::optional<double> tp_deadline;  // latest arrival time; present iff top-priority
    int customer_id = 0;

    bool is_top_priority() const { return tp_deadline.has_value(); }
};

enum class Ownership { Owned, Rental };

struct Truck {
    int id = 0;
    Ownership ownership = Ownership::Owned;
    double max_weight = 0.0;
    double max_dimension = 0.0;
    double rental_cost = 0.0;  // 0 for owned trucks
};

// Single value per location pair, used as both distance and travel time.
class TravelMatrix {
public:
    TravelMatrix() = default;
    explicit TravelMatrix(std::size_t n) : n_(n), cells_(n * n, 0.0) {}

    std::size_t size() const { return n_; }

    double at(int i, int j) const { return cells_[static_cast<std::size_t>(i) * n_ + j]; }
    void set(int i, int j, double v) { cells_[static_cast<std::size_t>(i) * n_ + j] = v; }

    bool empty() const { return n_ == 0; }

private:
    std::size_t n_ = 0;
    std::vector<double> cells_;
};

struct ProblemInstance {
    Location depot;                    // id 0
    std::vector<Delivery> deliveries;  // ids 1..M, dense
    std::vector<Truck> fleet;
    double working_day = 0.0;
    std::optional<TravelMatrix> travel;  // explicit override; Euclidean otherwise
};

enum class IssueCode {
    BadWorkingDay,
    BadLocationId,
    DuplicateDeliveryId,
    NonDenseDeliveryIds,
    BadWeight,
    BadDimension,
    BadDeadline,
    BadCustomerId,
    BadTruck,
    RentalCostOnOwned,
    UnservableDelivery,
    UnreachableDeadline,
    BadTravelMatrix,
    EmptyFleet,
};

struct Issue {
    IssueCode code;
    std::string detail;
};

const char* issue_code_name(IssueCode code);

// Explicit matrix returned verbatim (validated); otherwise Euclidean distances.
TravelMatrix build_travel_matrix(const ProblemInstance& instance);

// Returns every violated invariant; empty list means the instance is usable.
std::vector<Issue> validate_instance(const ProblemInstance& instance);

}  // namespace pdp

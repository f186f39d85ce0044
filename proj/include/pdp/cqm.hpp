#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pdp/errors.hpp"

namespace pdp {

enum class Sense { LE, EQ, GE };

struct LinearTerm {
    int var;
    double coeff;
};

// var pair is kept ordered (a < b); the two variables are always distinct.
struct QuadTerm {
    int a;
    int b;
    double coeff;
};

struct Constraint {
    std::string label;
    std::vector<LinearTerm> linear;
    std::vector<QuadTerm> quadratic;
    Sense sense = Sense::LE;
    double rhs = 0.0;
    double lhs_offset = 0.0;  // constant folded in by variable fixing

    double lhs_value(const std::vector<uint8_t>& a) const;
    bool satisfied(double lhs) const;
    // LE: max(0, lhs-rhs), EQ: |lhs-rhs|, GE: max(0, rhs-lhs)
    double violation(double lhs) const;
};

using Assignment = std::vector<uint8_t>;

struct ConstraintReport {
    std::string label;
    double lhs = 0.0;
    bool satisfied = false;
};

// Quadratic objective + linear/quadratic constraints over binary variables.
// Models are built once and treated as immutable afterwards; evaluation is pure.
class CqmModel {
public:
    CqmModel() = default;
    explicit CqmModel(int num_variables);

    int num_variables() const { return num_variables_; }

    void add_linear(int var, double coeff);
    void add_quadratic(int a, int b, double coeff);
    void add_offset(double delta) { offset_ += delta; }
    void add_constraint(Constraint c);

    // Records var=value and removes the variable from objective and
    // constraints, folding its contribution into offsets and rhs.
    void fix_variable(int var, int value);

    const std::map<int, int>& fixed() const { return fixed_; }
    const std::vector<Constraint>& constraints() const { return constraints_; }
    const std::vector<double>& linear() const { return linear_; }
    const std::map<std::pair<int, int>, double>& quadratic() const { return quadratic_; }
    double offset() const { return offset_; }

    bool respects_fixes(const Assignment& a) const;

    double evaluate_objective(const Assignment& a) const;
    std::vector<ConstraintReport> check_feasibility(const Assignment& a) const;
    bool all_satisfied(const Assignment& a) const;

    // objective + weight * sum of squared constraint violations
    double penalized_energy(const Assignment& a, double penalty_weight) const;

    // 10 * max|objective coefficient| * variable count; floor of 1 so a model
    // with an empty objective still penalizes violations.
    double default_penalty_weight() const;

    // plain-text inspection dump, one line per term/constraint
    void dump(std::ostream& os) const;

private:
    void require_length(const Assignment& a) const;
    void require_var(int var) const;

    int num_variables_ = 0;
    std::vector<double> linear_;
    std::map<std::pair<int, int>, double> quadratic_;
    double offset_ = 0.0;
    std::vector<Constraint> constraints_;
    std::map<int, int> fixed_;
};

inline constexpr double kEqualityTolerance = 1e-9;

}  // namespace pdp

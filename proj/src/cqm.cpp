#include "pdp/cqm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <ostream>
#include <set>

namespace pdp {

double Constraint::lhs_value(const Assignment& a) const {
    double lhs = lhs_offset;
    for (const auto& t : linear) {
        lhs += t.coeff * a[static_cast<std::size_t>(t.var)];
    }
    for (const auto& t : quadratic) {
        lhs += t.coeff * a[static_cast<std::size_t>(t.a)] * a[static_cast<std::size_t>(t.b)];
    }
    return lhs;
}

bool Constraint::satisfied(double lhs) const {
    switch (sense) {
        case Sense::LE: return lhs <= rhs + kEqualityTolerance;
        case Sense::EQ: return std::abs(lhs - rhs) <= kEqualityTolerance;
        case Sense::GE: return lhs >= rhs - kEqualityTolerance;
    }
    return false;
}

double Constraint::violation(double lhs) const {
    switch (sense) {
        case Sense::LE: return std::max(0.0, lhs - rhs);
        case Sense::EQ: return std::abs(lhs - rhs);
        case Sense::GE: return std::max(0.0, rhs - lhs);
    }
    return 0.0;
}

CqmModel::CqmModel(int num_variables)
    : num_variables_(num_variables), linear_(static_cast<std::size_t>(num_variables), 0.0) {}

void CqmModel::require_var(int var) const {
    if (var < 0 || var >= num_variables_) {
        throw Error("variable index " + std::to_string(var) + " out of range");
    }
}

void CqmModel::add_linear(int var, double coeff) {
    require_var(var);
    linear_[static_cast<std::size_t>(var)] += coeff;
}

void CqmModel::add_quadratic(int a, int b, double coeff) {
    require_var(a);
    require_var(b);
    if (a == b) {
        throw Error("quadratic term must reference two distinct variables");
    }
    if (a > b) std::swap(a, b);
    quadratic_[{a, b}] += coeff;
}

namespace {

// folds var=value into the constraint, so fixed variables never stay free
void fold_fix_into(Constraint& c, int var, int value) {
    for (auto& t : c.linear) {
        if (t.var == var) {
            c.lhs_offset += t.coeff * value;
            t.coeff = 0.0;
        }
    }
    std::erase_if(c.linear, [](const LinearTerm& t) { return t.coeff == 0.0; });
    std::vector<QuadTerm> kept;
    kept.reserve(c.quadratic.size());
    for (const auto& t : c.quadratic) {
        if (t.a == var || t.b == var) {
            const int other = (t.a == var) ? t.b : t.a;
            if (value == 1) {
                c.linear.push_back({other, t.coeff});
            }
        } else {
            kept.push_back(t);
        }
    }
    c.quadratic = std::move(kept);
}

}  // namespace

void CqmModel::add_constraint(Constraint c) {
    for (const auto& existing : constraints_) {
        if (existing.label == c.label) {
            throw Error("duplicate constraint label: " + c.label);
        }
    }
    for (const auto& t : c.linear) require_var(t.var);
    for (auto& t : c.quadratic) {
        require_var(t.a);
        require_var(t.b);
        if (t.a == t.b) {
            throw Error("quadratic term must reference two distinct variables");
        }
        if (t.a > t.b) std::swap(t.a, t.b);
    }
    for (const auto& [var, value] : fixed_) {
        fold_fix_into(c, var, value);
    }
    constraints_.push_back(std::move(c));
}

void CqmModel::fix_variable(int var, int value) {
    require_var(var);
    if (value != 0 && value != 1) {
        throw Error("fix value must be 0 or 1");
    }
    auto [it, inserted] = fixed_.emplace(var, value);
    if (!inserted) {
        if (it->second != value) {
            throw Error("variable " + std::to_string(var) + " already fixed to a different value");
        }
        return;
    }

    // objective
    offset_ += linear_[static_cast<std::size_t>(var)] * value;
    linear_[static_cast<std::size_t>(var)] = 0.0;
    for (auto it2 = quadratic_.begin(); it2 != quadratic_.end();) {
        const auto [a, b] = it2->first;
        if (a == var || b == var) {
            const int other = (a == var) ? b : a;
            if (value == 1) {
                linear_[static_cast<std::size_t>(other)] += it2->second;
            }
            it2 = quadratic_.erase(it2);
        } else {
            ++it2;
        }
    }

    // constraints
    for (auto& c : constraints_) {
        fold_fix_into(c, var, value);
    }
}

bool CqmModel::respects_fixes(const Assignment& a) const {
    for (const auto& [var, value] : fixed_) {
        if (a[static_cast<std::size_t>(var)] != value) return false;
    }
    return true;
}

void CqmModel::require_length(const Assignment& a) const {
    if (static_cast<int>(a.size()) != num_variables_) {
        throw LengthMismatch("assignment has " + std::to_string(a.size()) + " entries, model has " +
                             std::to_string(num_variables_) + " variables");
    }
}

double CqmModel::evaluate_objective(const Assignment& a) const {
    require_length(a);
    double value = offset_;
    for (int v = 0; v < num_variables_; ++v) {
        if (a[static_cast<std::size_t>(v)]) value += linear_[static_cast<std::size_t>(v)];
    }
    for (const auto& [pair, coeff] : quadratic_) {
        value += coeff * a[static_cast<std::size_t>(pair.first)] *
                 a[static_cast<std::size_t>(pair.second)];
    }
    return value;
}

std::vector<ConstraintReport> CqmModel::check_feasibility(const Assignment& a) const {
    require_length(a);
    std::vector<ConstraintReport> reports;
    reports.reserve(constraints_.size());
    for (const auto& c : constraints_) {
        const double lhs = c.lhs_value(a);
        reports.push_back({c.label, lhs, c.satisfied(lhs)});
    }
    return reports;
}

bool CqmModel::all_satisfied(const Assignment& a) const {
    require_length(a);
    for (const auto& c : constraints_) {
        if (!c.satisfied(c.lhs_value(a))) return false;
    }
    return true;
}

double CqmModel::penalized_energy(const Assignment& a, double penalty_weight) const {
    if (penalty_weight <= 0.0) {
        throw Error("penalty weight must be positive");
    }
    double energy = evaluate_objective(a);
    for (const auto& c : constraints_) {
        const double v = c.violation(c.lhs_value(a));
        energy += penalty_weight * v * v;
    }
    return energy;
}

double CqmModel::default_penalty_weight() const {
    double max_coeff = 0.0;
    for (double c : linear_) max_coeff = std::max(max_coeff, std::abs(c));
    for (const auto& [pair, coeff] : quadratic_) {
        (void)pair;
        max_coeff = std::max(max_coeff, std::abs(coeff));
    }
    return std::max(1.0, 10.0 * max_coeff * static_cast<double>(num_variables_));
}

void CqmModel::dump(std::ostream& os) const {
    os << "variables " << num_variables_ << "\n";
    os << "offset " << offset_ << "\n";
    for (int v = 0; v < num_variables_; ++v) {
        if (linear_[static_cast<std::size_t>(v)] != 0.0) {
            os << "linear x" << v << " " << linear_[static_cast<std::size_t>(v)] << "\n";
        }
    }
    for (const auto& [pair, coeff] : quadratic_) {
        os << "quad x" << pair.first << " x" << pair.second << " " << coeff << "\n";
    }
    for (const auto& [var, value] : fixed_) {
        os << "fixed x" << var << " = " << value << "\n";
    }
    for (const auto& c : constraints_) {
        os << "constraint " << c.label << ":";
        for (const auto& t : c.linear) os << " " << t.coeff << "*x" << t.var;
        for (const auto& t : c.quadratic) os << " " << t.coeff << "*x" << t.a << "*x" << t.b;
        if (c.lhs_offset != 0.0) os << " + " << c.lhs_offset;
        os << (c.sense == Sense::LE ? " <= " : c.sense == Sense::EQ ? " == " : " >= ") << c.rhs
           << "\n";
    }
}

}  // namespace pdp

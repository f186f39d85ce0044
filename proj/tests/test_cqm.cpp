#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "pdp/cqm.hpp"
#include "pdp/rng.hpp"

using namespace pdp;

TEST_CASE("empty objective evaluates to zero") {
    CqmModel model(3);
    CHECK(model.evaluate_objective({1, 0, 1}) == 0.0);
}

TEST_CASE("small quadratic objective") {
    CqmModel model(2);
    model.add_linear(0, 3.0);
    model.add_quadratic(0, 1, 2.0);
    CHECK(model.evaluate_objective({1, 1}) == 5.0);
    CHECK(model.evaluate_objective({1, 0}) == 3.0);
    CHECK(model.evaluate_objective({0, 1}) == 0.0);
}

TEST_CASE("length mismatch throws") {
    CqmModel model(2);
    CHECK_THROWS_AS(model.evaluate_objective({1}), LengthMismatch);
    CHECK_THROWS_AS(model.check_feasibility({1, 0, 1}), LengthMismatch);
}

TEST_CASE("duplicate constraint labels rejected") {
    CqmModel model(2);
    model.add_constraint({"c", {{0, 1.0}}, {}, Sense::LE, 1.0, 0.0});
    CHECK_THROWS_AS(model.add_constraint({"c", {{1, 1.0}}, {}, Sense::LE, 1.0, 0.0}),
                    Error);
}

// Term lists owned by the test; the model is just one consumer of them.
namespace {

struct RandomModel {
    CqmModel model;
    std::vector<LinearTerm> linear_terms;
    std::vector<QuadTerm> quad_terms;
};

RandomModel make_random_model(Rng& rng, int max_vars) {
    const int n = rng.uniform_int(1, max_vars);
    RandomModel rm{CqmModel(n), {}, {}};
    const int linear_count = rng.uniform_int(0, 2 * n);
    for (int k = 0; k < linear_count; ++k) {
        LinearTerm t{rng.uniform_int(0, n - 1), static_cast<double>(rng.uniform_int(-9, 9))};
        rm.linear_terms.push_back(t);
        rm.model.add_linear(t.var, t.coeff);
    }
    if (n >= 2) {
        const int quad_count = rng.uniform_int(0, 2 * n);
        for (int k = 0; k < quad_count; ++k) {
            int a = rng.uniform_int(0, n - 1);
            int b = rng.uniform_int(0, n - 1);
            if (a == b) continue;
            QuadTerm t{a, b, static_cast<double>(rng.uniform_int(-9, 9))};
            rm.quad_terms.push_back(t);
            rm.model.add_quadratic(t.a, t.b, t.coeff);
        }
    }
    return rm;
}

Assignment random_assignment(Rng& rng, int n) {
    Assignment a(static_cast<std::size_t>(n));
    for (auto& bit : a) bit = static_cast<uint8_t>(rng.uniform_int(0, 1));
    return a;
}

}  // namespace

TEST_CASE("objective equals naive term-by-term summation") {
    Rng rng(42);
    for (int trial = 0; trial < 200; ++trial) {
        auto rm = make_random_model(rng, 6);
        const Assignment a = random_assignment(rng, rm.model.num_variables());
        double naive = 0.0;
        for (const auto& t : rm.linear_terms) naive += t.coeff * a[static_cast<std::size_t>(t.var)];
        for (const auto& t : rm.quad_terms) {
            naive += t.coeff * a[static_cast<std::size_t>(t.a)] * a[static_cast<std::size_t>(t.b)];
        }
        CHECK(rm.model.evaluate_objective(a) == naive);
    }
}

TEST_CASE("feasibility reports") {
    CqmModel model(2);
    model.add_constraint({"cap", {{0, 1.0}, {1, 1.0}}, {}, Sense::LE, 1.0, 0.0});

    auto sat = model.check_feasibility({1, 0});
    REQUIRE(sat.size() == 1);
    CHECK(sat[0].satisfied);
    CHECK(sat[0].lhs == 1.0);

    auto unsat = model.check_feasibility({1, 1});
    CHECK(!unsat[0].satisfied);
    CHECK(unsat[0].lhs == 2.0);
}

TEST_CASE("equality constraint with a single one") {
    // one delivery assigned to exactly one position
    CqmModel model(4);
    Constraint c;
    c.label = "assign-once";
    for (int p = 0; p < 4; ++p) c.linear.push_back({p, 1.0});
    c.sense = Sense::EQ;
    c.rhs = 1.0;
    model.add_constraint(c);
    CHECK(model.all_satisfied({0, 1, 0, 0}));
    CHECK(!model.all_satisfied({1, 1, 0, 0}));
    CHECK(!model.all_satisfied({0, 0, 0, 0}));
}

TEST_CASE("penalized energy of a feasible point is the objective") {
    CqmModel model(2);
    model.add_linear(0, 4.0);
    model.add_constraint({"c", {{0, 1.0}, {1, 1.0}}, {}, Sense::LE, 2.0, 0.0});
    const Assignment a{1, 1};
    CHECK(model.penalized_energy(a, 13.0) == model.evaluate_objective(a));
}

TEST_CASE("violated equality contributes squared violation") {
    CqmModel model(2);
    Constraint c;
    c.label = "eq";
    c.linear = {{0, 1.0}, {1, 1.0}};
    c.sense = Sense::EQ;
    c.rhs = 4.0;  // lhs can be at most 2 -> violation 2 at (1,1)
    model.add_constraint(c);
    CHECK(model.penalized_energy({1, 1}, 10.0) == 40.0);
}

TEST_CASE("penalized energy equals the direct formula on random models") {
    Rng rng(4242);
    for (int trial = 0; trial < 100; ++trial) {
        auto rm = make_random_model(rng, 6);
        const int n = rm.model.num_variables();
        // attach a couple of random constraints, keeping the term lists local
        std::vector<Constraint> constraints;
        for (int k = 0; k < rng.uniform_int(1, 3); ++k) {
            Constraint c;
            c.label = "c" + std::to_string(k);
            for (int t = 0; t < rng.uniform_int(1, n); ++t) {
                c.linear.push_back(
                    {rng.uniform_int(0, n - 1), static_cast<double>(rng.uniform_int(-5, 5))});
            }
            c.sense = static_cast<Sense>(rng.uniform_int(0, 2));
            c.rhs = rng.uniform_int(-4, 4);
            constraints.push_back(c);
            rm.model.add_constraint(c);
        }
        const Assignment a = random_assignment(rng, n);
        const double w = rng.uniform_int(1, 20);

        double expected = rm.model.evaluate_objective(a);
        for (const auto& c : constraints) {
            double lhs = 0.0;
            for (const auto& t : c.linear) lhs += t.coeff * a[static_cast<std::size_t>(t.var)];
            double v = 0.0;
            if (c.sense == Sense::LE) v = std::max(0.0, lhs - c.rhs);
            if (c.sense == Sense::EQ) v = std::abs(lhs - c.rhs);
            if (c.sense == Sense::GE) v = std::max(0.0, c.rhs - lhs);
            expected += w * v * v;
        }
        CHECK(rm.model.penalized_energy(a, w) == expected);
    }
}

TEST_CASE("fixing variables preserves evaluation on consistent assignments") {
    Rng rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        auto rm = make_random_model(rng, 6);
        const int n = rm.model.num_variables();
        Constraint c;
        c.label = "mixed";
        c.linear = {{rng.uniform_int(0, n - 1), 2.0}};
        if (n >= 2) {
            int a = 0, b = 1;
            c.quadratic = {{a, b, 3.0}};
        }
        c.sense = Sense::LE;
        c.rhs = 3.0;
        rm.model.add_constraint(c);

        CqmModel reduced = rm.model;
        const int fix_var = rng.uniform_int(0, n - 1);
        const int fix_val = rng.uniform_int(0, 1);
        reduced.fix_variable(fix_var, fix_val);

        // no constraint may still reference the fixed variable
        for (const auto& constraint : reduced.constraints()) {
            for (const auto& t : constraint.linear) CHECK(t.var != fix_var);
            for (const auto& t : constraint.quadratic) {
                CHECK(t.a != fix_var);
                CHECK(t.b != fix_var);
            }
        }

        for (int k = 0; k < 10; ++k) {
            Assignment a = random_assignment(rng, n);
            a[static_cast<std::size_t>(fix_var)] = static_cast<uint8_t>(fix_val);
            CHECK(reduced.respects_fixes(a));
            CHECK(reduced.evaluate_objective(a) == rm.model.evaluate_objective(a));
            const auto before = rm.model.check_feasibility(a);
            const auto after = reduced.check_feasibility(a);
            REQUIRE(before.size() == after.size());
            for (std::size_t i = 0; i < before.size(); ++i) {
                CHECK(before[i].lhs == after[i].lhs);
                CHECK(before[i].satisfied == after[i].satisfied);
            }
        }
    }
}

TEST_CASE("constraints added after a fix are folded the same way") {
    CqmModel upfront(3);
    Constraint c{"mix", {{0, 2.0}, {1, 1.0}}, {{1, 2, 3.0}}, Sense::LE, 4.0, 0.0};
    upfront.add_constraint(c);
    upfront.fix_variable(1, 1);

    CqmModel later(3);
    later.fix_variable(1, 1);
    later.add_constraint(c);

    for (const Assignment& a : {Assignment{0, 1, 0}, Assignment{1, 1, 1}, Assignment{0, 1, 1}}) {
        CHECK(upfront.check_feasibility(a)[0].lhs == later.check_feasibility(a)[0].lhs);
    }
    for (const auto& constraint : later.constraints()) {
        for (const auto& t : constraint.linear) CHECK(t.var != 1);
        for (const auto& t : constraint.quadratic) {
            CHECK(t.a != 1);
            CHECK(t.b != 1);
        }
    }
}

TEST_CASE("debug dump lists terms, fixes, and constraints") {
    CqmModel model(3);
    model.add_linear(0, 2.0);
    model.add_quadratic(0, 1, -1.5);
    model.add_constraint({"cap", {{1, 1.0}, {2, 1.0}}, {}, Sense::LE, 1.0, 0.0});
    model.fix_variable(2, 1);
    std::ostringstream os;
    model.dump(os);
    const std::string text = os.str();
    CHECK(text.find("variables 3") != std::string::npos);
    CHECK(text.find("constraint cap") != std::string::npos);
    CHECK(text.find("fixed x2 = 1") != std::string::npos);
}

TEST_CASE("default penalty weight dominates the objective scale") {
    CqmModel model(4);
    model.add_linear(0, -7.0);
    model.add_quadratic(1, 2, 3.0);
    CHECK(model.default_penalty_weight() == 10.0 * 7.0 * 4.0);
    CqmModel empty(3);
    CHECK(empty.default_penalty_weight() == 1.0);
}

// Acceptance gates for the planner. Each criterion prints one PASS/FAIL line;
// the binary exits nonzero if any gate fails. Gate 9 is skipped (not failed)
// when no published dataset is available locally.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "pdp/baseline.hpp"
#include "pdp/benchmark.hpp"
#include "pdp/instance_gen.hpp"
#include "pdp/json_io.hpp"
#include "pdp/svg.hpp"
#include "test_support.hpp"

using namespace pdp;

namespace {

struct GateFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GateSkipped : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Gate {
    std::string name;
    std::function<void()> body;
    std::optional<double> budget_s;  // wall-clock bound, where one is pinned
};

void require(bool cond, const std::string& what) {
    if (!cond) throw GateFailure(what);
}

// solutions produced anywhere in this suite, audited again by gate 7
std::vector<std::pair<std::string, ValidationReport>> g_audits;

PlanSolution run_profile(const std::string& name, uint64_t instance_seed_offset,
                         Backend backend, ProblemInstance* instance_out = nullptr) {
    InstanceProfile profile = profile_by_name(name);
    profile.seed += instance_seed_offset;
    const ProblemInstance instance = generate_instance(profile);
    PlannerConfig config;
    config.solver.backend = backend;
    const PlanSolution solution = run(instance, config);
    std::ostringstream label;
    label << name << "+" << instance_seed_offset << "/" << backend_name(backend);
    g_audits.emplace_back(label.str(), validate_solution(solution, instance));
    if (instance_out) *instance_out = instance;
    return solution;
}

// Exhaustive max-coverage search written for this suite: forward-sums each
// ordered candidate subset and tracks the largest feasible service count.
int exhaustive_max_coverage(const SrpSpec& spec) {
    const int m = spec.slot_count();
    int best = -1;
    std::vector<int> chosen;
    std::vector<bool> used(static_cast<std::size_t>(m) + 1, false);
    std::function<void(int, double, double, double)> walk =
        [&](int last, double travelled, double weight, double dimension) {
            const double closed = travelled + spec.travel.at(last, 1);
            const double total_w = weight + spec.slot_weight(1);
            const double total_d = dimension + spec.slot_dimension(1);
            if (closed <= spec.max_duration + kEqualityTolerance &&
                total_w <= spec.max_weight + kEqualityTolerance &&
                total_d <= spec.max_dimension + kEqualityTolerance) {
                best = std::max(best, static_cast<int>(chosen.size()));
            }
            for (int slot = 2; slot <= m; ++slot) {
                if (used[static_cast<std::size_t>(slot)]) continue;
                used[static_cast<std::size_t>(slot)] = true;
                chosen.push_back(slot);
                walk(slot, travelled + spec.travel.at(last, slot),
                     weight + spec.slot_weight(slot), dimension + spec.slot_dimension(slot));
                chosen.pop_back();
                used[static_cast<std::size_t>(slot)] = false;
            }
        };
    walk(0, 0.0, 0.0, 0.0);
    return best;
}

constexpr const char* kTpProfiles[] = {"D14_P1", "D16_P1", "D14_P2", "D21_P2"};
constexpr const char* kNoTpProfiles[] = {"D21_P0", "D29_P0"};

// -------------------------------------------------------------------------

void gate1_exact_matches_brute_force() {
    Rng rng(0xACCE01);
    int solved = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const SrpSpec spec = pdp_test::random_int_spec(rng, 5);  // M <= 6
        const auto oracle = pdp_test::brute_force_reference(spec);
        try {
            const SolveResult result = solve_exact(spec);
            require(oracle.feasible, "solver found a route the oracle missed");
            require(result.objective == oracle.objective,
                    "objective mismatch against the brute-force oracle");
            ++solved;
        } catch (const NoFeasibleRoute&) {
            require(!oracle.feasible, "solver reported infeasible, oracle disagrees");
        }
    }
    require(solved >= 100, "generator produced too few feasible specs");
}

void gate2_encoding_soundness() {
    Rng rng(0xACCE02);
    int tested = 0;
    while (tested < 500) {
        const SrpSpec spec = pdp_test::random_int_spec(rng, 6);
        std::vector<int> slots;
        for (int c = 0; c < static_cast<int>(spec.candidates.size()); ++c) {
            if (rng.uniform_int(0, 1)) slots.push_back(2 + c);
        }
        for (std::size_t k = slots.size(); k > 1; --k) {
            std::swap(slots[k - 1], slots[static_cast<std::size_t>(
                                        rng.uniform_int(0, static_cast<int>(k) - 1))]);
        }
        const SrpRoute route = route_from_candidates(spec, slots);
        if (!route_within_bounds(spec, route)) continue;
        ++tested;
        const auto built = build_srp_model(spec);
        const Assignment a = encode_route(built.encoding, route);
        require(scalar_objective(spec, route) == built.model.evaluate_objective(a),
                "route-space objective differs from the CQM evaluation");
    }
}

void gate3_validation_mirror() {
    for (const auto& profile : named_profiles()) {
        ProblemInstance instance;
        const PlanSolution solution = run_profile(profile.name, 0, Backend::Auto, &instance);
        const ValidationReport& report = g_audits.back().second;
        require(report.r1.mark == Mark::Pass, profile.name + ": R1 not Pass");
        require(report.r3.mark == Mark::Pass, profile.name + ": R3 not Pass");
        if (profile.tp_count == 0) {
            require(report.r2.mark == Mark::NotPresent,
                    profile.name + ": R2 should be NotPresent");
        } else {
            require(report.r2.mark == Mark::Pass, profile.name + ": R2 not Pass");
        }
        require(!solution.routes.empty(), profile.name + ": no routes");
    }
}

void gate4_zero_tp_route_optimality() {
    // exact-solved routes must sit exactly on the Held-Karp optimum
    int exact_checked = 0;
    for (const char* name : kNoTpProfiles) {
        ProblemInstance instance;
        const PlanSolution solution = run_profile(name, 0, Backend::Auto, &instance);
        const ComparisonReport cmp = compare_solution(solution, instance);
        for (std::size_t r = 0; r < solution.routes.size(); ++r) {
            const auto& route = solution.routes[r];
            const bool all_exact =
                std::all_of(route.subroutes.begin(), route.subroutes.end(),
                            [](const SubRoute& s) { return s.solved_by == Backend::Exact; });
            if (!all_exact || cmp.routes[r].method != TourMethod::HeldKarp) continue;
            require(std::abs(cmp.routes[r].route_distance - cmp.routes[r].tsp_length) <= 1e-9,
                    std::string(name) + ": exact-solved route misses the Held-Karp optimum");
            ++exact_checked;
        }
    }
    require(exact_checked > 0, "no exact-solved route reached the Held-Karp comparison");
    // annealed runs stay within 2% per route across 10 seeds
    for (const char* name : kNoTpProfiles) {
        for (uint64_t seed = 0; seed < 10; ++seed) {
            ProblemInstance instance;
            const PlanSolution solution =
                run_profile(name, 1000 + seed, Backend::Anneal, &instance);
            const ComparisonReport cmp = compare_solution(solution, instance);
            for (const auto& rc : cmp.routes) {
                if (rc.method != TourMethod::HeldKarp) continue;
                require(rc.deviation_pct <= 2.0 + 1e-9,
                        std::string(name) + ": annealed route deviates more than 2%");
            }
        }
    }
}

void gate5_r2_attribution() {
    int instances = 0;
    for (const char* name : kTpProfiles) {
        for (uint64_t seed_offset : {0ull, 1000ull, 2000ull, 3000ull, 4000ull}) {
            ProblemInstance instance;
            const PlanSolution solution =
                run_profile(name, seed_offset, Backend::Auto, &instance);
            const ComparisonReport cmp = compare_solution(solution, instance);
            for (const auto& rc : cmp.routes) {
                if (rc.deviation_pct > 1e-9) {
                    require(rc.tsp_violates_deadline,
                            std::string(name) + "+" + std::to_string(seed_offset) +
                                ": a route is longer than its oracle tour, yet that tour "
                                "meets every deadline");
                }
            }
            ++instances;
        }
    }
    require(instances == 20, "expected 20 seeded instances");
}

void gate6_coverage_optimality() {
    int audited = 0;
    for (const auto& profile : named_profiles()) {
        const PlanSolution solution = run_profile(profile.name, 0, Backend::Auto);
        for (const auto& route : solution.routes) {
            for (const auto& sub : route.subroutes) {
                if (sub.candidate_pool > 9 || sub.spec.travel.empty()) continue;
                const int served =
                    sub.route.deliveries_served() - (sub.spec.destination_delivery ? 1 : 0);
                const int best = exhaustive_max_coverage(sub.spec);
                require(served >= best, profile.name + ": a sub-route over a pool of " +
                                            std::to_string(sub.candidate_pool) + " serves " +
                                            std::to_string(served) + " deliveries while " +
                                            std::to_string(best) + " are possible");
                ++audited;
            }
        }
    }
    require(audited > 0, "no sub-route qualified for the coverage audit");
}

void gate7_preferences() {
    require(!g_audits.empty(), "no solutions were recorded by earlier gates");
    int p3_ok = 0;
    for (const auto& [label, report] : g_audits) {
        require(report.p1.mark == Mark::Pass, label + ": P1 violated");
        require(report.p2.mark == Mark::Pass, label + ": P2 violated");
        if (report.p3.mark == Mark::Pass) ++p3_ok;
    }
    std::printf("      (p3 audit: satisfied on %d of %zu solutions; reported, not asserted)\n",
                p3_ok, g_audits.size());
}

void gate8_determinism() {
    for (const char* name : {"D14_P1", "D29_P0"}) {
        const ProblemInstance instance = generate_instance(profile_by_name(name));
        PlannerConfig config;
        const PlanSolution a = run(instance, config);
        const PlanSolution b = run(instance, config);
        require(solution_to_json(a).dump(2) == solution_to_json(b).dump(2),
                std::string(name) + ": solution JSON differs between runs");
        require(render_svg(a, instance) == render_svg(b, instance),
                std::string(name) + ": SVG differs between runs");

        const std::vector<NamedInstance> batch{{name, instance}};
        const std::string r1 = benchmark_to_json(run_benchmark(batch, config)).dump(2);
        const std::string r2 = benchmark_to_json(run_benchmark(batch, config)).dump(2);
        require(r1 == r2, std::string(name) + ": benchmark JSON differs between runs");
    }
}

void gate9_dataset_reproduction() {
    const char* env = std::getenv("PDP_DATASET_DIR");
    const std::string dir = env ? env : "data/published";
    if (!std::filesystem::is_directory(dir)) {
        throw GateSkipped("published dataset not present at " + dir);
    }

    struct Expected {
        double total;
        std::array<int, 4> mix;
        int routes;
    };
    const std::map<std::string, Expected> expected{
        {"D14_P1", {210.43, {1, 1, 0, 1}, 2}}, {"D16_P1", {223.74, {2, 1, 0, 1}, 3}},
        {"D14_P2", {245.30, {0, 2, 0, 2}, 2}}, {"D21_P2", {309.99, {1, 2, 0, 2}, 3}},
        {"D21_P0", {381.46, {3, 0, 0, 0}, 3}}, {"D29_P0", {562.11, {4, 0, 0, 0}, 4}}};

    bool any = false;
    for (const auto& [name, want] : expected) {
        const std::string path = dir + "/" + name + ".json";
        if (!std::filesystem::exists(path)) continue;
        any = true;
        const ParsedInstance parsed =
            instance_from_json(parse_json_text(read_text_file(path), path));
        const PlanSolution solution = run(parsed.instance, PlannerConfig{});
        const ComparisonReport cmp = compare_solution(solution, parsed.instance);
        require(std::abs(cmp.total_route_distance - want.total) <= 1e-2,
                name + ": published total distance not reproduced");
        require(solution.totals.subroute_mix == want.mix,
                name + ": published sub-route mix not reproduced");
        require(static_cast<int>(solution.routes.size()) == want.routes,
                name + ": published route count not reproduced");
    }
    if (!any) throw GateSkipped("dataset directory exists but holds no expected instance");
}

void gate10_structural_counts() {
    Rng rng(0xACCE10);
    for (int m = 1; m <= 20; ++m) {
        SrpSpec spec;
        spec.origin_location = 0;
        spec.destination_location = 1;
        for (int c = 0; c < m - 1; ++c) {
            Delivery d;
            d.id = 2 + c;
            d.location = {2 + c, 0.0, 0.0};
            d.weight = 1.0 + rng.uniform_int(0, 5);
            d.dimension = 1.0 + rng.uniform_int(0, 5);
            spec.candidates.push_back(d);
        }
        TravelMatrix travel(static_cast<std::size_t>(m) + 1);
        for (int i = 0; i <= m; ++i) {
            for (int j = 0; j <= m; ++j) travel.set(i, j, i == j ? 0.0 : 1.0 + ((i + j) % 7));
        }
        spec.travel = travel;
        spec.max_duration = 100.0;
        spec.max_weight = 100.0;
        spec.max_dimension = 100.0;

        const auto built = build_srp_model(spec);
        require(built.model.num_variables() == (m + 1) * (m + 1),
                "variable count is not (M+1)^2 at M=" + std::to_string(m));
        require(static_cast<int>(built.model.constraints().size()) == 3 * m + 6,
                "aggregate constraint count is not 3M+6 at M=" + std::to_string(m));
    }
}

}  // namespace

int main() {
    const std::vector<Gate> gates{
        {"exact solver equals the independent brute-force oracle (200 specs, M<=6)",
         gate1_exact_matches_brute_force, 60.0},
        {"encoding soundness: route score equals CQM evaluation (500 routes)",
         gate2_encoding_soundness, 10.0},
        {"six bundled profiles mirror the validation marks (R1/R3 pass, R2 pass or absent)",
         gate3_validation_mirror, 300.0},
        {"zero-priority routes match Held-Karp (exact) / within 2% (anneal, 10 seeds)",
         gate4_zero_tp_route_optimality, std::nullopt},
        {"oracle-tour deviations are attributable to priority deadlines (20 instances)",
         gate5_r2_attribution, std::nullopt},
        {"sub-routes over pools of <=9 serve the maximum possible deliveries",
         gate6_coverage_optimality, std::nullopt},
        {"P1 and P2 hold on every recorded solution; P3 audited only", gate7_preferences,
         std::nullopt},
        {"byte-identical reruns: solution JSON, benchmark JSON, SVG", gate8_determinism,
         std::nullopt},
        {"published dataset reproduction (optional tier)", gate9_dataset_reproduction,
         std::nullopt},
        {"structural counts: (M+1)^2 variables and 3M+6 constraints for M in 1..20",
         gate10_structural_counts, std::nullopt},
    };

    int failures = 0;
    for (std::size_t k = 0; k < gates.size(); ++k) {
        const auto started = std::chrono::steady_clock::now();
        std::string verdict = "PASS";
        std::string note;
        try {
            gates[k].body();
        } catch (const GateSkipped& e) {
            verdict = "SKIP";
            note = e.what();
        } catch (const std::exception& e) {
            verdict = "FAIL";
            note = e.what();
            ++failures;
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        if (verdict == "PASS" && gates[k].budget_s && elapsed > *gates[k].budget_s) {
            verdict = "FAIL";
            note = "exceeded the runtime budget";
            ++failures;
        }
        std::printf("criterion %2zu %s  %s (%.2fs)%s%s\n", k + 1, verdict.c_str(),
                    gates[k].name.c_str(), elapsed, note.empty() ? "" : " -- ", note.c_str());
        std::fflush(stdout);
    }
    if (failures > 0) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all criteria passed (criterion 9 may be skipped when the dataset is absent)\n");
    return 0;
}

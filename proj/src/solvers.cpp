#include "pdp/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>
#include <thread>
#include <vector>

#include "pdp/rng.hpp"

namespace pdp {

const char* backend_name(Backend b) {
    switch (b) {
        case Backend::Exact: return "exact";
        case Backend::Anneal: return "anneal";
        case Backend::Auto: return "auto";
    }
    return "unknown";
}

namespace {

// full ordering used for reproducible winner selection
bool better_than(double score, double distance, const std::vector<int>& seq, double best_score,
                 double best_distance, const std::vector<int>& best_seq) {
    if (score != best_score) return score < best_score;
    if (distance != best_distance) return distance < best_distance;
    return std::lexicographical_compare(seq.begin(), seq.end(), best_seq.begin(), best_seq.end());
}

struct RouteMeasure {
    double distance = 0.0;  // closed with the destination leg
    double weight = 0.0;
    double dimension = 0.0;
    double score = 0.0;
    bool feasible = false;
};

RouteMeasure measure(const SrpSpec& spec, const std::vector<int>& seq) {
    RouteMeasure m;
    int last = 0;
    for (int slot : seq) {
        m.distance += spec.travel.at(last, slot);
        m.weight += spec.slot_weight(slot);
        m.dimension += spec.slot_dimension(slot);
        last = slot;
    }
    m.distance += spec.travel.at(last, 1);
    m.weight += spec.slot_weight(1);
    m.dimension += spec.slot_dimension(1);
    m.feasible = m.distance <= spec.max_duration + kEqualityTolerance &&
                 m.weight <= spec.max_weight + kEqualityTolerance &&
                 m.dimension <= spec.max_dimension + kEqualityTolerance;
    const int destination_position = static_cast<int>(seq.size()) + 1;
    m.score = spec.distance_weight * m.distance +
              spec.coverage_weight *
                  destination_position_objective(destination_position, spec.slot_count());
    return m;
}

}  // namespace

SolveResult solve_exact(const SrpSpec& spec, int exact_threshold) {
    spec.require_valid();
    const int m = spec.slot_count();
    if (m > exact_threshold) {
        throw TooLarge("SRP with M=" + std::to_string(m) + " exceeds the exact threshold " +
                       std::to_string(exact_threshold));
    }
    const auto started = std::chrono::steady_clock::now();

    const double dest_weight = spec.slot_weight(1);
    const double dest_dimension = spec.slot_dimension(1);

    SolveStats stats;
    bool found = false;
    double best_score = 0.0;
    double best_distance = 0.0;
    std::vector<int> best_seq;

    std::vector<int> seq;
    std::vector<bool> used(static_cast<std::size_t>(m) + 1, false);

    auto consider = [&](double path_distance, double weight, double dimension, int last) {
        ++stats.evaluations;
        const double total = path_distance + spec.travel.at(last, 1);
        if (total > spec.max_duration + kEqualityTolerance) return;
        if (weight + dest_weight > spec.max_weight + kEqualityTolerance) return;
        if (dimension + dest_dimension > spec.max_dimension + kEqualityTolerance) return;
        const int destination_position = static_cast<int>(seq.size()) + 1;
        const double score =
            spec.distance_weight * total +
            spec.coverage_weight * destination_position_objective(destination_position, m);
        if (!found || better_than(score, total, seq, best_score, best_distance, best_seq)) {
            found = true;
            best_score = score;
            best_distance = total;
            best_seq = seq;
        }
    };

    // DFS over ordered candidate subsets; weight/dimension only grow along a
    // branch so those bounds prune, distance cannot (no triangle assumption).
    auto rec = [&](auto&& self, double path_distance, double weight, double dimension,
                   int last) -> void {
        consider(path_distance, weight, dimension, last);
        if (weight + dest_weight > spec.max_weight + kEqualityTolerance ||
            dimension + dest_dimension > spec.max_dimension + kEqualityTolerance) {
            return;
        }
        for (int slot = 2; slot <= m; ++slot) {
            if (used[static_cast<std::size_t>(slot)]) continue;
            used[static_cast<std::size_t>(slot)] = true;
            seq.push_back(slot);
            self(self, path_distance + spec.travel.at(last, slot),
                 weight + spec.slot_weight(slot), dimension + spec.slot_dimension(slot), slot);
            seq.pop_back();
            used[static_cast<std::size_t>(slot)] = false;
        }
    };
    rec(rec, 0.0, 0.0, 0.0, 0);

    if (!found) {
        throw NoFeasibleRoute("no route satisfies the duration/weight/dimension bounds");
    }

    SolveResult result;
    result.route = route_from_candidates(spec, best_seq);
    result.objective = scalar_objective(spec, result.route);
    result.feasible = true;
    result.stats = stats;
    result.stats.restarts_used = 0;
    result.stats.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return result;
}

SolveResult solve_anneal(const SrpSpec& spec, const SolverConfig& config) {
    spec.require_valid();
    if (config.anneal.restarts < 1) throw Error("anneal restarts must be >= 1");
    if (config.anneal.steps < 1) throw Error("anneal steps must be >= 1");
    if (config.anneal.final_temperature_ratio <= 0.0 ||
        config.anneal.final_temperature_ratio >= 1.0) {
        throw Error("final temperature ratio must be in (0, 1)");
    }
    const auto started = std::chrono::steady_clock::now();
    const int m = spec.slot_count();

    double penalty_weight;
    if (config.anneal.penalty_weight) {
        penalty_weight = *config.anneal.penalty_weight;
        if (penalty_weight <= 0.0) throw Error("penalty weight must be positive");
    } else {
        penalty_weight = build_srp_model(spec, config.constraint_form).model
                             .default_penalty_weight();
    }

    double t0 = config.anneal.initial_temperature;
    if (t0 <= 0.0) {
        // 0.3x the longest leg: hot enough to reorder, cool enough not to
        // shred the constructed starts. The full-leg temperature lost ~10% of
        // tour quality on the bundled benchmarks.
        for (int i = 0; i <= m; ++i) {
            for (int j = 0; j <= m; ++j) t0 = std::max(t0, spec.travel.at(i, j));
        }
        t0 *= 0.3;
        if (t0 <= 0.0) t0 = 1.0;
    }
    const double cooling =
        std::pow(config.anneal.final_temperature_ratio, 1.0 / config.anneal.steps);

    auto energy = [&](const RouteMeasure& rm) {
        double e = rm.score;
        const double over_t = std::max(0.0, rm.distance - spec.max_duration);
        const double over_w = std::max(0.0, rm.weight - spec.max_weight);
        const double over_d = std::max(0.0, rm.dimension - spec.max_dimension);
        e += penalty_weight * (over_t * over_t + over_w * over_w + over_d * over_d);
        return e;
    };

    // One restart: an independent chain with its own random stream. Returns
    // the best feasible state it saw, for an order-independent merge.
    struct RestartBest {
        bool found = false;
        double score = 0.0;
        double distance = 0.0;
        std::vector<int> seq;
        long long evaluations = 0;
    };

    auto run_restart = [&](int restart) {
        RestartBest best;
        auto offer = [&best](const std::vector<int>& seq, const RouteMeasure& rm) {
            if (!rm.feasible) return;
            if (!best.found || better_than(rm.score, rm.distance, seq, best.score,
                                           best.distance, best.seq)) {
                best.found = true;
                best.score = rm.score;
                best.distance = rm.distance;
                best.seq = seq;
            }
        };

        Rng rng(mix_seed(config.seed, static_cast<uint64_t>(restart)));
        std::vector<int> seq;
        std::vector<int> unserved;
        for (int slot = 2; slot <= m; ++slot) unserved.push_back(slot);

        auto leg = [&](int a, int b) { return spec.travel.at(a, b); };
        // cheapest insertion position for slot x into seq with index `skip`
        // removed (-1 keeps the whole sequence); O(1) per position
        auto cheapest_position = [&](int x, int skip) {
            std::vector<int> view;
            view.reserve(seq.size());
            for (int i = 0; i < static_cast<int>(seq.size()); ++i) {
                if (i != skip) view.push_back(seq[static_cast<std::size_t>(i)]);
            }
            const int r = static_cast<int>(view.size());
            int best_t = 0;
            double best_d = 0.0;
            for (int t = 0; t <= r; ++t) {
                const int a = t == 0 ? 0 : view[static_cast<std::size_t>(t - 1)];
                const int b = t == r ? 1 : view[static_cast<std::size_t>(t)];
                const double d = leg(a, x) + leg(x, b) - leg(a, b);
                if (t == 0 || d < best_d) {
                    best_d = d;
                    best_t = t;
                }
            }
            return best_t;
        };

        // Seed the chain with a randomized construction so the annealing budget
        // refines packed routes instead of building them. Alternating between
        // cheapest-position and random-position inserts diversifies the basins
        // the restarts land in.
        {
            std::vector<int> pool = unserved;
            for (std::size_t k = pool.size(); k > 1; --k) {
                std::swap(pool[k - 1], pool[static_cast<std::size_t>(
                                           rng.uniform_int(0, static_cast<int>(k) - 1))]);
            }
            const bool greedy_start = restart % 2 == 0;
            for (int x : pool) {
                std::vector<int> trial = seq;
                const int at = greedy_start
                                   ? cheapest_position(x, -1)
                                   : rng.uniform_int(0, static_cast<int>(trial.size()));
                trial.insert(trial.begin() + at, x);
                ++best.evaluations;
                if (measure(spec, trial).feasible) seq = std::move(trial);
            }
            std::erase_if(unserved, [&](int slot) {
                return std::find(seq.begin(), seq.end(), slot) != seq.end();
            });
        }

        RouteMeasure current = measure(spec, seq);
        ++best.evaluations;
        offer(seq, current);
        double temperature = t0;

        for (int step = 0; step < config.anneal.steps; ++step, temperature *= cooling) {
            const int n = static_cast<int>(seq.size());
            std::vector<int> next;
            const int kind = rng.uniform_int(0, 3);
            if (kind == 0) {  // insert an unserved delivery
                if (unserved.empty()) continue;
                const int x = unserved[static_cast<std::size_t>(
                    rng.uniform_int(0, static_cast<int>(unserved.size()) - 1))];
                const int at = rng.uniform_int(0, 1) == 0 ? cheapest_position(x, -1)
                                                          : rng.uniform_int(0, n);
                next = seq;
                next.insert(next.begin() + at, x);
            } else if (kind == 1) {  // remove a served delivery
                if (n == 0) continue;
                next = seq;
                next.erase(next.begin() + rng.uniform_int(0, n - 1));
            } else if (kind == 2) {  // swap two positions
                if (n < 2) continue;
                const int a = rng.uniform_int(0, n - 1);
                int b = rng.uniform_int(0, n - 1);
                if (rng.uniform_int(0, 1) == 0) {  // best partner for a
                    double best_d = 0.0;
                    bool first = true;
                    for (int j = 0; j < n; ++j) {
                        if (j == a) continue;
                        const int lo = std::min(a, j), hi = std::max(a, j);
                        const int before_lo =
                            lo == 0 ? 0 : seq[static_cast<std::size_t>(lo - 1)];
                        const int after_hi =
                            hi == n - 1 ? 1 : seq[static_cast<std::size_t>(hi + 1)];
                        const int node_lo = seq[static_cast<std::size_t>(lo)];
                        const int node_hi = seq[static_cast<std::size_t>(hi)];
                        double d;
                        if (hi == lo + 1) {
                            d = leg(before_lo, node_hi) + leg(node_lo, after_hi) -
                                leg(before_lo, node_lo) - leg(node_hi, after_hi);
                        } else {
                            const int after_lo = seq[static_cast<std::size_t>(lo + 1)];
                            const int before_hi = seq[static_cast<std::size_t>(hi - 1)];
                            d = leg(before_lo, node_hi) + leg(node_hi, after_lo) +
                                leg(before_hi, node_lo) + leg(node_lo, after_hi) -
                                leg(before_lo, node_lo) - leg(node_lo, after_lo) -
                                leg(before_hi, node_hi) - leg(node_hi, after_hi);
                        }
                        if (first || d < best_d) {
                            best_d = d;
                            b = j;
                            first = false;
                        }
                    }
                }
                if (a == b) continue;
                next = seq;
                std::swap(next[static_cast<std::size_t>(a)], next[static_cast<std::size_t>(b)]);
            } else {  // relocate one position
                if (n < 2) continue;
                const int from = rng.uniform_int(0, n - 1);
                const int x = seq[static_cast<std::size_t>(from)];
                const int to = rng.uniform_int(0, 1) == 0 ? cheapest_position(x, from)
                                                          : rng.uniform_int(0, n - 1);
                if (to == from) continue;
                next = seq;
                next.erase(next.begin() + from);
                next.insert(next.begin() + to, x);
            }

            const RouteMeasure candidate = measure(spec, next);
            ++best.evaluations;
            const double delta = energy(candidate) - energy(current);
            if (delta <= 0.0 || rng.uniform() < std::exp(-delta / temperature)) {
                if (next.size() != seq.size()) {
                    unserved.clear();
                    std::vector<bool> in_route(static_cast<std::size_t>(m) + 1, false);
                    for (int slot : next) in_route[static_cast<std::size_t>(slot)] = true;
                    for (int slot = 2; slot <= m; ++slot) {
                        if (!in_route[static_cast<std::size_t>(slot)]) unserved.push_back(slot);
                    }
                }
                seq = std::move(next);
                current = candidate;
                offer(seq, current);
            }
        }
        return best;
    };

    // Restarts are independent chains; run them on the available cores and
    // fold the results. The winner ordering is total, so the fold result does
    // not depend on completion order.
    std::vector<RestartBest> outcomes(static_cast<std::size_t>(config.anneal.restarts));
    const unsigned workers =
        std::min<unsigned>(std::max(1u, std::thread::hardware_concurrency()),
                           static_cast<unsigned>(config.anneal.restarts));
    if (workers <= 1) {
        for (int r = 0; r < config.anneal.restarts; ++r) {
            outcomes[static_cast<std::size_t>(r)] = run_restart(r);
        }
    } else {
        std::vector<std::future<void>> lanes;
        lanes.reserve(workers);
        for (unsigned lane = 0; lane < workers; ++lane) {
            lanes.push_back(std::async(std::launch::async, [&, lane] {
                for (int r = static_cast<int>(lane); r < config.anneal.restarts;
                     r += static_cast<int>(workers)) {
                    outcomes[static_cast<std::size_t>(r)] = run_restart(r);
                }
            }));
        }
        for (auto& lane : lanes) lane.get();
    }

    SolveStats stats;
    bool found = false;
    double best_score = 0.0;
    double best_distance = 0.0;
    std::vector<int> best_seq;
    for (const auto& outcome : outcomes) {
        stats.evaluations += outcome.evaluations;
        ++stats.restarts_used;
        if (!outcome.found) continue;
        if (!found || better_than(outcome.score, outcome.distance, outcome.seq, best_score,
                                  best_distance, best_seq)) {
            found = true;
            best_score = outcome.score;
            best_distance = outcome.distance;
            best_seq = outcome.seq;
        }
    }

    if (!found) {
        throw NoFeasibleRoute("annealing found no feasible route");
    }

    SolveResult result;
    result.route = route_from_candidates(spec, best_seq);
    result.objective = scalar_objective(spec, result.route);
    result.feasible = true;
    result.stats = stats;
    result.stats.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return result;
}

Backend dispatch_backend(const SrpSpec& spec, const SolverConfig& config) {
    if (config.backend == Backend::Exact) return Backend::Exact;
    if (config.backend == Backend::Anneal) return Backend::Anneal;
    return spec.slot_count() <= config.exact_threshold ? Backend::Exact : Backend::Anneal;
}

int max_servable_candidates(const SrpSpec& spec, int exact_threshold) {
    spec.require_valid();
    const int m = spec.slot_count();
    const int pool = static_cast<int>(spec.candidates.size());
    if (pool > exact_threshold) {
        throw TooLarge("coverage verification limited to pools of " +
                       std::to_string(exact_threshold) + " candidates, got " +
                       std::to_string(pool));
    }
    const double dest_weight = spec.slot_weight(1);
    const double dest_dimension = spec.slot_dimension(1);

    int best = -1;  // -1: not even the direct route is feasible
    std::vector<int> seq;
    std::vector<bool> used(static_cast<std::size_t>(m) + 1, false);
    auto rec = [&](auto&& self, double path_distance, double weight, double dimension,
                   int last) -> void {
        if (path_distance + spec.travel.at(last, 1) <= spec.max_duration + kEqualityTolerance &&
            weight + dest_weight <= spec.max_weight + kEqualityTolerance &&
            dimension + dest_dimension <= spec.max_dimension + kEqualityTolerance) {
            best = std::max(best, static_cast<int>(seq.size()));
        }
        if (static_cast<int>(seq.size()) == pool) return;
        if (weight + dest_weight > spec.max_weight + kEqualityTolerance ||
            dimension + dest_dimension > spec.max_dimension + kEqualityTolerance) {
            return;
        }
        for (int slot = 2; slot <= m; ++slot) {
            if (used[static_cast<std::size_t>(slot)]) continue;
            used[static_cast<std::size_t>(slot)] = true;
            seq.push_back(slot);
            self(self, path_distance + spec.travel.at(last, slot),
                 weight + spec.slot_weight(slot), dimension + spec.slot_dimension(slot), slot);
            seq.pop_back();
            used[static_cast<std::size_t>(slot)] = false;
        }
    };
    rec(rec, 0.0, 0.0, 0.0, 0);
    return best;
}

SrpRoute solve(const SrpSpec& spec, const SolverConfig& config) {
    const Backend backend = dispatch_backend(spec, config);
    SolveResult result = backend == Backend::Exact ? solve_exact(spec, config.exact_threshold)
                                                   : solve_anneal(spec, config);

    // Post-validation gate: the winner must satisfy the CQM it encodes to.
    auto built = build_srp_model(spec, config.constraint_form);
    const Assignment a = encode_route(built.encoding, result.route);
    if (!built.model.all_satisfied(a)) {
        throw InfeasibleAssignment("solver route fails CQM validation");
    }
    return result.route;
}

}  // namespace pdp

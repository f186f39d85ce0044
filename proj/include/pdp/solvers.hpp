#pragma once

#include <cstdint>
#include <optional>

#include "pdp/srp.hpp"

namespace pdp {

enum class Backend { Exact, Anneal, Auto };

const char* backend_name(Backend b);

struct AnnealParams {
    int restarts = 32;
    int steps = 40000;
    double initial_temperature = 0.0;  // 0 -> 0.3x the longest leg
    double final_temperature_ratio = 1e-3;
    std::optional<double> penalty_weight;  // default derived from the model
};

struct SolverConfig {
    Backend backend = Backend::Auto;
    uint64_t seed = 0;
    AnnealParams anneal;
    int exact_threshold = 9;  // max slot count M for exhaustive search
    ConstraintForm constraint_form = ConstraintForm::Aggregate;
};

struct SolveStats {
    long long evaluations = 0;
    int restarts_used = 0;
    double wall_seconds = 0.0;  // informational; not part of the determinism contract
};

struct SolveResult {
    SrpRoute route;
    double objective = 0.0;
    bool feasible = false;
    SolveStats stats;
};

// Enumerates every ordered subset of candidates (destination appended last).
// Ties broken by smaller distance, then lexicographically smaller visits.
SolveResult solve_exact(const SrpSpec& spec, int exact_threshold = 9);

// Route-space simulated annealing scored with the model's penalty convention.
SolveResult solve_anneal(const SrpSpec& spec, const SolverConfig& config);

// Dispatches per config, then re-validates the winner against the CQM.
SrpRoute solve(const SrpSpec& spec, const SolverConfig& config);

// The backend `solve` would pick for this spec.
Backend dispatch_backend(const SrpSpec& spec, const SolverConfig& config);

// Largest number of candidates any feasible route over this spec can serve,
// found by exhaustive search. Candidate pools above `exact_threshold` throw.
int max_servable_candidates(const SrpSpec& spec, int exact_threshold = 9);

}  // namespace pdp

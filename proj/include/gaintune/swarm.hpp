#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "gaintune/matrixkit.hpp"

namespace gaintune {

struct SwarmConfig {
    int swarm_size = 50;
    int max_iters = 100;
    std::uint64_t seed = 0;
    double inertia = 0.7298;      // constriction-equivalent defaults
    double cognitive = 1.49618;
    double social = 1.49618;
    double stall_tolerance = 1e-8;
    int stall_window = 50;
    bool parallel = true;         // OpenMP evaluation kernel; false = serial reference
};

struct TuneResult {
    double best_value = 0.0;
    Vec best_params;
    long evaluations = 0;
    long nan_evaluations = 0;
    std::vector<double> history;  // best-so-far after each iteration
};

using Objective = std::function<double(const Vec&)>;

/// Global-best particle swarm over a box. All stochastic draws happen in a
/// single serial stream keyed by `seed`, and the evaluation reduction is
/// ordered by particle index, so results are identical for any worker
/// count. NaN objective values count as +inf; a run that never sees a
/// finite value throws OptimizationDegenerate.
TuneResult optimize(const Objective& objective, const Vec& lower, const Vec& upper,
                    const SwarmConfig& config);

/// Evaluation kernel, exposed for the serial-vs-parallel benchmark:
/// fills `values[i] = objective(points[i])`.
void evaluate_batch(const Objective& objective, const std::vector<Vec>& points,
                    std::vector<double>& values, bool parallel);

} // namespace gaintune

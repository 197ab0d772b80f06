#include "gaintune/swarm.hpp"

#include <cmath>
#include <limits>
#include <random>

namespace gaintune {

void evaluate_batch(const Objective& objective, const std::vector<Vec>& points,
                    std::vector<double>& values, bool parallel) {
    const long n = static_cast<long>(points.size());
    values.resize(points.size());
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (long i = 0; i < n; ++i) {
        double v;
        try {
            v = objective(points[static_cast<size_t>(i)]);
        } catch (const Error&) {
            v = std::numeric_limits<double>::quiet_NaN();
        }
        values[static_cast<size_t>(i)] = v;
    }
}

TuneResult optimize(const Objective& objective, const Vec& lower, const Vec& upper,
                    const SwarmConfig& config) {
    const Eigen::Index dim = lower.size();
    if (upper.size() != dim || dim == 0)
        throw DimensionMismatch("optimize: bound vectors must match and be nonempty");
    for (Eigen::Index i = 0; i < dim; ++i)
        if (!(lower(i) < upper(i)))
            throw DimensionMismatch("optimize: lower must be < upper elementwise");
    if (config.swarm_size < 2 || config.max_iters < 1)
        throw OptimizationDegenerate("optimize: swarm_size >= 2 and max_iters >= 1 required");

    const double inf = std::numeric_limits<double>::infinity();
    const Vec vmax = 0.5 * (upper - lower);

    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    const int n = config.swarm_size;
    std::vector<Vec> pos(static_cast<size_t>(n)), vel(static_cast<size_t>(n)),
        pbest(static_cast<size_t>(n));
    std::vector<double> pbest_val(static_cast<size_t>(n), inf);
    std::vector<double> values;

    for (int p = 0; p < n; ++p) {
        Vec x(dim);
        for (Eigen::Index k = 0; k < dim; ++k)
            x(k) = lower(k) + unit(rng) * (upper(k) - lower(k));
        pos[static_cast<size_t>(p)] = x;
        vel[static_cast<size_t>(p)] = Vec::Zero(dim);
    }

    TuneResult result;
    result.best_value = inf;

    auto absorb = [&](const std::vector<double>& vals) {
        for (int p = 0; p < n; ++p) {
            double v = vals[static_cast<size_t>(p)];
            ++result.evaluations;
            if (std::isnan(v)) {
                ++result.nan_evaluations;
                v = inf;
            }
            if (v < pbest_val[static_cast<size_t>(p)]) {
                pbest_val[static_cast<size_t>(p)] = v;
                pbest[static_cast<size_t>(p)] = pos[static_cast<size_t>(p)];
            }
            if (v < result.best_value) {
                result.best_value = v;
                result.best_params = pos[static_cast<size_t>(p)];
            }
        }
    };

    evaluate_batch(objective, pos, values, config.parallel);
    absorb(values);
    if (!std::isfinite(result.best_value))
        throw OptimizationDegenerate("optimize: every objective value in the initial sweep was NaN");

    double stall_ref = result.best_value;
    int stall_iters = 0;

    for (int iter = 0; iter < config.max_iters; ++iter) {
        for (int p = 0; p < n; ++p) {
            Vec& x = pos[static_cast<size_t>(p)];
            Vec& v = vel[static_cast<size_t>(p)];
            const Vec& pb = pbest[static_cast<size_t>(p)];
            for (Eigen::Index k = 0; k < dim; ++k) {
                const double r1 = unit(rng);
                const double r2 = unit(rng);
                double nv = config.inertia * v(k) +
                            config.cognitive * r1 * (pb(k) - x(k)) +
                            config.social * r2 * (result.best_params(k) - x(k));
                nv = std::clamp(nv, -vmax(k), vmax(k));
                double nx = x(k) + nv;
                if (nx < lower(k)) {
                    nx = lower(k);
                    nv = 0.0;
                } else if (nx > upper(k)) {
                    nx = upper(k);
                    nv = 0.0;
                }
                x(k) = nx;
                v(k) = nv;
            }
        }

        evaluate_batch(objective, pos, values, config.parallel);
        absorb(values);
        result.history.push_back(result.best_value);

        if (stall_ref - result.best_value < config.stall_tolerance) {
            if (++stall_iters >= config.stall_window) break;
        } else {
            stall_ref = result.best_value;
            stall_iters = 0;
        }
    }

    if (!std::isfinite(result.best_value))
        throw OptimizationDegenerate("optimize: no finite objective value found");
    return result;
}

} // namespace gaintune

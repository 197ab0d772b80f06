#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "gaintune/matrixkit.hpp"

namespace gaintune {

struct IntegratorConfig {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    double max_step = std::numeric_limits<double>::infinity();
    double max_time = 0.0;                 // integration horizon (from t = 0)
    std::optional<double> hold_interval;   // zero-order-hold grid for the control
};

struct EventSpec {
    std::function<double(double, const Vec&)> g;
    int direction = 0;       // 0: any crossing, +1: rising, -1: falling
    bool terminal = true;
    double refine_tol = 1e-9;
};

struct Trajectory {
    std::vector<double> t;   // accepted step times (plus hold-grid and event points)
    std::vector<Vec> x;
    bool event_terminated = false;
    int event_index = -1;
    // zero-order-hold log: control sample held over [u_times[k], u_times[k+1])
    std::vector<double> u_times;
    std::vector<Vec> u_values;
    long accepted_steps = 0;
    long rejected_steps = 0;
    long rhs_evaluations = 0;

    double t_final() const { return t.back(); }
    const Vec& x_final() const { return x.back(); }
};

using Rhs = std::function<void(double, const Vec&, Vec&)>;
using HeldRhs = std::function<void(double, const Vec&, const Vec&, Vec&)>;
using ControlSampler = std::function<Vec(double, const Vec&)>;

/// Adaptive Dormand-Prince 5(4) propagation with PI step control and
/// event location (sign-change bracketing refined by bisection on the
/// dense-output interpolant). Continuous feedback: the RHS evaluates its
/// own control. Reaching max_time without a terminal event is reported
/// through the trajectory flags, not an exception; step-size underflow
/// throws StiffnessFailure.
Trajectory integrate(const Rhs& rhs, const Vec& x0, const IntegratorConfig& config,
                     const std::vector<EventSpec>& events = {});

/// Same integrator, but the control is sampled from `sampler` only at
/// hold-grid times (0, h, 2h, ...) and held constant in between; steps
/// never straddle a grid point.
Trajectory integrate_held(const HeldRhs& rhs, const ControlSampler& sampler, const Vec& x0,
                          const IntegratorConfig& config,
                          const std::vector<EventSpec>& events = {});

} // namespace gaintune

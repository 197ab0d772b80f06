#include "gaintune/propagate.hpp"

#include <cmath>

namespace gaintune {

namespace {

// Dormand-Prince 5(4) coefficients.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                 a75 = -2187.0 / 6784, a76 = 11.0 / 84;
// b - b_hat (error weights).
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
// Dense-output weights.
constexpr double d1 = -12715105075.0 / 11282082432.0;
constexpr double d3 = 87487479700.0 / 32700410799.0;
constexpr double d4 = -10690763975.0 / 1880347072.0;
constexpr double d5 = 701980252875.0 / 199316789632.0;
constexpr double d6 = -1453857185.0 / 822651844.0;
constexpr double d7 = 69997945.0 / 29380423.0;

struct DenseStep {
    Vec r1, r2, r3, r4, r5;
    double t0 = 0.0, h = 0.0;

    Vec at(double theta) const {
        const double th1 = 1.0 - theta;
        return r1 + theta * (r2 + th1 * (r3 + theta * (r4 + th1 * r5)));
    }
};

bool crossed_at_start(const EventSpec& ev, double g0) {
    if (ev.direction < 0) return g0 <= 0.0;
    if (ev.direction > 0) return g0 >= 0.0;
    return g0 == 0.0;
}

bool sign_change(const EventSpec& ev, double g0, double g1) {
    if (ev.direction >= 0 && g0 < 0.0 && g1 >= 0.0) return true;
    if (ev.direction <= 0 && g0 > 0.0 && g1 <= 0.0) return true;
    return false;
}

struct Core {
    const Rhs& rhs;
    const IntegratorConfig& cfg;
    const std::vector<EventSpec>& events;
    Trajectory& traj;
    std::vector<double> g_prev;
    double h = 0.0;            // carried across hold segments
    double err_prev = 1.0;

    Core(const Rhs& r, const IntegratorConfig& c, const std::vector<EventSpec>& ev,
         Trajectory& tr)
        : rhs(r), cfg(c), events(ev), traj(tr) {}

    double error_norm(const Vec& x0, const Vec& x1, const Vec& err) const {
        double acc = 0.0;
        for (Eigen::Index i = 0; i < err.size(); ++i) {
            const double sc = cfg.abs_tol + cfg.rel_tol * std::max(std::abs(x0(i)), std::abs(x1(i)));
            const double r = err(i) / sc;
            acc += r * r;
        }
        return std::sqrt(acc / static_cast<double>(err.size()));
    }

    double initial_step(double t, const Vec& x, const Vec& f) const {
        double d0 = 0.0, d1 = 0.0;
        for (Eigen::Index i = 0; i < x.size(); ++i) {
            const double sc = cfg.abs_tol + cfg.rel_tol * std::abs(x(i));
            d0 += (x(i) / sc) * (x(i) / sc);
            d1 += (f(i) / sc) * (f(i) / sc);
        }
        d0 = std::sqrt(d0);
        d1 = std::sqrt(d1);
        double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
        h0 = std::min({h0, cfg.max_step, cfg.max_time - t});
        return std::max(h0, 1e-12);
    }

    // Locate the earliest event crossing inside an accepted step, refine by
    // bisection on the interpolant. Returns true if a terminal event fired,
    // in which case (t_ev, x_ev) hold the refined event point.
    bool locate_event(const DenseStep& ds, const std::vector<double>& g_new, double& t_ev,
                      Vec& x_ev, int& ev_idx) {
        double best_theta = 2.0;
        int best = -1;
        for (size_t i = 0; i < events.size(); ++i) {
            if (!sign_change(events[i], g_prev[i], g_new[i])) continue;
            double lo = 0.0, hi = 1.0;
            double glo = g_prev[i];
            while ((hi - lo) * std::abs(ds.h) > events[i].refine_tol) {
                const double mid = 0.5 * (lo + hi);
                const double gm = events[i].g(ds.t0 + mid * ds.h, ds.at(mid));
                const bool crossed = (glo < 0.0 && gm >= 0.0) || (glo > 0.0 && gm <= 0.0);
                if (crossed)
                    hi = mid;
                else {
                    lo = mid;
                    glo = gm;
                }
            }
            const double theta = 0.5 * (lo + hi);
            if (theta < best_theta) {
                best_theta = theta;
                best = static_cast<int>(i);
            }
        }
        if (best < 0) return false;
        if (!events[static_cast<size_t>(best)].terminal) return false; // crossings logged by caller if needed
        t_ev = ds.t0 + best_theta * ds.h;
        x_ev = ds.at(best_theta);
        ev_idx = best;
        return true;
    }

    // Integrate one span [t, t_end]; x updated in place. Returns true when a
    // terminal event stopped the run.
    bool run_span(double& t, Vec& x, double t_end) {
        const Eigen::Index n = x.size();
        Vec k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), y(n), y1(n), err(n);

        rhs(t, x, k1);
        ++traj.rhs_evaluations;
        if (h <= 0.0) h = initial_step(t, x, k1);

        if (g_prev.empty() && !events.empty()) {
            g_prev.resize(events.size());
            for (size_t i = 0; i < events.size(); ++i) g_prev[i] = events[i].g(t, x);
            for (size_t i = 0; i < events.size(); ++i) {
                if (events[i].terminal && crossed_at_start(events[i], g_prev[i])) {
                    traj.event_terminated = true;
                    traj.event_index = static_cast<int>(i);
                    return true;
                }
            }
        } else if (!events.empty()) {
            for (size_t i = 0; i < events.size(); ++i) g_prev[i] = events[i].g(t, x);
        }

        while (t < t_end - 1e-14 * std::max(1.0, std::abs(t_end))) {
            h = std::min({h, cfg.max_step, t_end - t});
            const double hmin = 1e-14 * std::max(1.0, std::abs(t));
            if (h < hmin)
                throw StiffnessFailure("integrate: step size underflow at t = " + std::to_string(t));

            y = x + h * (a21 * k1);
            rhs(t + c2 * h, y, k2);
            y = x + h * (a31 * k1 + a32 * k2);
            rhs(t + c3 * h, y, k3);
            y = x + h * (a41 * k1 + a42 * k2 + a43 * k3);
            rhs(t + c4 * h, y, k4);
            y = x + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
            rhs(t + c5 * h, y, k5);
            y = x + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
            rhs(t + h, y, k6);
            y1 = x + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
            rhs(t + h, y1, k7);
            traj.rhs_evaluations += 6;

            err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
            const double en = error_norm(x, y1, err);

            if (en <= 1.0) {
                DenseStep ds;
                ds.t0 = t;
                ds.h = h;
                ds.r1 = x;
                ds.r2 = y1 - x;
                ds.r3 = h * k1 - ds.r2;
                ds.r4 = ds.r2 - h * k7 - ds.r3;
                ds.r5 = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);

                bool stop = false;
                double t_ev = 0.0;
                Vec x_ev;
                int ev_idx = -1;
                if (!events.empty()) {
                    std::vector<double> g_new(events.size());
                    for (size_t i = 0; i < events.size(); ++i)
                        g_new[i] = events[i].g(t + h, y1);
                    stop = locate_event(ds, g_new, t_ev, x_ev, ev_idx);
                    if (!stop) g_prev = g_new;
                }

                ++traj.accepted_steps;
                if (stop) {
                    t = t_ev;
                    x = x_ev;
                    traj.t.push_back(t);
                    traj.x.push_back(x);
                    traj.event_terminated = true;
                    traj.event_index = ev_idx;
                    return true;
                }

                t += h;
                x = y1;
                k1 = k7; // FSAL
                traj.t.push_back(t);
                traj.x.push_back(x);

                const double fac = 0.9 * std::pow(std::max(en, 1e-10), -0.14) *
                                   std::pow(std::max(err_prev, 1e-10), 0.08);
                h *= std::clamp(fac, 0.2, 5.0);
                err_prev = std::max(en, 1e-10);
            } else {
                ++traj.rejected_steps;
                h *= std::clamp(0.9 * std::pow(en, -0.2), 0.1, 1.0);
            }
        }
        t = t_end;
        return false;
    }
};

} // namespace

Trajectory integrate(const Rhs& rhs, const Vec& x0, const IntegratorConfig& config,
                     const std::vector<EventSpec>& events) {
    if (!(config.abs_tol > 0.0) || !(config.rel_tol > 0.0) || !(config.max_time > 0.0))
        throw ConfigError("integrate: tolerances and max_time must be positive");
    Trajectory traj;
    Vec x = x0;
    double t = 0.0;
    traj.t.push_back(t);
    traj.x.push_back(x);
    Core core(rhs, config, events, traj);
    core.run_span(t, x, config.max_time);
    if (traj.event_terminated && traj.t.size() == 1) {
        // Event already satisfied at the initial state; nothing was propagated.
    }
    return traj;
}

Trajectory integrate_held(const HeldRhs& rhs, const ControlSampler& sampler, const Vec& x0,
                          const IntegratorConfig& config,
                          const std::vector<EventSpec>& events) {
    if (!config.hold_interval || !(*config.hold_interval > 0.0))
        throw ConfigError("integrate_held: hold_interval must be set and positive");
    if (!(config.abs_tol > 0.0) || !(config.rel_tol > 0.0) || !(config.max_time > 0.0))
        throw ConfigError("integrate_held: tolerances and max_time must be positive");

    Trajectory traj;
    Vec x = x0;
    double t = 0.0;
    traj.t.push_back(t);
    traj.x.push_back(x);

    Vec u;
    Rhs bound = [&](double tt, const Vec& xx, Vec& dx) { rhs(tt, xx, u, dx); };
    Core core(bound, config, events, traj);

    const double dt = *config.hold_interval;
    long k = 0;
    while (t < config.max_time - 1e-14 * std::max(1.0, config.max_time)) {
        const double t_seg = std::min(config.max_time, static_cast<double>(k + 1) * dt);
        u = sampler(t, x);
        traj.u_times.push_back(t);
        traj.u_values.push_back(u);
        if (core.run_span(t, x, t_seg)) break;
        ++k;
    }
    return traj;
}

} // namespace gaintune

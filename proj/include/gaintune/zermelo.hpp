#pragma once

#include <iosfwd>

#include "gaintune/matrixkit.hpp"
#include "gaintune/propagate.hpp"

namespace gaintune {

using Vec2 = Eigen::Vector2d;

struct ZermeloOptions {
    Vec2 x0{-8.0, 6.0};
    double max_time = 100.0;
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    double event_norm = 1e-3; // terminate when ||x|| drops below this
};

struct ZermeloRun {
    double j = 0.0;        // accumulated control energy 0.5 * int u'u dt
    bool converged = false;
    double t_final = 0.0;
    Trajectory trajectory; // states (x, y, energy)
};

/// Drift term f(x) = -[x, y]' cos(y) sin(x).
Vec2 zermelo_drift(const Vec2& x);

/// Feedback u = -f(x) - K x; the closed loop is xdot = -K x and the
/// quadratic CLF derivative is -x'KKx <= 0.
Vec2 zermelo_control(const Vec2& x, const Mat& k);

ZermeloRun zermelo_simulate(const Mat& k, const ZermeloOptions& opts = {});

/// Control energy J, or the timeout penalty 1e6 + ||x(t_end)||.
double zermelo_objective(const Mat& k, const ZermeloOptions& opts = {});

struct SurfaceGrid {
    double x_min = -10.0, x_max = 10.0;
    double y_min = -10.0, y_max = 10.0;
    int nx = 81, ny = 81;
};

/// Gridded CSV (x, y, V, Vdot, u_norm) of the CLF, its derivative under
/// the control law, and the control norm.
void zermelo_export_surfaces(const Mat& k, const SurfaceGrid& grid, std::ostream& out);

} // namespace gaintune

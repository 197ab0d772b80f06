#include "gaintune/zermelo.hpp"

#include <cmath>
#include <ostream>

namespace gaintune {

Vec2 zermelo_drift(const Vec2& x) {
    const double s = std::cos(x.y()) * std::sin(x.x());
    return Vec2(-x.x() * s, -x.y() * s);
}

Vec2 zermelo_control(const Vec2& x, const Mat& k) {
    return -zermelo_drift(x) - Vec2(k * Eigen::Vector2d(x));
}

ZermeloRun zermelo_simulate(const Mat& k, const ZermeloOptions& opts) {
    if (k.rows() != 2 || k.cols() != 2)
        throw DimensionMismatch("zermelo: penalty matrix must be 2x2");

    Rhs rhs = [&k](double, const Vec& s, Vec& ds) {
        const Vec2 x(s(0), s(1));
        const Vec2 u = zermelo_control(x, k);
        const Vec2 xdot = zermelo_drift(x) + u; // = -K x
        ds.resize(3);
        ds(0) = xdot(0);
        ds(1) = xdot(1);
        ds(2) = 0.5 * u.squaredNorm();
    };

    EventSpec done;
    done.g = [&opts](double, const Vec& s) {
        return std::hypot(s(0), s(1)) - opts.event_norm;
    };
    done.direction = -1;
    done.terminal = true;

    IntegratorConfig cfg;
    cfg.abs_tol = opts.abs_tol;
    cfg.rel_tol = opts.rel_tol;
    cfg.max_time = opts.max_time;

    Vec s0(3);
    s0 << opts.x0(0), opts.x0(1), 0.0;

    ZermeloRun run;
    run.trajectory = integrate(rhs, s0, cfg, {done});
    run.converged = run.trajectory.event_terminated;
    run.t_final = run.trajectory.t_final();
    run.j = run.trajectory.x_final()(2);
    return run;
}

double zermelo_objective(const Mat& k, const ZermeloOptions& opts) {
    ZermeloRun run;
    try {
        run = zermelo_simulate(k, opts);
    } catch (const StiffnessFailure&) {
        return 1e6;
    }
    if (!run.converged) {
        const Vec& xf = run.trajectory.x_final();
        return 1e6 + std::hypot(xf(0), xf(1));
    }
    return run.j;
}

void zermelo_export_surfaces(const Mat& k, const SurfaceGrid& grid, std::ostream& out) {
    out << "x,y,V,Vdot,u_norm\n";
    for (int iy = 0; iy < grid.ny; ++iy) {
        const double y = grid.y_min + (grid.y_max - grid.y_min) * iy / (grid.ny - 1);
        for (int ix = 0; ix < grid.nx; ++ix) {
            const double x = grid.x_min + (grid.x_max - grid.x_min) * ix / (grid.nx - 1);
            const Vec2 p(x, y);
            const Eigen::Vector2d kp = k * p;
            const double v = 0.5 * p.dot(kp);
            const double vdot = -kp.squaredNorm(); // x'K xdot with xdot = -Kx
            const double un = zermelo_control(p, k).norm();
            out << x << ',' << y << ',' << v << ',' << vdot << ',' << un << '\n';
        }
    }
}

} // namespace gaintune

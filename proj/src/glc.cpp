#include "gaintune/glc.hpp"

#include <array>
#include <cmath>

#include "gaintune/dual.hpp"

namespace gaintune {

namespace {

template <class T>
using A3 = std::array<T, 3>;

template <class T>
T dot3(const A3<T>& a, const A3<T>& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

template <class T>
A3<T> cross3(const A3<T>& a, const A3<T>& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

template <class T>
T norm3(const A3<T>& a) {
    using std::sqrt;
    return sqrt(dot3(a, a));
}

// Shift by multiples of 2*pi based on the value part only, so dual
// derivatives pass through unchanged.
template <class T>
T wrap_pi_t(const T& x) {
    const double k = std::floor((value(x) + M_PI) / (2.0 * M_PI));
    return x - 2.0 * M_PI * k;
}

template <class T>
T wrap_two_pi_t(const T& x) {
    const double k = std::floor(value(x) / (2.0 * M_PI));
    return x - 2.0 * M_PI * k;
}

// Case error vector, generic over the scalar type.
template <class T>
void error_vector_t(const A3<T>& r, const A3<T>& v, const GlcSpec& spec, T* w) {
    using std::sqrt;
    using std::acos;
    using std::atan2;

    const A3<T> h = cross3(r, v);
    const T rn = norm3(r);
    const T coeff = dot3(v, v) - 1.0 / rn;
    const T rv = dot3(r, v);
    const A3<T> ev = {coeff * r[0] - rv * v[0], coeff * r[1] - rv * v[1],
                      coeff * r[2] - rv * v[2]};

    if (spec.case_id == GlcCase::E) {
        for (int i = 0; i < 3; ++i) {
            w[i] = h[i] - spec.hvec_t(i);
            w[3 + i] = ev[i] - spec.evec_t(i);
        }
        return;
    }

    const T hn = norm3(h);
    w[0] = hn - spec.h_t;
    w[1] = norm3(ev) - spec.e_t;
    if (spec.case_id == GlcCase::B || spec.case_id == GlcCase::D)
        w[2] = acos(h[2] / hn) - spec.i_t;
    if (spec.case_id == GlcCase::D) {
        // node vector z_hat x h = (-h_y, h_x, 0); quadrant-checked raan
        const T raan = wrap_two_pi_t(atan2(h[0], -h[1]));
        w[3] = wrap_pi_t(raan - spec.raan_t);
    }
}

template <class T>
T clf_value_t(const A3<T>& r, const A3<T>& v, const Mat& k, const GlcSpec& spec) {
    const int n = glc_error_dim(spec.case_id);
    T w[6];
    error_vector_t(r, v, spec, w);
    T acc(0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) acc += w[i] * k(i, j) * w[j];
    return 0.5 * acc;
}

} // namespace

GlcCase glc_case_from_name(const std::string& s) {
    if (s == "A" || s == "a") return GlcCase::A;
    if (s == "B" || s == "b") return GlcCase::B;
    if (s == "C" || s == "c") return GlcCase::C;
    if (s == "D" || s == "d") return GlcCase::D;
    if (s == "E" || s == "e") return GlcCase::E;
    throw ConfigError("unknown transfer case '" + s + "'");
}

int glc_error_dim(GlcCase c) {
    switch (c) {
        case GlcCase::A:
        case GlcCase::C: return 2;
        case GlcCase::B: return 3;
        case GlcCase::D: return 4;
        case GlcCase::E: return 6;
    }
    return 0;
}

GlcSpec GlcSpec::from_target(GlcCase c, const OrbitalElements& target) {
    GlcSpec spec;
    spec.case_id = c;
    const double p = target.a * (1.0 - target.e * target.e);
    spec.h_t = std::sqrt(p);
    spec.e_t = target.e;
    spec.i_t = target.i;
    spec.raan_t = target.raan;
    if (c == GlcCase::E) {
        const SpacecraftState st = state_from_coe(target);
        Vec3 h, ev;
        hvec_evec(st.r, st.v, h, ev);
        spec.hvec_t = h;
        spec.evec_t = ev;
    }
    return spec;
}

Vec glc_error_vector(const Vec3& r, const Vec3& v, const GlcSpec& spec) {
    const int n = glc_error_dim(spec.case_id);
    double w[6];
    error_vector_t<double>({r(0), r(1), r(2)}, {v(0), v(1), v(2)}, spec, w);
    Vec out(n);
    for (int i = 0; i < n; ++i) out(i) = w[i];
    return out;
}

double glc_clf_value(const Vec3& r, const Vec3& v, const Mat& k, const GlcSpec& spec) {
    return clf_value_t<double>({r(0), r(1), r(2)}, {v(0), v(1), v(2)}, k, spec);
}

Vec3 glc_clf_gradient_v(const Vec3& r, const Vec3& v, const Mat& k, const GlcSpec& spec) {
    using D = Dual<3>;
    const A3<D> rd = {D(r(0)), D(r(1)), D(r(2))};
    const A3<D> vd = {D::seed(v(0), 0), D::seed(v(1), 1), D::seed(v(2), 2)};
    const D val = clf_value_t<D>(rd, vd, k, spec);
    return Vec3(val.d[0], val.d[1], val.d[2]);
}

Vec3 glc_clf_gradient_v_analytic_e(const Vec3& r, const Vec3& v, const Mat& k,
                                   const GlcSpec& spec) {
    Vec3 h, ev;
    hvec_evec(r, v, h, ev);
    Vec w(6);
    w << h - spec.hvec_t, ev - spec.evec_t;
    const Vec kw = k * w;

    Eigen::Matrix3d skew_r;
    skew_r << 0, -r(2), r(1), r(2), 0, -r(0), -r(1), r(0), 0;
    // de/dv = 2 r v' - v r' - (r.v) I   (mu = 1)
    const Eigen::Matrix3d de_dv =
        2.0 * r * v.transpose() - v * r.transpose() - r.dot(v) * Eigen::Matrix3d::Identity();

    return skew_r.transpose() * kw.head<3>() + de_dv.transpose() * kw.tail<3>();
}

bool glc_thrust_direction(const Vec3& r, const Vec3& v, const Mat& k, const GlcSpec& spec,
                          Vec3& alpha_hat) {
    const Vec3 g = glc_clf_gradient_v(r, v, k, spec);
    const double gn = g.norm();
    if (gn <= 1e-14) {
        alpha_hat.setZero();
        return false;
    }
    alpha_hat = -g / gn;
    return true;
}

GlcRun glc_simulate(const Mat& k, const GlcProblem& prob) {
    const int n = glc_error_dim(prob.spec.case_id);
    if (k.rows() != n || k.cols() != n)
        throw DimensionMismatch("glc: penalty matrix must be " + std::to_string(n) + "x" +
                                std::to_string(n));

    const double mdot = prob.frame.mdot_canonical(prob.thrust.tmax_n, prob.thrust.isp_s);
    GlcRun run;

    Rhs rhs = [&](double, const Vec& s, Vec& ds) {
        const Vec3 r = s.segment<3>(0);
        const Vec3 v = s.segment<3>(3);
        const double m = s(6);
        Vec3 alpha;
        const bool thrusting = glc_thrust_direction(r, v, k, prob.spec, alpha);
        if (!thrusting) ++run.coast_samples;
        const double acc = prob.frame.accel_canonical(prob.thrust.tmax_n, m);
        const double rn = r.norm();
        const Vec3 thrust_acc = thrusting ? Vec3(acc * alpha) : Vec3(Vec3::Zero());
        ds.resize(7);
        ds.segment<3>(0) = v;
        ds.segment<3>(3) = -r / (rn * rn * rn) + thrust_acc;
        ds(6) = thrusting ? -mdot : 0.0;
    };

    EventSpec done;
    done.g = [&](double, const Vec& s) {
        const Vec w = glc_error_vector(s.segment<3>(0), s.segment<3>(3), prob.spec);
        return w.cwiseAbs().maxCoeff() - prob.event_tol;
    };
    done.direction = -1;
    done.terminal = true;

    IntegratorConfig cfg;
    cfg.abs_tol = prob.abs_tol;
    cfg.rel_tol = prob.rel_tol;
    cfg.max_time = prob.max_time_tu;

    Vec s0(7);
    s0 << prob.x0.r, prob.x0.v, prob.x0.m;

    run.trajectory = integrate(rhs, s0, cfg, {done});
    run.converged = run.trajectory.event_terminated;
    run.t_final_tu = run.trajectory.t_final();
    run.t_final_days = prob.frame.days_from_tu(run.t_final_tu);
    const Vec& sf = run.trajectory.x_final();
    run.m_final = sf(6);
    run.w_inf_final =
        glc_error_vector(sf.segment<3>(0), sf.segment<3>(3), prob.spec).cwiseAbs().maxCoeff();
    return run;
}

double glc_objective(const Mat& k, const GlcProblem& prob) {
    GlcRun run;
    try {
        run = glc_simulate(k, prob);
    } catch (const StiffnessFailure&) {
        return 1e6;
    }
    if (!run.converged) return 1e6 + run.w_inf_final;
    return run.t_final_days;
}

} // namespace gaintune

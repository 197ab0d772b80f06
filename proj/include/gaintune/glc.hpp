#pragma once

#include "gaintune/astro.hpp"
#include "gaintune/matrixkit.hpp"
#include "gaintune/propagate.hpp"

namespace gaintune {

enum class GlcCase { A, B, C, D, E };

GlcCase glc_case_from_name(const std::string& s);
int glc_error_dim(GlcCase c);

/// Targets in canonical units / radians. Scalar cases use (h, e, i, raan);
/// case E uses the momentum and eccentricity vectors.
struct GlcSpec {
    GlcCase case_id = GlcCase::A;
    double h_t = 0.0;
    double e_t = 0.0;
    double i_t = 0.0;
    double raan_t = 0.0;
    Vec3 hvec_t = Vec3::Zero();
    Vec3 evec_t = Vec3::Zero();

    /// Build targets for a case from its target orbit elements.
    static GlcSpec from_target(GlcCase c, const OrbitalElements& target);
};

struct GlcProblem {
    GlcSpec spec;
    SpacecraftState x0;   // canonical
    ThrustModel thrust;
    CanonicalFrame frame;
    double event_tol = 1e-3; // per-component error threshold, canonical
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    double max_time_tu = 0.0;
};

/// Case error vector w(r, v); zero exactly on the target set.
Vec glc_error_vector(const Vec3& r, const Vec3& v, const GlcSpec& spec);

/// CLF value 0.5 w'Kw.
double glc_clf_value(const Vec3& r, const Vec3& v, const Mat& k, const GlcSpec& spec);

/// dV/dv by forward-mode dual numbers through the w(r, v) map.
Vec3 glc_clf_gradient_v(const Vec3& r, const Vec3& v, const Mat& k, const GlcSpec& spec);

/// Analytic dV/dv for case E (dh/dv and de/dv in closed form); oracle for
/// the dual-number path.
Vec3 glc_clf_gradient_v_analytic_e(const Vec3& r, const Vec3& v, const Mat& k,
                                   const GlcSpec& spec);

/// Steepest-descent unit thrust direction -g/|g|. Returns false (coast)
/// when the gradient norm is below 1e-14.
bool glc_thrust_direction(const Vec3& r, const Vec3& v, const Mat& k, const GlcSpec& spec,
                          Vec3& alpha_hat);

struct GlcRun {
    bool converged = false;
    double t_final_tu = 0.0;
    double t_final_days = 0.0;
    double m_final = 0.0;
    double w_inf_final = 0.0; // max |w_i| at the end
    long coast_samples = 0;
    Trajectory trajectory;    // states (r, v, m)
};

GlcRun glc_simulate(const Mat& k, const GlcProblem& prob);

/// Minimum-time objective in days; timeout maps to 1e6 + terminal |w|_inf.
double glc_objective(const Mat& k, const GlcProblem& prob);

} // namespace gaintune

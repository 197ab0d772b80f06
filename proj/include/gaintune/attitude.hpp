#pragma once

#include "gaintune/matrixkit.hpp"
#include "gaintune/propagate.hpp"

namespace gaintune {

using Vec3d = Eigen::Vector3d;
using Vec4d = Eigen::Vector4d;

/// Rigid-spacecraft attitude maneuver definition. Angles are 3-2-1
/// yaw/pitch/roll (psi, theta, phi).
struct AttScenario {
    Vec3d inertia{10.0, 15.0, 20.0}; // kg m^2, principal axes
    Vec3d euler0_rad{60.0 * M_PI / 180.0, 80.0 * M_PI / 180.0, -60.0 * M_PI / 180.0};
    Vec3d rates0{0.1, -0.1, 0.1};    // rad/s
    double max_time = 100.0;
    double abs_tol = 1e-8;
    double rel_tol = 1e-8;
    double angle_tol = 1e-3; // rad, convergence event
    double rate_tol = 1e-4;  // rad/s

    static AttScenario detumbling();
    static AttScenario rest_to_rest();
};

/// Euler-angle dynamics: state (psi, theta, phi, p, q, r), torque u.
void euler_att_dynamics(const Eigen::Matrix<double, 6, 1>& x, const Vec3d& u,
                        const Vec3d& inertia, Eigen::Matrix<double, 6, 1>& dx);

/// Quaternion dynamics: state (q0, q1, q2, q3, p, q, r), scalar-first.
void quat_att_dynamics(const Eigen::Matrix<double, 7, 1>& x, const Vec3d& u,
                       const Vec3d& inertia, Eigen::Matrix<double, 7, 1>& dx);

Vec4d quat_from_euler321(const Vec3d& euler);
Vec3d euler321_from_quat(const Vec4d& q);

/// Linearization of the Euler-angle dynamics about zero state and torque.
Mat att_linearized_a();
Mat att_linearized_b(const Vec3d& inertia);

/// LQR gain for the linearized attitude dynamics; 3x6.
Mat lqr_gain(const Mat& qmat, const Mat& rmat, const Vec3d& inertia);

/// Error-quaternion vector part (shortest rotation, scalar part >= 0) and
/// the Lyapunov feedback torque U = -Kp q_e - Kd w.
Vec3d quat_error_vector(const Vec4d& q);
Vec3d quat_lyap_control(const Vec4d& q, const Vec3d& omega, const Mat& kp, const Mat& kd);

struct AttitudeRun {
    double j = 0.0;
    bool converged = false;
    bool singular = false; // pitch hit the kinematic singularity guard
    double t_final = 0.0;
    Trajectory trajectory;
};

AttitudeRun lqr_simulate(const Mat& qmat, const Mat& rmat, const AttScenario& sc);
AttitudeRun quat_lyap_simulate(const Mat& kp, const Mat& kd, const AttScenario& sc);

/// Energy objective 0.5 * int U'U dt, with the timeout / singularity penalty.
double lqr_objective(const Mat& qmat, const Mat& rmat, const AttScenario& sc);
double quat_lyap_objective(const Mat& kp, const Mat& kd, const AttScenario& sc);

} // namespace gaintune

#pragma once

#include <Eigen/Dense>

#include "gaintune/errors.hpp"

namespace gaintune {

using Vec3 = Eigen::Vector3d;

constexpr double kG0 = 9.80665; // m/s^2, sea-level standard gravity

/// Canonical length/time scaling that makes the gravitational parameter 1.
struct CanonicalFrame {
    double mu_km3_s2 = 0.0;
    double du_km = 0.0;
    double tu_s = 0.0; // always sqrt(du^3 / mu)

    static CanonicalFrame from_mu_du(double mu_km3_s2, double du_km);

    double days_from_tu(double t_tu) const { return t_tu * tu_s / 86400.0; }
    double tu_from_days(double days) const { return days * 86400.0 / tu_s; }
    double du_from_km(double km) const { return km / du_km; }

    /// Thrust acceleration in DU/TU^2 for thrust in newtons and mass in kg.
    double accel_canonical(double thrust_n, double mass_kg) const {
        return thrust_n / mass_kg * tu_s * tu_s / (du_km * 1000.0);
    }
    /// Mass-flow magnitude in kg/TU for thrust in newtons.
    double mdot_canonical(double thrust_n, double isp_s) const {
        return thrust_n / (isp_s * kG0) * tu_s;
    }
};

struct ThrustModel {
    double tmax_n = 0.0;
    double isp_s = 0.0;
    double m0_kg = 0.0;
};

/// Cartesian spacecraft state in canonical units, mass in kg.
struct SpacecraftState {
    Vec3 r = Vec3::Zero();
    Vec3 v = Vec3::Zero();
    double m = 1.0;
};

/// Classical elements, canonical a, radians. The ambiguity flags mark
/// near-circular / near-equatorial inputs resolved by convention
/// (argp := 0 / raan := 0 references) instead of failing.
struct OrbitalElements {
    double a = 0.0;
    double e = 0.0;
    double i = 0.0;
    double raan = 0.0;
    double argp = 0.0;
    double nu = 0.0;
    bool ambiguous_circular = false;
    bool ambiguous_equatorial = false;
};

/// Specific angular momentum and eccentricity vectors (mu = 1).
void hvec_evec(const Vec3& r, const Vec3& v, Vec3& h, Vec3& e);

OrbitalElements coe_from_state(const SpacecraftState& s);

/// Inverse of coe_from_state up to the degeneracy conventions; mass is
/// passed through. Throws UnsupportedOrbit for e >= 1 or a <= 0.
SpacecraftState state_from_coe(const OrbitalElements& coe, double mass_kg = 1.0);

SpacecraftState rotate_frame_x(const SpacecraftState& s, double angle);
OrbitalElements rotate_frame_x(const OrbitalElements& coe, double angle);

inline double wrap_two_pi(double x) {
    const double tp = 2.0 * M_PI;
    x = std::fmod(x, tp);
    return x < 0.0 ? x + tp : x;
}

/// Wrap to (-pi, pi].
inline double wrap_pi(double x) {
    x = std::fmod(x + M_PI, 2.0 * M_PI);
    if (x <= 0.0) x += 2.0 * M_PI;
    return x - M_PI;
}

} // namespace gaintune

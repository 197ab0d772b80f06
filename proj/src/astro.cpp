#include "gaintune/astro.hpp"

#include <cmath>

namespace gaintune {

namespace {

constexpr double kDegenTol = 1e-9;

Eigen::Matrix3d rot_x(double a) {
    Eigen::Matrix3d m;
    m << 1, 0, 0, 0, std::cos(a), -std::sin(a), 0, std::sin(a), std::cos(a);
    return m;
}

Eigen::Matrix3d rot_z(double a) {
    Eigen::Matrix3d m;
    m << std::cos(a), -std::sin(a), 0, std::sin(a), std::cos(a), 0, 0, 0, 1;
    return m;
}

// Oriented in-plane angle from `from` to `to` about plane normal `n_hat`.
double plane_angle(const Vec3& from, const Vec3& to, const Vec3& n_hat) {
    return wrap_two_pi(std::atan2(from.cross(to).dot(n_hat), from.dot(to)));
}

} // namespace

CanonicalFrame CanonicalFrame::from_mu_du(double mu_km3_s2, double du_km) {
    if (!(mu_km3_s2 > 0.0) || !(du_km > 0.0))
        throw ConfigError("CanonicalFrame: mu and DU must be positive");
    CanonicalFrame f;
    f.mu_km3_s2 = mu_km3_s2;
    f.du_km = du_km;
    f.tu_s = std::sqrt(du_km * du_km * du_km / mu_km3_s2);
    return f;
}

void hvec_evec(const Vec3& r, const Vec3& v, Vec3& h, Vec3& e) {
    const double rn = r.norm();
    h = r.cross(v);
    e = (v.squaredNorm() - 1.0 / rn) * r - r.dot(v) * v; // mu = 1
}

OrbitalElements coe_from_state(const SpacecraftState& s) {
    OrbitalElements coe;
    Vec3 h, evec;
    hvec_evec(s.r, s.v, h, evec);
    const double hn = h.norm();
    const double rn = s.r.norm();

    coe.a = 1.0 / (2.0 / rn - s.v.squaredNorm());
    coe.e = evec.norm();
    coe.i = std::acos(std::clamp(h.z() / hn, -1.0, 1.0));

    const Vec3 n(-h.y(), h.x(), 0.0); // z_hat x h
    const double nn = n.norm();
    const Vec3 h_hat = h / hn;

    coe.ambiguous_equatorial = nn < kDegenTol * hn;
    coe.ambiguous_circular = coe.e < kDegenTol;

    Vec3 node_ref;
    if (coe.ambiguous_equatorial) {
        coe.raan = 0.0;
        node_ref = Vec3::UnitX();
    } else {
        coe.raan = std::acos(std::clamp(n.x() / nn, -1.0, 1.0));
        if (n.y() < 0.0) coe.raan = 2.0 * M_PI - coe.raan;
        node_ref = n / nn;
    }

    Vec3 peri_ref;
    if (coe.ambiguous_circular) {
        coe.argp = 0.0;
        peri_ref = node_ref;
    } else {
        const Vec3 e_hat = evec / coe.e;
        coe.argp = plane_angle(node_ref, e_hat, h_hat);
        peri_ref = e_hat;
    }

    coe.nu = plane_angle(peri_ref, s.r / rn, h_hat);
    return coe;
}

SpacecraftState state_from_coe(const OrbitalElements& coe, double mass_kg) {
    if (!(coe.e >= 0.0) || coe.e >= 1.0)
        throw UnsupportedOrbit("state_from_coe: eccentricity " + std::to_string(coe.e) +
                               " outside [0,1)");
    if (!(coe.a > 0.0))
        throw UnsupportedOrbit("state_from_coe: semi-major axis must be positive");

    const double p = coe.a * (1.0 - coe.e * coe.e);
    const double rn = p / (1.0 + coe.e * std::cos(coe.nu));
    const double sqrt_mu_p = std::sqrt(1.0 / p); // mu = 1

    const Vec3 r_pf(rn * std::cos(coe.nu), rn * std::sin(coe.nu), 0.0);
    const Vec3 v_pf(-sqrt_mu_p * std::sin(coe.nu), sqrt_mu_p * (coe.e + std::cos(coe.nu)), 0.0);

    const Eigen::Matrix3d rot = rot_z(coe.raan) * rot_x(coe.i) * rot_z(coe.argp);
    SpacecraftState s;
    s.r = rot * r_pf;
    s.v = rot * v_pf;
    s.m = mass_kg;
    return s;
}

SpacecraftState rotate_frame_x(const SpacecraftState& s, double angle) {
    const Eigen::Matrix3d m = rot_x(angle);
    SpacecraftState out;
    out.r = m * s.r;
    out.v = m * s.v;
    out.m = s.m;
    return out;
}

OrbitalElements rotate_frame_x(const OrbitalElements& coe, double angle) {
    return coe_from_state(rotate_frame_x(state_from_coe(coe), angle));
}

} // namespace gaintune

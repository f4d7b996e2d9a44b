#include "sforge/kepler.hpp"

#include <cmath>
#include <stdexcept>

namespace sforge::kepler {

AuxiliaryMasses auxiliary_masses(const MassParameters& mp) {
    AuxiliaryMasses am;
    am.M1 = mp.mbar0 + mp.mu * mp.mbar1;
    am.M2 = mp.mbar0 + mp.mu * mp.mbar2;
    am.m1 = mp.mbar0 * mp.mbar1 / am.M1;
    am.m2 = mp.mbar0 * mp.mbar2 / am.M2;
    return am;
}

double kepler_energy(double M, double m, double Lambda) {
    return -M * M * m * m * m / (2.0 * Lambda * Lambda);
}

double kepler_frequency(double M, double m, double Lambda) {
    return M * M * m * m * m / (Lambda * Lambda * Lambda);
}

double semi_major_axis(double M, double m, double Lambda) {
    const double r = Lambda / m;
    return r * r / M;
}

double lambda_from_axis(double M, double m, double a) {
    return m * std::sqrt(M * a);
}

double solve_kepler(double e, double rhs) {
    if (!(e >= 0.0 && e < 1.0)) {
        throw std::domain_error("solve_kepler: eccentricity must lie in [0, 1)");
    }
    constexpr double tol = 1e-13;
    constexpr int max_newton = 50;

    // Reduce to rhs in (-pi, pi] and shift back at the end; the equation is
    // equivariant under rhs -> rhs + 2 pi k, zeta -> zeta + 2 pi k.
    const double shift = rhs - wrap_angle(rhs);
    const double m_red = rhs - shift;

    double z = m_red + e * std::sin(m_red);
    for (int it = 0; it < max_newton; ++it) {
        const double f = z - e * std::sin(z) - m_red;
        if (std::abs(f) < tol) return z + shift;
        const double fp = 1.0 - e * std::cos(z);
        const double step = f / fp;
        // Newton can overshoot badly only for e -> 1; clamp to keep it sane.
        z -= std::abs(step) > 1.0 ? (step > 0 ? 1.0 : -1.0) : step;
    }

    // Bisection fallback: f is increasing in z, root within [m-e, m+e].
    double lo = m_red - e - 1e-12, hi = m_red + e + 1e-12;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double f = mid - e * std::sin(mid) - m_red;
        if (std::abs(f) < tol) return mid + shift;
        (f > 0.0 ? hi : lo) = mid;
    }
    throw std::runtime_error("solve_kepler: no convergence");
}

double eccentricity_from_actions(double Lambda, double eta, double xi) {
    const double t = eta * eta + xi * xi;  // = 2 * action
    const double half = t / (2.0 * Lambda);
    const double e2 = t / Lambda - half * half;
    if (e2 < 0.0 || half >= 1.0) {
        throw std::domain_error("eccentricity_from_actions: outside elliptic domain");
    }
    return e2;
}

EllipticOrbit EllipticOrbit::from_elements(double a, double e, double node, double incl,
                                           double argp, double grav_param, double mass) {
    EllipticOrbit orb;
    orb.a = a;
    orb.e = e;
    orb.grav_param = grav_param;
    orb.mass = mass;
    orb.P = rot3(node, rot1(incl, rot3(argp, Vec3{1.0, 0.0, 0.0})));
    orb.Q = rot3(node, rot1(incl, rot3(argp, Vec3{0.0, 1.0, 0.0})));
    orb.W = rot3(node, rot1(incl, Vec3{0.0, 0.0, 1.0}));
    return orb;
}

double EllipticOrbit::mean_motion() const { return std::sqrt(grav_param / (a * a * a)); }

Vec3 EllipticOrbit::position_at(double ell) const {
    const double z = solve_kepler(e, ell);
    const double cz = std::cos(z), sz = std::sin(z);
    const double b = std::sqrt(1.0 - e * e);
    return P * (a * (cz - e)) + Q * (a * b * sz);
}

std::pair<Vec3, Vec3> EllipticOrbit::state_at(double ell) const {
    const double z = solve_kepler(e, ell);
    const double cz = std::cos(z), sz = std::sin(z);
    const double b = std::sqrt(1.0 - e * e);
    const Vec3 x = P * (a * (cz - e)) + Q * (a * b * sz);
    const double n = mean_motion();
    const double vf = a * n / (1.0 - e * cz);
    const Vec3 v = P * (-vf * sz) + Q * (vf * b * cz);
    return {x, v * mass};
}

Vec3 EllipticOrbit::angular_momentum() const {
    // |x cross m v| = m sqrt(M a (1-e^2)) along the orbit normal.
    return W * (mass * std::sqrt(grav_param * a * (1.0 - e * e)));
}

}  // namespace sforge::kepler

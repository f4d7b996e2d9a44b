#pragma once

#include "sforge/vec3.hpp"

#include <utility>

namespace sforge::kepler {

// ---------------------------------------------------------------------------
// Mass bookkeeping for the heliocentric two-planet system.
//
// The star has mass mbar0; the planets have masses mu*mbar1, mu*mbar2.  Each
// heliocentric two-body block uses the auxiliary masses
//     M_i = mbar0 + mu*mbar_i,   m_i = mbar0*mbar_i / (mbar0 + mu*mbar_i),
// so the block Hamiltonian |y|^2/(2 m_i) - m_i M_i/|x| generates the Newtonian
// acceleration xdd = -M_i x/|x|^3 for the heliocentric coordinate x.
// ---------------------------------------------------------------------------
struct MassParameters {
    double mbar0 = 1.0;
    double mbar1 = 1.0;
    double mbar2 = 1.0;
    double mu = 1e-3;
};

struct AuxiliaryMasses {
    double M1 = 0.0, M2 = 0.0;  // gravitational parameters (G = 1)
    double m1 = 0.0, m2 = 0.0;  // reduced masses
};

AuxiliaryMasses auxiliary_masses(const MassParameters& mp);

// Two-body energy as a function of the circular action:  h = -M^2 m^3 / (2 L^2).
double kepler_energy(double M, double m, double Lambda);

// dh/dLambda = M^2 m^3 / Lambda^3 (the Keplerian mean motion).
double kepler_frequency(double M, double m, double Lambda);

// Semi-major axis from the circular action:  a = (1/M) (Lambda/m)^2.
double semi_major_axis(double M, double m, double Lambda);

// Inverse of the above:  Lambda = m sqrt(M a).
double lambda_from_axis(double M, double m, double a);

// Solve zeta - e*sin(zeta) = rhs for zeta, 0 <= e < 1.  Newton iteration from
// the guess rhs + e*sin(rhs); falls back to bisection if Newton stalls.
// Residual tolerance 1e-13; result wrapped consistently with rhs.
double solve_kepler(double e, double rhs);

// e^2 = (eta^2+xi^2)/Lambda - ((eta^2+xi^2)/(2 Lambda))^2.
double eccentricity_from_actions(double Lambda, double eta, double xi);

// ---------------------------------------------------------------------------
// A spatially oriented elliptic two-body orbit.  P points to perihelion, Q is
// the in-plane quarter-turn ahead, W = P x Q is the orbit normal.  grav_param
// is the M of the block above, mass the m (momenta are y = m v).
// ---------------------------------------------------------------------------
struct EllipticOrbit {
    double a = 1.0;
    double e = 0.0;
    double grav_param = 1.0;
    double mass = 1.0;
    Vec3 P{1.0, 0.0, 0.0};
    Vec3 Q{0.0, 1.0, 0.0};
    Vec3 W{0.0, 0.0, 1.0};

    // Orientation from node longitude, inclination, argument of perihelion:
    // columns of R3(node) R1(incl) R3(argp).
    static EllipticOrbit from_elements(double a, double e, double node, double incl,
                                       double argp, double grav_param, double mass);

    double mean_motion() const;
    // Position / momentum at mean anomaly ell (solves the Kepler equation).
    Vec3 position_at(double ell) const;
    std::pair<Vec3, Vec3> state_at(double ell) const;  // (x, y)
    // Orbital angular momentum x cross y (constant along the orbit).
    Vec3 angular_momentum() const;
};

}  // namespace sforge::kepler

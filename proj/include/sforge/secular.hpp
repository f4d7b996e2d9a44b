#pragma once

#include "sforge/kepler.hpp"
#include "sforge/vec3.hpp"

#include <array>
#include <functional>

namespace sforge::secular {

// Secular (slow) coordinates of the two-planet system at fixed circular
// actions Lambda.  (p2, q2) are identically zero: the invariable plane is
// normal to k3, so (p1, q1) carry the mutual-inclination degree of freedom.
struct SecularPoint {
    double Lambda1 = 1.0, Lambda2 = 2.0;
    double eta1 = 0.0, xi1 = 0.0;
    double eta2 = 0.0, xi2 = 0.0;
    double p1 = 0.0, q1 = 0.0;
};

// The two oriented Keplerian ellipses realized by a SecularPoint: the classical
// reduction-of-the-nodes chart.  Gamma_i = Lambda_i - (eta_i^2+xi_i^2)/2 are the
// orbital angular momenta, G = Gamma1 + Gamma2 - (p1^2+q1^2)/2 the total one
// (along k3); the two planes intersect the invariable plane at opposite nodes.
struct OrbitPair {
    kepler::EllipticOrbit o1, o2;
    double Gamma1 = 0.0, Gamma2 = 0.0, G = 0.0;
};

OrbitPair embed(const SecularPoint& pt, const kepler::MassParameters& mp);

// (1/2pi) Int d zeta / (1 - e cos zeta), by periodic trapezoidal quadrature.
double ring_average(double e, int nodes = 512);

// Appendix-style ring averages of the in-plane coordinates with the mean-anomaly
// measure (1 - e cos zeta) d zeta:
//   s0 = <x1^2 + x2^2>/a^2 = 1 + (3/2) e^2,
//   s2 = <x1^2 - x2^2>/a^2 = (5/2) e^2,
//   cross = <x1 x2>/a^2 = 0.
struct RingAverages {
    double s0 = 0.0, s2 = 0.0, cross = 0.0;
};
RingAverages appendix_b_averages(double e, int nodes = 512);

// Quadrupole kernel of the interaction between the two orbits:
//   [3 (x1.x2)^2 - |x1|^2 |x2|^2] / (2 |x2|^5).
double quadrupole_kernel(const Vec3& x1, const Vec3& x2);

// Mean over (l1, l2) in T^2 of the quadrupole kernel, tensor trapezoidal rule.
// Performs a node-doubling convergence check (throws on relative change > 1e-8).
double double_average_f2(const SecularPoint& pt, const kepler::MassParameters& mp,
                         int nodes = 256);

// Single average over l2 of the quadrupole kernel at fixed l1 (quadrature).
double p1_single_average(const OrbitPair& orbits, double ell1, int nodes = 256);

// Closed form of the same single average:
//   -(M2 m2^2/4) (3 Theta^2 - |C2|^2) r1^2 / |C2|^4 * <1/r2^2>_{l2},
// with Theta = C2 . x1/|x1| and <1/r2^2> = ring_average(e2)/a2^2.
double p1_closed_form(const OrbitPair& orbits, double ell1);

// Closed form of the double average: the l1 average of the quadrupole moment is
// evaluated with the ring averages above, the l2 average via ring_average.
double closed_form_f2(const OrbitPair& orbits);

// Planar / vertical split of the second-order secular energy (mass prefactors
// included, so planar + vertical = -mbar1*mbar2 * double_average_f2):
//   planar   = -(1/4) mbar1 mbar2 (a1^2/a2^3) ring(e2)/(1-t2/Lambda2)^2 (1+(3/2)e1^2)
//   vertical = +(3/4) mbar1 mbar2 (a1^2/a2^3) ring(e2)/(1-t2/Lambda2)^2 <(x1/a1 . C2hat)^2>_{l1}
struct SplitEnergy {
    double planar = 0.0, vertical = 0.0;
};
SplitEnergy planar_vertical_split(const SecularPoint& pt, const kepler::MassParameters& mp);

// Coefficients c0..c_deg of the fit of
//   g(eps) = <1/|eps x1/a1 - x2|>_{T^2}
// by a polynomial in eps on Chebyshev nodes in [-eps_max, eps_max]; c1 must
// vanish and c2 equals double_average_f2 / a1^2.
std::array<double, 7> epsilon_expansion(const SecularPoint& pt,
                                        const kepler::MassParameters& mp, double eps_max,
                                        int nodes = 128);

// <y1.y2>_{T^2}: the average of the indirect part (vanishes identically).
double indirect_average(const SecularPoint& pt, const kepler::MassParameters& mp,
                        int nodes = 128);

// Diagonal phase rotation z -> e^{-ig} z on all three complex secular pairs.
SecularPoint rotate_phases(const SecularPoint& pt, double g);

// Phase rotation of the (eta2, xi2) pair only.
SecularPoint rotate_phase2(const SecularPoint& pt, double g);

}  // namespace sforge::secular

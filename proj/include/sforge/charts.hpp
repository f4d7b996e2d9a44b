#pragma once

#include "sforge/vec3.hpp"

#include <array>
#include <string>

namespace sforge::charts {

// Cartesian two-planet state (heliocentric momenta y and coordinates x).
struct CartesianState {
    Vec3 y1, y2, x1, x2;
};

// The 12-variable symplectic chart: six momenta paired with six coordinates,
//   (C3, zeta), (G, g), (R1, r1), (Theta, theta), (R2, r2), (Phi2, phi2).
// C3 = C.k3, G = |C|, R_i = radial momenta, Theta = C2.x1/|x1|, Phi2 = |C2|.
struct Chart12Point {
    double C3 = 0.0, G = 0.0, R1 = 0.0, Theta = 0.0, R2 = 0.0, Phi2 = 0.0;
    double zeta = 0.0, g = 0.0, r1 = 0.0, theta = 0.0, r2 = 0.0, phi2 = 0.0;

    std::array<double, 12> as_array() const {
        return {C3, G, R1, Theta, R2, Phi2, zeta, g, r1, theta, r2, phi2};
    }
    static Chart12Point from_array(const std::array<double, 12>& v) {
        return {v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7], v[8], v[9], v[10], v[11]};
    }
};

// The auxiliary node vectors the chart angles are measured against.
struct AngularMomenta {
    Vec3 C, C1, C2;   // total and per-planet angular momenta
    Vec3 nu1, nu2, nu3;  // nu1 = k3 x C, nu2 = C x x1, nu3 = x1 x C2
};

// Positively oriented angle from u to v about the axis w (right-hand rule),
// in (-pi, pi].  Requires u, v orthogonal to w within tolerance (relative).
double oriented_angle(const Vec3& u, const Vec3& v, const Vec3& w, double tol = 1e-9);

AngularMomenta angular_momenta(const CartesianState& s);

// Cartesian -> chart.  Throws std::domain_error when any of |C|, |C2|, |nu1|,
// |nu2|, |nu3| falls below 1e-8 x its natural scale (nodal degeneracies).
Chart12Point chart_inverse(const CartesianState& s);

// Chart -> Cartesian.  Requires |C3| < G, |Theta| < min(G, Phi2), r1, r2 > 0.
CartesianState chart_forward(const Chart12Point& p);

// Finite-difference symplecticity deviation ||J^T S J - S||_inf of chart_forward
// at p, with the canonical pairing above and w = (y1, y2; x1, x2).
double check_symplectic(const Chart12Point& p, double h = 1e-5);

// The first-multipole ("dipole") interaction Hamiltonian of planet 2 in chart
// variables:
//   R2^2/(2 m2) - M2 m2/r2 + Phi2^2/(2 m2 r2^2)
//     - M2 m2 alpha (r1/r2^2) sqrt(1 - (Theta/Phi2)^2) sin(phi2).
double dipole_hamiltonian(const Chart12Point& p, double M2, double m2, double alpha);

// Cartesian oracle for the same Hamiltonian:
//   |y2|^2/(2 m2) - M2 m2/|x2| - alpha M2 m2 (x1.x2)/|x2|^3.
double dipole_hamiltonian_cartesian(const CartesianState& s, double M2, double m2,
                                    double alpha);

// Flat 12-field JSON record (de)serialization.
std::string chart_point_to_json(const Chart12Point& p);
Chart12Point chart_point_from_json(const std::string& text);

}  // namespace sforge::charts

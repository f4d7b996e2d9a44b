#include "sforge/secular.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sforge::secular {

namespace {

double clamp1(double x) { return std::clamp(x, -1.0, 1.0); }

// Mean over the 2-torus on an N x N uniform grid (trapezoidal rule; spectrally
// accurate for smooth periodic integrands).
double torus_mean(const std::function<double(double, double)>& f, int nodes) {
    const double h = 2.0 * M_PI / nodes;
    double acc = 0.0;
    for (int i = 0; i < nodes; ++i) {
        double row = 0.0;
        for (int j = 0; j < nodes; ++j) row += f(i * h, j * h);
        acc += row;
    }
    return acc / (static_cast<double>(nodes) * nodes);
}

}  // namespace

OrbitPair embed(const SecularPoint& pt, const kepler::MassParameters& mp) {
    const auto am = kepler::auxiliary_masses(mp);
    const double t1 = 0.5 * (pt.eta1 * pt.eta1 + pt.xi1 * pt.xi1);
    const double t2 = 0.5 * (pt.eta2 * pt.eta2 + pt.xi2 * pt.xi2);
    const double t3 = 0.5 * (pt.p1 * pt.p1 + pt.q1 * pt.q1);
    if (t1 >= pt.Lambda1 || t2 >= pt.Lambda2) {
        throw std::domain_error("embed: eccentricity actions exceed Lambda");
    }
    OrbitPair op;
    op.Gamma1 = pt.Lambda1 - t1;
    op.Gamma2 = pt.Lambda2 - t2;
    op.G = op.Gamma1 + op.Gamma2 - t3;
    if (op.G < std::abs(op.Gamma1 - op.Gamma2)) {
        throw std::domain_error("embed: inclination action outside elliptic domain");
    }

    const double e1 = std::sqrt(kepler::eccentricity_from_actions(pt.Lambda1, pt.eta1, pt.xi1));
    const double e2 = std::sqrt(kepler::eccentricity_from_actions(pt.Lambda2, pt.eta2, pt.xi2));
    const double a1 = kepler::semi_major_axis(am.M1, am.m1, pt.Lambda1);
    const double a2 = kepler::semi_major_axis(am.M2, am.m2, pt.Lambda2);
    if (a1 / a2 > 0.5) {
        throw std::domain_error("embed: semi-major-axis ratio above hierarchical bound 0.5");
    }

    // Angles of the two orbital planes against the invariable (k3) plane, from
    // the (Gamma1, Gamma2, G) triangle; the planes share opposite nodes.
    const double inc1 =
        std::acos(clamp1((op.G * op.G + op.Gamma1 * op.Gamma1 - op.Gamma2 * op.Gamma2) /
                         (2.0 * op.G * op.Gamma1)));
    const double inc2 =
        std::acos(clamp1((op.G * op.G + op.Gamma2 * op.Gamma2 - op.Gamma1 * op.Gamma1) /
                         (2.0 * op.G * op.Gamma2)));
    const double peri1 = (t1 > 0.0) ? -std::atan2(pt.xi1, pt.eta1) : 0.0;
    const double peri2 = (t2 > 0.0) ? -std::atan2(pt.xi2, pt.eta2) : 0.0;
    const double node1 = (t3 > 0.0) ? -std::atan2(pt.q1, pt.p1) : 0.0;
    const double node2 = node1 + M_PI;

    op.o1 = kepler::EllipticOrbit::from_elements(a1, e1, node1, inc1, peri1 - node1, am.M1,
                                                 am.m1);
    op.o2 = kepler::EllipticOrbit::from_elements(a2, e2, node2, inc2, peri2 - node2, am.M2,
                                                 am.m2);
    return op;
}

double ring_average(double e, int nodes) {
    if (!(e >= 0.0 && e < 1.0)) throw std::domain_error("ring_average: need 0 <= e < 1");
    double acc = 0.0;
    const double h = 2.0 * M_PI / nodes;
    for (int i = 0; i < nodes; ++i) acc += 1.0 / (1.0 - e * std::cos(i * h));
    return acc / nodes;
}

RingAverages appendix_b_averages(double e, int nodes) {
    if (!(e >= 0.0 && e < 1.0)) {
        throw std::domain_error("appendix_b_averages: need 0 <= e < 1");
    }
    const double b = std::sqrt(1.0 - e * e);
    const double h = 2.0 * M_PI / nodes;
    double s0 = 0.0, s2 = 0.0, cr = 0.0;
    for (int i = 0; i < nodes; ++i) {
        const double z = i * h;
        const double c = std::cos(z), s = std::sin(z);
        const double w = 1.0 - e * c;          // mean-anomaly measure d l = w d zeta
        const double u = c - e, v = b * s;     // in-plane coordinates / a
        s0 += (u * u + v * v) * w;
        s2 += (u * u - v * v) * w;
        cr += u * v * w;
    }
    return {s0 / nodes, s2 / nodes, cr / nodes};
}

double quadrupole_kernel(const Vec3& x1, const Vec3& x2) {
    const double d = dot(x1, x2);
    const double r2sq = norm2(x2);
    const double r2 = std::sqrt(r2sq);
    return (3.0 * d * d - norm2(x1) * r2sq) / (2.0 * r2sq * r2sq * r2);
}

namespace {

double double_average_once(const OrbitPair& op, int nodes) {
    return torus_mean(
        [&](double l1, double l2) {
            return quadrupole_kernel(op.o1.position_at(l1), op.o2.position_at(l2));
        },
        nodes);
}

}  // namespace

double double_average_f2(const SecularPoint& pt, const kepler::MassParameters& mp,
                         int nodes) {
    if (nodes < 32) throw std::domain_error("double_average_f2: need nodes >= 32");
    const OrbitPair op = embed(pt, mp);
    const double coarse = double_average_once(op, nodes);
    const double fine = double_average_once(op, 2 * nodes);
    const double scale = std::max(std::abs(fine), 1e-300);
    if (std::abs(fine - coarse) > 1e-8 * scale) {
        throw std::runtime_error("double_average_f2: quadrature not converged");
    }
    return fine;
}

double p1_single_average(const OrbitPair& orbits, double ell1, int nodes) {
    const Vec3 x1 = orbits.o1.position_at(ell1);
    double acc = 0.0;
    const double h = 2.0 * M_PI / nodes;
    for (int j = 0; j < nodes; ++j) {
        acc += quadrupole_kernel(x1, orbits.o2.position_at(j * h));
    }
    return acc / nodes;
}

double p1_closed_form(const OrbitPair& orbits, double ell1) {
    const Vec3 x1 = orbits.o1.position_at(ell1);
    const double r1 = norm(x1);
    const Vec3 C2 = orbits.o2.angular_momentum();
    const double Phi2 = norm(C2);
    const double Theta = dot(C2, x1) / r1;
    const double M2 = orbits.o2.grav_param, m2 = orbits.o2.mass;
    const double avg_inv_r2sq = ring_average(orbits.o2.e) / (orbits.o2.a * orbits.o2.a);
    return -(M2 * m2 * m2 / 4.0) * (3.0 * Theta * Theta - Phi2 * Phi2) * r1 * r1 /
           (Phi2 * Phi2 * Phi2 * Phi2) * avg_inv_r2sq;
}

namespace {

// <(n . x1)^2>_{l1} / a1^2 for a unit vector n in the plane of orbit 1 at angle
// w from perihelion:  (1/2) (1 - e^2 + 5 e^2 cos^2 w); and the mutual-node
// geometry shared by the closed forms.
struct VerticalGeometry {
    double sinJ_sq = 0.0;   // mutual inclination
    double node_factor = 0.0;  // (1/2)(1 - e1^2 + 5 e1^2 cos^2 w)
};

VerticalGeometry vertical_geometry(const OrbitPair& op) {
    VerticalGeometry vg;
    // In-plane projection of the outer orbit normal: |W2 - (W2.W1) W1| = sin J,
    // and its direction (a quarter turn past the mutual node) is the in-plane
    // axis along which C2 has a component.
    const Vec3 par = op.o2.W - dot(op.o2.W, op.o1.W) * op.o1.W;
    vg.sinJ_sq = norm2(par);
    if (vg.sinJ_sq < 1e-28) {
        vg.node_factor = 0.0;  // coplanar: the vertical term carries sin^2 J = 0
        return vg;
    }
    const double cw = dot(par / std::sqrt(vg.sinJ_sq), op.o1.P);
    const double e1sq = op.o1.e * op.o1.e;
    vg.node_factor = 0.5 * (1.0 - e1sq + 5.0 * e1sq * cw * cw);
    return vg;
}

}  // namespace

double closed_form_f2(const OrbitPair& orbits) {
    const Vec3 C2 = orbits.o2.angular_momentum();
    const double Phi2sq = norm2(C2);
    const double a1 = orbits.o1.a, e1 = orbits.o1.e;
    const VerticalGeometry vg = vertical_geometry(orbits);

    // <(C2 . x1)^2>_{l1} and <r1^2>_{l1} in closed form (ring averages).
    const double avg_Cx = Phi2sq * vg.sinJ_sq * a1 * a1 * vg.node_factor;
    const double avg_r1sq = a1 * a1 * (1.0 + 1.5 * e1 * e1);
    const double M2 = orbits.o2.grav_param, m2 = orbits.o2.mass;
    const double avg_inv_r2sq = ring_average(orbits.o2.e) / (orbits.o2.a * orbits.o2.a);
    return -(M2 * m2 * m2 / 4.0) * (3.0 * avg_Cx - avg_r1sq * Phi2sq) /
           (Phi2sq * Phi2sq) * avg_inv_r2sq;
}

SplitEnergy planar_vertical_split(const SecularPoint& pt,
                                  const kepler::MassParameters& mp) {
    const OrbitPair op = embed(pt, mp);
    const double t2 = 0.5 * (pt.eta2 * pt.eta2 + pt.xi2 * pt.xi2);
    const double a1 = op.o1.a, a2 = op.o2.a, e1 = op.o1.e;
    const double shrink = 1.0 - t2 / pt.Lambda2;
    const double prefac = mp.mbar1 * mp.mbar2 * (a1 * a1 / (a2 * a2 * a2)) *
                          ring_average(op.o2.e) / (shrink * shrink);
    const VerticalGeometry vg = vertical_geometry(op);
    SplitEnergy se;
    se.planar = -0.25 * prefac * (1.0 + 1.5 * e1 * e1);
    se.vertical = 0.75 * prefac * vg.sinJ_sq * vg.node_factor;
    return se;
}

std::array<double, 7> epsilon_expansion(const SecularPoint& pt,
                                        const kepler::MassParameters& mp, double eps_max,
                                        int nodes) {
    const OrbitPair op = embed(pt, mp);
    const double a1 = op.o1.a;
    auto g = [&](double eps) {
        return torus_mean(
            [&](double l1, double l2) {
                const Vec3 d = op.o1.position_at(l1) * (eps / a1) - op.o2.position_at(l2);
                return 1.0 / norm(d);
            },
            nodes);
    };
    // Degree-6 least-squares fit on 9 Chebyshev nodes, in the scaled variable
    // s = eps/eps_max for conditioning.
    constexpr int npts = 9, deg = 6;
    std::array<double, npts> s{}, val{};
    for (int j = 0; j < npts; ++j) {
        s[j] = std::cos(M_PI * j / (npts - 1));
        val[j] = g(eps_max * s[j]);
    }
    double A[deg + 1][deg + 2] = {};
    for (int r = 0; r <= deg; ++r) {
        for (int c = 0; c <= deg; ++c) {
            for (int j = 0; j < npts; ++j) A[r][c] += std::pow(s[j], r + c);
        }
        for (int j = 0; j < npts; ++j) A[r][deg + 1] += std::pow(s[j], r) * val[j];
    }
    // Gaussian elimination with partial pivoting on the (deg+1) normal system.
    for (int c = 0; c <= deg; ++c) {
        int piv = c;
        for (int r = c + 1; r <= deg; ++r) {
            if (std::abs(A[r][c]) > std::abs(A[piv][c])) piv = r;
        }
        std::swap(A[c], A[piv]);
        for (int r = 0; r <= deg; ++r) {
            if (r == c) continue;
            const double f = A[r][c] / A[c][c];
            for (int k = c; k <= deg + 1; ++k) A[r][k] -= f * A[c][k];
        }
    }
    std::array<double, 7> coeff{};
    for (int r = 0; r <= deg; ++r) {
        coeff[r] = A[r][deg + 1] / A[r][r] / std::pow(eps_max, r);
    }
    return coeff;
}

double indirect_average(const SecularPoint& pt, const kepler::MassParameters& mp,
                        int nodes) {
    const OrbitPair op = embed(pt, mp);
    return torus_mean(
        [&](double l1, double l2) {
            return dot(op.o1.state_at(l1).second, op.o2.state_at(l2).second);
        },
        nodes);
}

namespace {

void rotate_pair(double& a, double& b, double g) {
    // (a + i b) -> e^{-i g} (a + i b)
    const double c = std::cos(g), s = std::sin(g);
    const double na = c * a + s * b;
    const double nb = -s * a + c * b;
    a = na;
    b = nb;
}

}  // namespace

SecularPoint rotate_phases(const SecularPoint& pt, double g) {
    SecularPoint r = pt;
    rotate_pair(r.eta1, r.xi1, g);
    rotate_pair(r.eta2, r.xi2, g);
    rotate_pair(r.p1, r.q1, g);
    return r;
}

SecularPoint rotate_phase2(const SecularPoint& pt, double g) {
    SecularPoint r = pt;
    rotate_pair(r.eta2, r.xi2, g);
    return r;
}

}  // namespace sforge::secular

#include "sforge/charts.hpp"

#include <json.hpp>

#include <cmath>
#include <stdexcept>

namespace sforge::charts {

double oriented_angle(const Vec3& u, const Vec3& v, const Vec3& w, double tol) {
    const double nu = norm(u), nv = norm(v), nw = norm(w);
    if (nu == 0.0 || nv == 0.0 || nw == 0.0) {
        throw std::domain_error("oriented_angle: zero vector");
    }
    if (std::abs(dot(u, w)) > tol * nu * nw || std::abs(dot(v, w)) > tol * nv * nw) {
        throw std::domain_error("oriented_angle: arguments not orthogonal to axis");
    }
    const Vec3 wn = w / nw;
    const double s = dot(wn, cross(u, v));
    const double c = dot(u, v);
    double a = std::atan2(s, c);
    if (a <= -M_PI) a = M_PI;  // land exactly on the (-pi, pi] branch
    return a;
}

AngularMomenta angular_momenta(const CartesianState& s) {
    AngularMomenta am;
    am.C1 = cross(s.x1, s.y1);
    am.C2 = cross(s.x2, s.y2);
    am.C = am.C1 + am.C2;
    am.nu1 = cross(Vec3{0.0, 0.0, 1.0}, am.C);
    am.nu2 = cross(am.C, s.x1);
    am.nu3 = cross(s.x1, am.C2);
    return am;
}

namespace {

// Degeneracy guard: each node vector must clear 1e-8 of its natural scale.
void check_domain(const CartesianState& s, const AngularMomenta& am) {
    constexpr double eps = 1e-8;
    const double r1 = norm(s.x1), r2 = norm(s.x2);
    const double scaleC = norm(am.C1) + norm(am.C2);
    if (norm(am.C) < eps * scaleC) throw std::domain_error("chart_inverse: |C| degenerate");
    if (norm(am.C2) < eps * (r2 * norm(s.y2) + 1e-300)) {
        throw std::domain_error("chart_inverse: |C2| degenerate");
    }
    if (norm(am.nu1) < eps * norm(am.C)) {
        throw std::domain_error("chart_inverse: |nu1| degenerate");
    }
    if (norm(am.nu2) < eps * norm(am.C) * r1) {
        throw std::domain_error("chart_inverse: |nu2| degenerate");
    }
    if (norm(am.nu3) < eps * norm(am.C2) * r1) {
        throw std::domain_error("chart_inverse: |nu3| degenerate");
    }
}

}  // namespace

Chart12Point chart_inverse(const CartesianState& s) {
    const AngularMomenta am = angular_momenta(s);
    check_domain(s, am);

    const double r1 = norm(s.x1), r2 = norm(s.x2);
    const Vec3 x1h = s.x1 / r1, x2h = s.x2 / r2;

    Chart12Point p;
    p.C3 = am.C.z;
    p.G = norm(am.C);
    p.R1 = dot(s.y1, x1h);
    p.Theta = dot(am.C2, x1h);
    p.R2 = dot(s.y2, x2h);
    p.Phi2 = norm(am.C2);
    p.r1 = r1;
    p.r2 = r2;
    // Node angles, each measured about the axis the two arguments are normal to.
    const Vec3 k1{1.0, 0.0, 0.0}, k3{0.0, 0.0, 1.0};
    p.zeta = oriented_angle(k1, am.nu1, k3);
    p.g = oriented_angle(am.nu1, am.nu2, am.C);
    p.theta = oriented_angle(am.nu2, am.nu3, s.x1);
    p.phi2 = oriented_angle(am.nu3, s.x2, am.C2);
    return p;
}

namespace {

// Compose the chart's rotation chain applied to a vector expressed in the
// innermost frame.  depth: 1 -> R3(zeta)R1(i); 2 -> ...R3(g)R1(i1);
// 3 -> ...R3(theta)R1(i2).
Vec3 chain(const Chart12Point& p, double i, double i1, double i2, int depth, Vec3 v) {
    if (depth >= 3) v = rot3(p.theta, rot1(i2, v));
    if (depth >= 2) v = rot3(p.g, rot1(i1, v));
    return rot3(p.zeta, rot1(i, v));
}

}  // namespace

CartesianState chart_forward(const Chart12Point& p) {
    if (!(p.G > 0.0 && p.Phi2 > 0.0 && p.r1 > 0.0 && p.r2 > 0.0)) {
        throw std::domain_error("chart_forward: G, Phi2, r1, r2 must be positive");
    }
    if (std::abs(p.C3) >= p.G || std::abs(p.Theta) >= p.G || std::abs(p.Theta) >= p.Phi2) {
        throw std::domain_error("chart_forward: inclination cosines out of range");
    }
    const double i = std::acos(p.C3 / p.G);
    const double i1 = std::acos(p.Theta / p.G);
    const double i2 = std::acos(p.Theta / p.Phi2);

    CartesianState s;
    s.x1 = chain(p, i, i1, i2, 2, Vec3{0.0, 0.0, p.r1});
    const Vec3 C = chain(p, i, i1, i2, 1, Vec3{0.0, 0.0, p.G});
    const Vec3 C2 = chain(p, i, i1, i2, 3, Vec3{0.0, 0.0, p.Phi2});
    const Vec3 C1 = C - C2;
    s.y1 = s.x1 * (p.R1 / p.r1) + cross(C1, s.x1) / (p.r1 * p.r1);

    const double cp = std::cos(p.phi2), sp = std::sin(p.phi2);
    s.x2 = chain(p, i, i1, i2, 3, Vec3{p.r2 * cp, p.r2 * sp, 0.0});
    s.y2 = chain(p, i, i1, i2, 3,
                 Vec3{p.R2 * cp - (p.Phi2 / p.r2) * sp, p.R2 * sp + (p.Phi2 / p.r2) * cp,
                      0.0});
    return s;
}

double check_symplectic(const Chart12Point& p, double h) {
    // J[a][b] = d w_a / d z_b by central differences; w = (y1,y2; x1,x2).
    auto pack = [](const CartesianState& s) {
        return std::array<double, 12>{s.y1.x, s.y1.y, s.y1.z, s.y2.x, s.y2.y, s.y2.z,
                                      s.x1.x, s.x1.y, s.x1.z, s.x2.x, s.x2.y, s.x2.z};
    };
    std::array<std::array<double, 12>, 12> J{};
    const auto z0 = p.as_array();
    for (int b = 0; b < 12; ++b) {
        const double step = h * std::max(1.0, std::abs(z0[b]));
        auto zp = z0, zm = z0;
        zp[b] += step;
        zm[b] -= step;
        const auto wp = pack(chart_forward(Chart12Point::from_array(zp)));
        const auto wm = pack(chart_forward(Chart12Point::from_array(zm)));
        for (int a = 0; a < 12; ++a) J[a][b] = (wp[a] - wm[a]) / (2.0 * step);
    }
    // S in the (momenta; coordinates) ordering: S = [[0, I], [-I, 0]].
    auto S = [](int a, int b) -> double {
        if (a < 6 && b == a + 6) return 1.0;
        if (a >= 6 && b == a - 6) return -1.0;
        return 0.0;
    };
    double dev = 0.0;
    for (int a = 0; a < 12; ++a) {
        double row = 0.0;
        for (int b = 0; b < 12; ++b) {
            double acc = 0.0;  // (J^T S J)_{ab} = sum_{c,d} J[c][a] S(c,d) J[d][b]
            for (int c = 0; c < 6; ++c) acc += J[c][a] * J[c + 6][b] - J[c + 6][a] * J[c][b];
            row += std::abs(acc - S(a, b));
        }
        dev = std::max(dev, row);
    }
    return dev;
}

double dipole_hamiltonian(const Chart12Point& p, double M2, double m2, double alpha) {
    const double ratio = p.Theta / p.Phi2;
    const double sini2 = std::sqrt(std::max(0.0, 1.0 - ratio * ratio));
    return p.R2 * p.R2 / (2.0 * m2) - M2 * m2 / p.r2 +
           p.Phi2 * p.Phi2 / (2.0 * m2 * p.r2 * p.r2) -
           M2 * m2 * alpha * (p.r1 / (p.r2 * p.r2)) * sini2 * std::sin(p.phi2);
}

double dipole_hamiltonian_cartesian(const CartesianState& s, double M2, double m2,
                                    double alpha) {
    const double r2 = norm(s.x2);
    return norm2(s.y2) / (2.0 * m2) - M2 * m2 / r2 -
           alpha * M2 * m2 * dot(s.x1, s.x2) / (r2 * r2 * r2);
}

std::string chart_point_to_json(const Chart12Point& p) {
    nlohmann::json j{{"C3", p.C3},       {"G", p.G},         {"R1", p.R1},
                     {"Theta", p.Theta}, {"R2", p.R2},       {"Phi2", p.Phi2},
                     {"zeta", p.zeta},   {"g", p.g},         {"r1", p.r1},
                     {"theta", p.theta}, {"r2", p.r2},       {"phi2", p.phi2}};
    return j.dump();
}

Chart12Point chart_point_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    Chart12Point p;
    p.C3 = j.at("C3");
    p.G = j.at("G");
    p.R1 = j.at("R1");
    p.Theta = j.at("Theta");
    p.R2 = j.at("R2");
    p.Phi2 = j.at("Phi2");
    p.zeta = j.at("zeta");
    p.g = j.at("g");
    p.r1 = j.at("r1");
    p.theta = j.at("theta");
    p.r2 = j.at("r2");
    p.phi2 = j.at("phi2");
    return p;
}

}  // namespace sforge::charts

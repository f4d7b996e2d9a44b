#include "sforge/dynamics.hpp"

#include <cmath>
#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace sforge::dynamics {

void SystemConfig::validate() const {
    if (a1 <= 0.0 || a2 <= 0.0) throw std::invalid_argument("config: semi-axes must be positive");
    if (a1 / a2 > 0.5) throw std::invalid_argument("config: hierarchy requires a1/a2 <= 1/2");
    if (e1 < 0.0 || e1 >= 1.0 || e2 < 0.0 || e2 >= 1.0)
        throw std::invalid_argument("config: eccentricities must lie in [0, 1)");
    if (a1 * (1.0 + e1) >= a2 * (1.0 - e2))
        throw std::invalid_argument("config: orbits must not cross");
    if (masses.mu < 0.0 || masses.mu > mu_max)
        throw std::invalid_argument("config: mass ratio outside the configured bound");
    if (steps_per_period < 1 || sample_stride < 1 || periods <= 0.0)
        throw std::invalid_argument("config: bad step control");
    if (order != 2 && order != 4) throw std::invalid_argument("config: order must be 2 or 4");
}

double hamiltonian_plt(const CartesianState& s, const kepler::MassParameters& mp) {
    const auto am = kepler::auxiliary_masses(mp);
    const double r1 = norm(s.x1), r2 = norm(s.x2), d = norm(s.x1 - s.x2);
    if (r1 <= 0.0 || r2 <= 0.0 || d <= 0.0)
        throw std::domain_error("hamiltonian: collision configuration");
    const double kep1 = norm2(s.y1) / (2.0 * am.m1) - am.m1 * am.M1 / r1;
    const double kep2 = norm2(s.y2) / (2.0 * am.m2) - am.m2 * am.M2 / r2;
    const double coupling = dot(s.y1, s.y2) / mp.mbar0 - mp.mbar1 * mp.mbar2 / d;
    return kep1 + kep2 + mp.mu * coupling;
}

Vec3 total_angular_momentum(const CartesianState& s) {
    return cross(s.x1, s.y1) + cross(s.x2, s.y2);
}

namespace {

// Exact two-body propagation of (x, y) under |y|^2/(2m) - mM/|x| for time tau:
// recover the oriented ellipse and its current mean anomaly, then advance the
// anomaly by the mean motion.
void kepler_drift(Vec3& x, Vec3& y, double M, double m, double tau) {
    const Vec3 v = y / m;
    const double r = norm(x);
    const double energy = 0.5 * norm2(v) - M / r;
    if (energy >= 0.0) throw std::domain_error("kepler drift: non-elliptic orbit");
    const double a = -M / (2.0 * energy);

    // Laplace vector gives eccentricity and perihelion direction.
    const Vec3 evec = (x * (norm2(v) - M / r) - v * dot(x, v)) * (1.0 / M);
    const double e = norm(evec);

    Vec3 W = cross(x, v);
    const double h = norm(W);
    if (h <= 0.0) throw std::domain_error("kepler drift: degenerate (radial) orbit");
    W = W / h;

    Vec3 P;
    double ell;  // current mean anomaly
    if (e < 1e-12) {
        // Circular: measure the anomaly from the current position.
        P = x / r;
        ell = 0.0;
    } else {
        P = evec / e;
        const double ecosE = 1.0 - r / a;
        const double esinE = dot(x, v) / std::sqrt(M * a);
        const double E = std::atan2(esinE, ecosE);
        ell = E - esinE;
    }
    const Vec3 Q = cross(W, P);

    kepler::EllipticOrbit orb;
    orb.a = a;
    orb.e = e;
    orb.grav_param = M;
    orb.mass = m;
    orb.P = P;
    orb.Q = Q;
    orb.W = W;

    const double n = std::sqrt(M / (a * a * a));
    const auto [xn, yn] = orb.state_at(ell + n * tau);
    x = xn;
    y = yn;
}

// Momentum cross-term flow exp(tau * mu y1.y2/mbar0): coordinates drift,
// momenta are unchanged.
void momentum_drift(CartesianState& s, const kepler::MassParameters& mp, double tau) {
    const double c = tau * mp.mu / mp.mbar0;
    s.x1 += c * s.y2;
    s.x2 += c * s.y1;
}

// Planet-planet attraction kick exp(-tau * mu mbar1 mbar2/|x1-x2|).
void interaction_kick(CartesianState& s, const kepler::MassParameters& mp, double tau) {
    const Vec3 d = s.x1 - s.x2;
    const double r3 = std::pow(norm(d), 3);
    const Vec3 f = d * (mp.mu * mp.mbar1 * mp.mbar2 / r3);
    s.y1 -= tau * f;
    s.y2 += tau * f;
}

double base_step(CartesianState& s, const kepler::MassParameters& mp, double tau) {
    const auto am = kepler::auxiliary_masses(mp);
    interaction_kick(s, mp, 0.5 * tau);
    momentum_drift(s, mp, 0.5 * tau);
    kepler_drift(s.x1, s.y1, am.M1, am.m1, tau);
    kepler_drift(s.x2, s.y2, am.M2, am.m2, tau);
    momentum_drift(s, mp, 0.5 * tau);
    interaction_kick(s, mp, 0.5 * tau);
    return norm(s.x1 - s.x2);
}

}  // namespace

double step(CartesianState& s, const kepler::MassParameters& mp, double tau, int order) {
    if (order == 2) return base_step(s, mp, tau);
    // Fourth-order triple-jump composition of the symmetric base step.
    const double w1 = 1.0 / (2.0 - std::cbrt(2.0));
    const double w0 = 1.0 - 2.0 * w1;
    double dmin = base_step(s, mp, w1 * tau);
    dmin = std::min(dmin, base_step(s, mp, w0 * tau));
    return std::min(dmin, base_step(s, mp, w1 * tau));
}

CartesianState initial_state(const SystemConfig& cfg) {
    const auto am = kepler::auxiliary_masses(cfg.masses);
    const auto o1 = kepler::EllipticOrbit::from_elements(cfg.a1, cfg.e1, cfg.node1, cfg.incl1,
                                                         cfg.argp1, am.M1, am.m1);
    const auto o2 = kepler::EllipticOrbit::from_elements(cfg.a2, cfg.e2, cfg.node2, cfg.incl2,
                                                         cfg.argp2, am.M2, am.m2);
    CartesianState s;
    std::tie(s.x1, s.y1) = o1.state_at(cfg.ell1);
    std::tie(s.x2, s.y2) = o2.state_at(cfg.ell2);
    return s;
}

Trajectory integrate(const SystemConfig& cfg) {
    cfg.validate();
    const auto am = kepler::auxiliary_masses(cfg.masses);
    const double T1 = 2.0 * M_PI * std::sqrt(cfg.a1 * cfg.a1 * cfg.a1 / am.M1);
    const double tau = T1 / cfg.steps_per_period;
    const long nsteps = static_cast<long>(std::llround(cfg.periods * cfg.steps_per_period));

    Trajectory traj;
    traj.dt = tau;
    CartesianState s = initial_state(cfg);
    traj.min_separation = norm(s.x1 - s.x2);
    traj.samples.push_back({0.0, s});
    const double danger = 0.1 * cfg.a1;
    for (long k = 1; k <= nsteps; ++k) {
        double d;
        const CartesianState before = s;
        try {
            d = step(s, cfg.masses, tau, cfg.order);
        } catch (const std::exception& ex) {
            // A sub-flow left the elliptic domain: record an aborted run with
            // the last good state instead of propagating.
            traj.aborted = true;
            traj.abort_reason = ex.what();
            traj.samples.push_back({(k - 1) * tau, before});
            break;
        }
        traj.min_separation = std::min(traj.min_separation, d);
        if (d < danger) {
            traj.close_encounter = true;
            traj.samples.push_back({k * tau, s});
            break;
        }
        if (k % cfg.sample_stride == 0 || k == nsteps) {
            traj.samples.push_back({k * tau, s});
        }
    }
    return traj;
}

namespace {

// Instantaneous per-planet elements from a Cartesian state.
void planet_elements(const Vec3& x, const Vec3& y, double M, double m, double& a, double& e,
                     double& Lambda, double& varpi) {
    const Vec3 v = y / m;
    const double r = norm(x);
    const double energy = 0.5 * norm2(v) - M / r;
    if (energy >= 0.0) throw std::domain_error("track: non-elliptic instantaneous orbit");
    a = -M / (2.0 * energy);
    const Vec3 evec = (x * (norm2(v) - M / r) - v * dot(x, v)) * (1.0 / M);
    e = norm(evec);
    Lambda = kepler::lambda_from_axis(M, m, a);
    // Perihelion longitude: node longitude + in-plane perihelion argument,
    // degenerating gracefully to atan2 of the in-plane Laplace vector when the
    // orbit is (near-)planar.
    const Vec3 W = normalized(cross(x, v));
    if (std::hypot(W.x, W.y) < 1e-10) {
        varpi = std::atan2(evec.y, evec.x);
    } else {
        const Vec3 node{-W.y, W.x, 0.0};
        const double Omega = std::atan2(node.y, node.x);
        const Vec3 nhat = normalized(node);
        const double cosw = dot(nhat, evec) / std::max(e, 1e-300);
        const double sinw = dot(cross(nhat, evec), W) / std::max(e, 1e-300);
        varpi = Omega + std::atan2(sinw, cosw);
    }
}

}  // namespace

DriftReport track_elements(const Trajectory& traj, const kepler::MassParameters& mp) {
    if (traj.samples.empty()) throw std::invalid_argument("track: empty trajectory");
    const auto am = kepler::auxiliary_masses(mp);
    DriftReport rep;
    rep.close_encounter = traj.close_encounter;
    const double H0 = hamiltonian_plt(traj.samples.front().state, mp);
    const Vec3 C0 = total_angular_momentum(traj.samples.front().state);
    const double C0n = norm(C0);
    for (const auto& smp : traj.samples) {
        const auto& s = smp.state;
        ElementSample es;
        es.t = smp.t;
        planet_elements(s.x1, s.y1, am.M1, am.m1, es.a1, es.e1, es.Lambda1, es.varpi1);
        planet_elements(s.x2, s.y2, am.M2, am.m2, es.a2, es.e2, es.Lambda2, es.varpi2);
        const Vec3 C1 = cross(s.x1, s.y1), C2 = cross(s.x2, s.y2);
        es.mutual_incl = std::acos(
            std::clamp(dot(C1, C2) / (norm(C1) * norm(C2)), -1.0, 1.0));
        rep.elements.push_back(es);

        const auto& first = rep.elements.front();
        rep.max_dLambda1 = std::max(rep.max_dLambda1, std::abs(es.Lambda1 - first.Lambda1));
        rep.max_dLambda2 = std::max(rep.max_dLambda2, std::abs(es.Lambda2 - first.Lambda2));
        rep.max_de1 = std::max(rep.max_de1, std::abs(es.e1 - first.e1));
        rep.max_de2 = std::max(rep.max_de2, std::abs(es.e2 - first.e2));
        rep.max_dincl = std::max(rep.max_dincl, std::abs(es.mutual_incl - first.mutual_incl));

        const double H = hamiltonian_plt(s, mp);
        rep.energy_rel_error =
            std::max(rep.energy_rel_error, std::abs(H - H0) / std::abs(H0));
        rep.angmom_rel_error =
            std::max(rep.angmom_rel_error, norm(total_angular_momentum(s) - C0) / C0n);
        rep.max_x3 = std::max({rep.max_x3, std::abs(s.x1.z), std::abs(s.x2.z)});
        rep.max_y3 = std::max({rep.max_y3, std::abs(s.y1.z), std::abs(s.y2.z)});
    }
    return rep;
}

std::string drift_report_to_json(const DriftReport& rep) {
    std::ostringstream os;
    os.precision(17);
    os << "{\n";
    os << "  \"max_dLambda1\": " << rep.max_dLambda1 << ",\n";
    os << "  \"max_dLambda2\": " << rep.max_dLambda2 << ",\n";
    os << "  \"max_de1\": " << rep.max_de1 << ",\n";
    os << "  \"max_de2\": " << rep.max_de2 << ",\n";
    os << "  \"max_dincl\": " << rep.max_dincl << ",\n";
    os << "  \"energy_rel_error\": " << rep.energy_rel_error << ",\n";
    os << "  \"angmom_rel_error\": " << rep.angmom_rel_error << ",\n";
    os << "  \"max_x3\": " << rep.max_x3 << ",\n";
    os << "  \"max_y3\": " << rep.max_y3 << ",\n";
    os << "  \"close_encounter\": " << (rep.close_encounter ? "true" : "false") << ",\n";
    os << "  \"samples\": [\n";
    for (size_t i = 0; i < rep.elements.size(); ++i) {
        const auto& e = rep.elements[i];
        os << "    {\"t\": " << e.t << ", \"a1\": " << e.a1 << ", \"e1\": " << e.e1
           << ", \"Lambda1\": " << e.Lambda1 << ", \"varpi1\": " << e.varpi1
           << ", \"a2\": " << e.a2 << ", \"e2\": " << e.e2 << ", \"Lambda2\": " << e.Lambda2
           << ", \"varpi2\": " << e.varpi2 << ", \"mutual_incl\": " << e.mutual_incl << "}"
           << (i + 1 < rep.elements.size() ? "," : "") << "\n";
    }
    os << "  ]\n}\n";
    return os.str();
}

double perihelion_rate(const Trajectory& traj, const kepler::MassParameters& mp) {
    if (traj.samples.size() < 3) throw std::invalid_argument("rate: too few samples");
    const auto am = kepler::auxiliary_masses(mp);
    // Unwrap the perihelion longitude of planet 1, then least-squares slope.
    std::vector<double> ts, ws;
    double prev = 0.0, offset = 0.0;
    for (size_t i = 0; i < traj.samples.size(); ++i) {
        const auto& s = traj.samples[i].state;
        double a, e, L, varpi;
        planet_elements(s.x1, s.y1, am.M1, am.m1, a, e, L, varpi);
        if (i > 0) {
            double d = varpi - prev;
            while (d > M_PI) { d -= 2.0 * M_PI; }
            while (d < -M_PI) { d += 2.0 * M_PI; }
            offset += d - (varpi - prev);
        }
        prev = varpi;
        ts.push_back(traj.samples[i].t);
        ws.push_back(varpi + offset);
    }
    const size_t n = ts.size();
    double st = 0.0, sw = 0.0, stt = 0.0, stw = 0.0;
    for (size_t i = 0; i < n; ++i) {
        st += ts[i];
        sw += ws[i];
        stt += ts[i] * ts[i];
        stw += ts[i] * ws[i];
    }
    return (n * stw - st * sw) / (n * stt - st * st);
}

}  // namespace sforge::dynamics

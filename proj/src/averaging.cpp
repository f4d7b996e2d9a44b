#include "sforge/averaging.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace sforge::averaging {

TwoStepAverager::TwoStepAverager(TwoStepSpec spec) : spec_(std::move(spec)) {
    if (!spec_.P || !spec_.h0) throw std::invalid_argument("two-step: missing P or h0");
    if (spec_.nodes < 8) throw std::invalid_argument("two-step: too few angle nodes");
}

namespace {

double fd_step(double base, double x) { return base * std::max(1.0, std::abs(x)); }

}  // namespace

double TwoStepAverager::omega(const std::vector<double>& z) const {
    const double h = fd_step(spec_.fd, z[spec_.fast_action]);
    std::vector<double> zp = z, zm = z;
    zp[spec_.fast_action] += h;
    zm[spec_.fast_action] -= h;
    const double w = (spec_.h0(zp) - spec_.h0(zm)) / (2.0 * h);
    const double scale = std::abs(spec_.h0(z)) + std::abs(z[spec_.fast_action]);
    if (std::abs(w) < 1e-12 * std::max(1.0, scale)) {
        throw std::domain_error("two-step: resonant (vanishing) fast frequency");
    }
    return w;
}

double TwoStepAverager::average(const std::vector<double>& z) const {
    const int n = spec_.nodes;
    double acc = 0.0;
    for (int j = 0; j < n; ++j) acc += spec_.P(z, 2.0 * M_PI * j / n);
    return acc / n;
}

double TwoStepAverager::generator(const std::vector<double>& z, double phi) const {
    const int n = spec_.nodes;
    const double w = omega(z);
    std::vector<double> f(n);
    for (int j = 0; j < n; ++j) f[j] = spec_.P(z, 2.0 * M_PI * j / n);
    // Zero-average primitive in the angle via the discrete Fourier modes.
    std::complex<double> acc = 0.0;
    for (int k = 1; k <= n / 2 - 1; ++k) {
        std::complex<double> ck = 0.0;
        for (int j = 0; j < n; ++j) {
            ck += f[j] * std::exp(std::complex<double>(0.0, -2.0 * M_PI * k * j / n));
        }
        ck /= static_cast<double>(n);
        acc += ck * std::exp(std::complex<double>(0.0, k * phi)) /
               std::complex<double>(0.0, k * w);
    }
    return 2.0 * acc.real();  // conjugate modes pair up
}

double TwoStepAverager::bracket_psi_P(const std::vector<double>& z, double phi,
                                      const SlowFn& extra, bool use_extra) const {
    auto psi = [&](const std::vector<double>& zz, double ph) {
        return generator(zz, ph) + (use_extra ? extra(zz) : 0.0);
    };
    const double hphi = 1e-5;
    double total = 0.0;
    // Fast pair (I_fast, phi).
    {
        const double h = fd_step(spec_.fd, z[spec_.fast_action]);
        std::vector<double> zp = z, zm = z;
        zp[spec_.fast_action] += h;
        zm[spec_.fast_action] -= h;
        const double dpsi_dI = (psi(zp, phi) - psi(zm, phi)) / (2.0 * h);
        const double dP_dI = (spec_.P(zp, phi) - spec_.P(zm, phi)) / (2.0 * h);
        const double dpsi_dphi = (psi(z, phi + hphi) - psi(z, phi - hphi)) / (2.0 * hphi);
        const double dP_dphi = (spec_.P(z, phi + hphi) - spec_.P(z, phi - hphi)) / (2.0 * hphi);
        total += dpsi_dI * dP_dphi - dpsi_dphi * dP_dI;
    }
    // Slow pairs.
    for (const auto& [ia, ig] : spec_.slow_pairs) {
        const double ha = fd_step(spec_.fd, z[ia]);
        const double hg = fd_step(spec_.fd, z[ig]);
        std::vector<double> zap = z, zam = z, zgp = z, zgm = z;
        zap[ia] += ha;
        zam[ia] -= ha;
        zgp[ig] += hg;
        zgm[ig] -= hg;
        const double dpsi_dI = (psi(zap, phi) - psi(zam, phi)) / (2.0 * ha);
        const double dpsi_dq = (psi(zgp, phi) - psi(zgm, phi)) / (2.0 * hg);
        const double dP_dI = (spec_.P(zap, phi) - spec_.P(zam, phi)) / (2.0 * ha);
        const double dP_dq = (spec_.P(zgp, phi) - spec_.P(zgm, phi)) / (2.0 * hg);
        total += dpsi_dI * dP_dq - dpsi_dq * dP_dI;
    }
    return total;
}

double TwoStepAverager::normal(const std::vector<double>& z) const {
    const int n = spec_.nodes;
    double acc = 0.0;
    for (int j = 0; j < n; ++j) {
        acc += bracket_psi_P(z, 2.0 * M_PI * j / n, nullptr, false);
    }
    return 0.5 * acc / n;
}

double TwoStepAverager::normal_with_generator_shift(const std::vector<double>& z,
                                                    const SlowFn& extra) const {
    const int n = spec_.nodes;
    double acc = 0.0;
    for (int j = 0; j < n; ++j) {
        acc += bracket_psi_P(z, 2.0 * M_PI * j / n, extra, true);
    }
    return 0.5 * acc / n;
}

double dipole_h0(double Phi2, double r2, double m2) {
    return Phi2 * Phi2 / (2.0 * m2 * r2 * r2);
}

double dipole_P0(double r1, double r2, double Phi2, double Theta, double phi2, double M2,
                 double m2) {
    const double ratio = Theta / Phi2;
    return -M2 * m2 * (r1 / (r2 * r2)) * std::sqrt(1.0 - ratio * ratio) * std::sin(phi2);
}

double dipole_psi0(double r1, double Phi2, double Theta, double phi2, double M2, double m2) {
    const double ratio = Theta / Phi2;
    return M2 * m2 * m2 * (r1 / Phi2) * std::sqrt(1.0 - ratio * ratio) * std::cos(phi2);
}

double dipole_P2(double r1, double r2, double Phi2, double Theta, double M2, double m2) {
    return -(M2 * M2 * m2 * m2 * m2 / 4.0) * r1 * r1 /
           (r2 * r2 * Phi2 * Phi2 * Phi2 * Phi2) * (3.0 * Theta * Theta - Phi2 * Phi2);
}

}  // namespace sforge::averaging

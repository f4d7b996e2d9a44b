#include "sforge/steepness.hpp"

#include <algorithm>
#include <functional>
#include <cmath>
#include <stdexcept>

namespace sforge::steepness {

std::array<double, 3> ThreeJetSystem::forms(const std::vector<double>& eta) const {
    double f1 = 0.0, f2 = 0.0, f3 = 0.0;
    for (int i = 0; i < n; ++i) f1 += grad[static_cast<std::size_t>(i)] * eta[static_cast<std::size_t>(i)];
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            f2 += hess[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
                  eta[static_cast<std::size_t>(i)] * eta[static_cast<std::size_t>(j)];
        }
    }
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                f3 += tval(i, j, k) * eta[static_cast<std::size_t>(i)] *
                      eta[static_cast<std::size_t>(j)] * eta[static_cast<std::size_t>(k)];
            }
        }
    }
    return {f1, f2, f3};
}

double ThreeJetSystem::scale() const {
    double s = 0.0;
    for (double g : grad) s = std::max(s, std::abs(g));
    for (const auto& row : hess) {
        for (double h : row) s = std::max(s, std::abs(h));
    }
    for (double t3 : third) s = std::max(s, std::abs(t3));
    return s;
}

double three_jet_residual(const ThreeJetSystem& jet, const std::vector<double>& eta) {
    double norm2 = 0.0;
    for (double e : eta) norm2 += e * e;
    if (norm2 < 1e-16) throw std::domain_error("three_jet_residual: zero direction");
    const auto f = jet.forms(eta);
    return std::sqrt(f[0] * f[0] + f[1] * f[1] + f[2] * f[2]);
}

namespace {

std::vector<double> normalized(std::vector<double> v) {
    double n2 = 0.0;
    for (double x : v) n2 += x * x;
    const double n = std::sqrt(n2);
    for (double& x : v) x /= n;
    return v;
}

// Low-discrepancy unit directions: spherical Fibonacci lattice for n=3,
// Kronecker lattice through the Hopf-style area-preserving map for n=4.
std::vector<double> lattice_direction(int n, int k, int total) {
    if (n == 3) {
        const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
        const double z = 1.0 - 2.0 * (k + 0.5) / total;
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double phi = 2.0 * M_PI * k / golden;
        return {r * std::cos(phi), r * std::sin(phi), z};
    }
    if (n == 4) {
        const double rho = 1.3247179572447460260;  // plastic number
        const double a1 = 1.0 / rho, a2 = 1.0 / (rho * rho), a3 = 1.0 / (rho * rho * rho);
        auto frac = [](double x) { return x - std::floor(x); };
        const double u = frac(0.5 + (k + 1) * a1);
        const double v = frac(0.5 + (k + 1) * a2);
        const double w = frac(0.5 + (k + 1) * a3);
        const double r1 = std::sqrt(1.0 - w), r2 = std::sqrt(w);
        return {r1 * std::sin(2.0 * M_PI * u), r1 * std::cos(2.0 * M_PI * u),
                r2 * std::sin(2.0 * M_PI * v), r2 * std::cos(2.0 * M_PI * v)};
    }
    // n == 2: uniform angles.
    const double phi = M_PI * (k + 0.5) / total;
    return {std::cos(phi), std::sin(phi)};
}

// Derivative-free Nelder-Mead refinement of f around x0.
std::vector<double> nelder_mead(const std::vector<double>& x0,
                                const std::function<double(const std::vector<double>&)>& f,
                                double step, int iters) {
    const int n = static_cast<int>(x0.size());
    std::vector<std::vector<double>> simplex(static_cast<std::size_t>(n) + 1, x0);
    for (int i = 0; i < n; ++i) simplex[static_cast<std::size_t>(i) + 1][static_cast<std::size_t>(i)] += step;
    std::vector<double> val(simplex.size());
    for (std::size_t i = 0; i < simplex.size(); ++i) val[i] = f(simplex[i]);

    auto centroid_except = [&](std::size_t skip) {
        std::vector<double> c(static_cast<std::size_t>(n), 0.0);
        for (std::size_t i = 0; i < simplex.size(); ++i) {
            if (i == skip) continue;
            for (int d = 0; d < n; ++d) c[static_cast<std::size_t>(d)] += simplex[i][static_cast<std::size_t>(d)];
        }
        for (double& x : c) x /= n;
        return c;
    };
    auto blend = [&](const std::vector<double>& a, const std::vector<double>& b, double t) {
        std::vector<double> r(a.size());
        for (std::size_t d = 0; d < a.size(); ++d) r[d] = a[d] + t * (b[d] - a[d]);
        return r;
    };

    for (int it = 0; it < iters; ++it) {
        std::vector<std::size_t> order(simplex.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return val[a] < val[b]; });
        const std::size_t best = order.front(), worst = order.back();
        const std::size_t second = order[order.size() - 2];
        if (val[worst] - val[best] < 1e-15 * (1.0 + std::abs(val[best]))) break;

        const auto c = centroid_except(worst);
        const auto refl = blend(c, simplex[worst], -1.0);
        const double fr = f(refl);
        if (fr < val[best]) {
            const auto exp_ = blend(c, simplex[worst], -2.0);
            const double fe = f(exp_);
            simplex[worst] = fe < fr ? exp_ : refl;
            val[worst] = std::min(fe, fr);
        } else if (fr < val[second]) {
            simplex[worst] = refl;
            val[worst] = fr;
        } else {
            const auto con = blend(c, simplex[worst], 0.5);
            const double fc = f(con);
            if (fc < val[worst]) {
                simplex[worst] = con;
                val[worst] = fc;
            } else {
                for (std::size_t i = 0; i < simplex.size(); ++i) {
                    if (i == best) continue;
                    simplex[i] = blend(simplex[best], simplex[i], 0.5);
                    val[i] = f(simplex[i]);
                }
            }
        }
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < val.size(); ++i) {
        if (val[i] < val[best]) best = i;
    }
    return simplex[best];
}

}  // namespace

Verdict check_three_jet(const ThreeJetSystem& jet, int grid_points, double tol_factor) {
    if (jet.n < 2 || jet.n > 4) throw std::domain_error("check_three_jet: n must be 2..4");
    auto objective = [&](const std::vector<double>& x) {
        double n2 = 0.0;
        for (double v : x) n2 += v * v;
        if (n2 < 1e-12) return 1e30;  // keep the search away from the origin
        return three_jet_residual(jet, normalized(x));
    };

    // Lattice scan; keep a few best seeds for refinement.
    constexpr int kSeeds = 6;
    std::vector<std::pair<double, std::vector<double>>> best;
    for (int k = 0; k < grid_points; ++k) {
        auto eta = lattice_direction(jet.n, k, grid_points);
        const double r = three_jet_residual(jet, eta);
        if (static_cast<int>(best.size()) < kSeeds || r < best.back().first) {
            best.emplace_back(r, std::move(eta));
            std::sort(best.begin(), best.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            if (static_cast<int>(best.size()) > kSeeds) best.pop_back();
        }
    }

    Verdict v;
    v.residual = best.front().first;
    v.eta = best.front().second;
    for (const auto& [r0, seed] : best) {
        const auto refined = normalized(nelder_mead(seed, objective, 0.1, 400));
        const double r = three_jet_residual(jet, refined);
        if (r < v.residual) {
            v.residual = r;
            v.eta = refined;
        }
    }
    v.only_trivial = v.residual > tol_factor * jet.scale();
    return v;
}

double RescaledParams::beta2() const { return std::pow(alpha_star, -1.5); }

double RescaledParams::beta3() const {
    return 1.0 / (mu * std::pow(alpha_star, 3.0) * eps1 * eps1);
}

void RescaledParams::validate() const {
    if (!(alpha_star > 0.0 && alpha_star < 1.0)) {
        throw std::domain_error("RescaledParams: alpha_star out of (0,1)");
    }
    if (!(eps1 > 0.0) || !(mu > 0.0)) {
        throw std::domain_error("RescaledParams: eps1 and mu must be positive");
    }
    if (!(a_ratio > 0.0 && a_ratio < 1.0)) {
        throw std::domain_error("RescaledParams: a_ratio out of (0,1)");
    }
}

namespace {

ThreeJetSystem empty_jet(int n) {
    ThreeJetSystem jet;
    jet.n = n;
    jet.grad.assign(static_cast<std::size_t>(n), 0.0);
    jet.hess.assign(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n), 0.0));
    jet.third.assign(static_cast<std::size_t>(n * n * n), 0.0);
    return jet;
}

// Add c * eta_i eta_j to the quadratic form.
void add_quad(ThreeJetSystem& jet, int i, int j, double c) {
    if (i == j) {
        jet.hess[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] += c;
    } else {
        jet.hess[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] += c / 2.0;
        jet.hess[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] += c / 2.0;
    }
}

// Add c * eta_i eta_j eta_k to the cubic form, symmetrizing over the
// distinct permutations of (i, j, k).
void add_cubic(ThreeJetSystem& jet, int i, int j, int k, double c) {
    int idx[3] = {i, j, k};
    std::sort(idx, idx + 3);
    std::vector<std::array<int, 3>> perms;
    do {
        perms.push_back({idx[0], idx[1], idx[2]});
    } while (std::next_permutation(idx, idx + 3));
    const double share = c / static_cast<double>(perms.size());
    for (const auto& p : perms) jet.t(p[0], p[1], p[2]) += share;
}

}  // namespace

double verdict_tolerance_factor(const RescaledParams& p) {
    return 1e-6 * std::min(std::sqrt(p.alpha_star), p.eps1 * p.eps1);
}

ThreeJetSystem planar_jet(const RescaledParams& p) {
    p.validate();
    const double a = p.a_ratio;
    const double b2 = p.beta2(), b3 = p.beta3();
    ThreeJetSystem jet = empty_jet(3);

    jet.grad[0] = 1.0;
    jet.grad[1] = b2 * std::pow(p.alpha_star, 1.5) * std::pow(a, 1.5);
    jet.grad[2] = b3 * std::pow(p.alpha_star, 3.0) * p.eps1 * p.eps1 * p.mu * (3.0 / 4.0) *
                  p.m2_over_m0 * std::pow(a, 3.0);

    add_quad(jet, 0, 0, 1.0);
    add_quad(jet, 1, 1, p.m1_over_m2 * b2 * std::pow(p.alpha_star, 2.0) * a * a);
    add_quad(jet, 2, 2, -b3 * std::pow(p.alpha_star, 3.0) * p.mu * std::pow(p.eps1, 4.0) *
                            (1.0 / 4.0) * p.m2_over_m0 * std::pow(a, 3.0));

    add_cubic(jet, 0, 0, 0, 1.0);
    add_cubic(jet, 1, 1, 1,
              p.m1_over_m2 * p.m1_over_m2 * b2 * std::pow(p.alpha_star, 2.5) * std::pow(a, 2.5));
    add_cubic(jet, 2, 2, 2, b3 * std::pow(p.alpha_star, 3.5) * p.mu * std::pow(p.eps1, 6.0) *
                                (9.0 / 16.0) * p.m1_over_m0 * std::pow(a, 3.5));
    return jet;
}

ThreeJetSystem spatial_jet(const RescaledParams& p) {
    p.validate();
    const ThreeJetSystem planar = planar_jet(p);
    ThreeJetSystem jet = empty_jet(4);
    for (int i = 0; i < 3; ++i) {
        jet.grad[static_cast<std::size_t>(i)] = planar.grad[static_cast<std::size_t>(i)];
        for (int j = 0; j < 3; ++j) {
            jet.hess[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                planar.hess[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            for (int k = 0; k < 3; ++k) jet.t(i, j, k) = planar.tval(i, j, k);
        }
    }
    const double a3 = std::pow(p.a_ratio, 3.0);
    const double base = p.beta3() * std::pow(p.alpha_star, 3.0) * p.mu * p.m2_over_m0 * a3;
    const double e2 = p.eps1 * p.eps1;

    jet.grad[3] = base * e2 * (3.0 / 2.0);

    add_quad(jet, 2, 3, base * e2 * e2 * (3.0 / 2.0));
    add_quad(jet, 3, 3, base * e2 * e2 * 2.0);

    const double e6 = e2 * e2 * e2;
    add_cubic(jet, 2, 2, 3, base * e6 * (70.0 / 64.0));
    add_cubic(jet, 2, 3, 3, base * e6 * (105.0 / 32.0));
    add_cubic(jet, 3, 3, 3, base * e6 * (105.0 / 16.0));
    return jet;
}

double planar_elimination_resultant(const RescaledParams& p) {
    const ThreeJetSystem jet = planar_jet(p);
    const double A = jet.grad[1], B = jet.grad[2];
    const double Q2 = jet.hess[1][1], Q3 = jet.hess[2][2];
    const double C2 = jet.tval(1, 1, 1), C3 = jet.tval(2, 2, 2);
    // Substitute eta1 = -(A eta2 + B eta3); x := eta2/eta3.
    // Quadratic: p(x) = (A^2 + Q2) x^2 + 2AB x + (B^2 + Q3).
    const double p2 = A * A + Q2, p1 = 2.0 * A * B, p0 = B * B + Q3;
    // Cubic: q(x) = (C2 - A^3) x^3 - 3A^2B x^2 - 3AB^2 x + (C3 - B^3).
    const double q3 = C2 - A * A * A, q2 = -3.0 * A * A * B, q1 = -3.0 * A * B * B,
                 q0 = C3 - B * B * B;
    // Sylvester resultant of the binary forms (5x5 determinant).
    double m[5][5] = {{p2, p1, p0, 0, 0},
                      {0, p2, p1, p0, 0},
                      {0, 0, p2, p1, p0},
                      {q3, q2, q1, q0, 0},
                      {0, q3, q2, q1, q0}};
    // Gaussian elimination with partial pivoting.
    double det = 1.0;
    for (int col = 0; col < 5; ++col) {
        int piv = col;
        for (int r = col + 1; r < 5; ++r) {
            if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
        }
        if (std::abs(m[piv][col]) < 1e-300) return 0.0;
        if (piv != col) {
            std::swap(m[piv], m[col]);
            det = -det;
        }
        det *= m[col][col];
        for (int r = col + 1; r < 5; ++r) {
            const double f = m[r][col] / m[col][col];
            for (int c = col; c < 5; ++c) m[r][c] -= f * m[col][c];
        }
    }
    return det;
}

ThreeJetSystem rotated(const ThreeJetSystem& jet, const std::vector<std::vector<double>>& Q) {
    const int n = jet.n;
    ThreeJetSystem out = empty_jet(n);
    for (int a = 0; a < n; ++a) {
        for (int i = 0; i < n; ++i) {
            out.grad[static_cast<std::size_t>(a)] +=
                Q[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)] *
                jet.grad[static_cast<std::size_t>(i)];
        }
    }
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            double acc = 0.0;
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j) {
                    acc += Q[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)] *
                           Q[static_cast<std::size_t>(b)][static_cast<std::size_t>(j)] *
                           jet.hess[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                }
            }
            out.hess[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = acc;
        }
    }
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            for (int c = 0; c < n; ++c) {
                double acc = 0.0;
                for (int i = 0; i < n; ++i) {
                    for (int j = 0; j < n; ++j) {
                        for (int k = 0; k < n; ++k) {
                            acc += Q[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)] *
                                   Q[static_cast<std::size_t>(b)][static_cast<std::size_t>(j)] *
                                   Q[static_cast<std::size_t>(c)][static_cast<std::size_t>(k)] *
                                   jet.tval(i, j, k);
                        }
                    }
                }
                out.t(a, b, c) = acc;
            }
        }
    }
    return out;
}

}  // namespace sforge::steepness

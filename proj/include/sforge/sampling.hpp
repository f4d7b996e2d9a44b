#pragma once

#include "sforge/charts.hpp"
#include "sforge/kepler.hpp"
#include "sforge/random.hpp"
#include "sforge/secular.hpp"
#include "sforge/steepness.hpp"

#include <cmath>
#include <stdexcept>

namespace sforge::sampling {

// A generic non-degenerate point of the 12-variable chart: all constraints
// (|C3| < G, |Theta| < min(G, Phi2), positive radii) hold with margin.
inline charts::Chart12Point random_chart_point(Rng& rng) {
    charts::Chart12Point p;
    p.G = rng.uniform(0.6, 2.0);
    p.C3 = rng.uniform(-0.8, 0.8) * p.G;
    p.Phi2 = rng.uniform(0.4, 1.5);
    p.Theta = rng.uniform(-0.8, 0.8) * std::min(p.G, p.Phi2);
    p.R1 = rng.uniform(-0.3, 0.3);
    p.R2 = rng.uniform(-0.3, 0.3);
    p.zeta = rng.uniform(-M_PI, M_PI);
    p.g = rng.uniform(-M_PI, M_PI);
    p.r1 = rng.uniform(0.5, 2.0);
    p.theta = rng.uniform(-M_PI, M_PI);
    p.r2 = rng.uniform(2.0, 5.0);
    p.phi2 = rng.uniform(-M_PI, M_PI);
    return p;
}

// A secular state with bounded eccentricities and semi-axis ratio, inclined
// (p1, q1) within the admissible mutual-geometry range.  Rejection-samples
// until the node-reduction embedding is well defined.
inline secular::SecularPoint random_secular_point(Rng& rng, const kepler::MassParameters& mp,
                                                  double e_max, double alpha_max) {
    const auto am = kepler::auxiliary_masses(mp);
    for (int attempt = 0; attempt < 256; ++attempt) {
        secular::SecularPoint pt;
        const double a2 = 1.0;
        const double alpha = rng.uniform(0.05, alpha_max);
        pt.Lambda1 = kepler::lambda_from_axis(am.M1, am.m1, alpha * a2);
        pt.Lambda2 = kepler::lambda_from_axis(am.M2, am.m2, a2);
        for (int i = 0; i < 2; ++i) {
            const double L = (i == 0) ? pt.Lambda1 : pt.Lambda2;
            const double e = rng.uniform(0.0, e_max);
            const double t = L * (1.0 - std::sqrt(1.0 - e * e));
            const double ph = rng.uniform(-M_PI, M_PI);
            (i == 0 ? pt.eta1 : pt.eta2) = std::sqrt(2.0 * t) * std::cos(ph);
            (i == 0 ? pt.xi1 : pt.xi2) = std::sqrt(2.0 * t) * std::sin(ph);
        }
        const double G1 = pt.Lambda1 - 0.5 * (pt.eta1 * pt.eta1 + pt.xi1 * pt.xi1);
        const double G2 = pt.Lambda2 - 0.5 * (pt.eta2 * pt.eta2 + pt.xi2 * pt.xi2);
        const double t3 = rng.uniform(0.0, 0.4) * std::min(G1, G2);
        const double ph = rng.uniform(-M_PI, M_PI);
        pt.p1 = std::sqrt(2.0 * t3) * std::cos(ph);
        pt.q1 = std::sqrt(2.0 * t3) * std::sin(ph);
        try {
            (void)secular::embed(pt, mp);
            return pt;
        } catch (const std::exception&) {
            // geometry rejected; redraw
        }
    }
    throw std::runtime_error("sampling: could not draw an embeddable secular state");
}

// Hierarchical-regime parameters for the slow-system three-jet test.
inline steepness::RescaledParams random_steepness_params(Rng& rng) {
    steepness::RescaledParams p;
    p.alpha_star = rng.uniform(0.005, 0.1);
    p.eps1 = rng.uniform(0.005, 0.1);
    p.mu = std::pow(10.0, rng.uniform(-6.0, -3.0));
    p.m1_over_m2 = rng.uniform(0.2, 5.0);
    p.m2_over_m0 = rng.uniform(0.2, 5.0);
    p.m1_over_m0 = p.m1_over_m2 * p.m2_over_m0;
    p.a_ratio = rng.uniform(0.1, 0.5);
    return p;
}

}  // namespace sforge::sampling

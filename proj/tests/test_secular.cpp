#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sforge/random.hpp"
#include "sforge/sampling.hpp"
#include "sforge/secular.hpp"

#include <cmath>

using namespace sforge;
using namespace sforge::secular;

namespace {

kepler::MassParameters draw_masses(Rng& rng) {
    kepler::MassParameters mp;
    mp.mbar0 = 1.0;
    mp.mbar1 = rng.uniform(0.5, 1.5);
    mp.mbar2 = rng.uniform(0.5, 1.5);
    mp.mu = rng.uniform(1e-4, 1e-3);
    return mp;
}

}  // namespace

TEST_CASE("ring average equals 1/sqrt(1-e^2)") {
    for (double e = 0.0; e < 0.95; e += 0.05) {
        CHECK(ring_average(e) == doctest::Approx(1.0 / std::sqrt(1.0 - e * e)).epsilon(1e-10));
    }
}

TEST_CASE("in-plane ring averages against their quadratic closed forms") {
    for (int k = 0; k <= 9; ++k) {
        const double e = 0.1 * k;
        const auto ra = appendix_b_averages(e);
        CHECK(std::abs(ra.s0 - (1.0 + 1.5 * e * e)) < 1e-10);
        CHECK(std::abs(ra.s2 - 2.5 * e * e) < 1e-10);
        CHECK(std::abs(ra.cross) < 1e-10);
    }
}

TEST_CASE("quadrupole kernel symmetries") {
    Rng rng(301);
    for (int i = 0; i < 50; ++i) {
        const Vec3 x1{rng.normal(), rng.normal(), rng.normal()};
        const Vec3 x2 = Vec3{rng.normal(), rng.normal(), rng.normal()} * 4.0;
        const double f = quadrupole_kernel(x1, x2);
        // Even in each argument separately.
        CHECK(quadrupole_kernel(-x1, x2) == doctest::Approx(f).epsilon(1e-13));
        CHECK(quadrupole_kernel(x1, -x2) == doctest::Approx(f).epsilon(1e-13));
        // Homogeneity: degree 2 in x1, degree -3 in x2.
        CHECK(quadrupole_kernel(x1 * 2.0, x2) == doctest::Approx(4.0 * f).epsilon(1e-13));
        CHECK(quadrupole_kernel(x1, x2 * 2.0) == doctest::Approx(f / 8.0).epsilon(1e-13));
    }
}

TEST_CASE("single average over the outer anomaly matches its closed form") {
    Rng rng(302);
    for (int i = 0; i < 50; ++i) {
        const auto mp = draw_masses(rng);
        const auto pt = sampling::random_secular_point(rng, mp, 0.5, 0.3);
        const auto orbits = embed(pt, mp);
        const double ell1 = rng.uniform(-M_PI, M_PI);
        const double quad = p1_single_average(orbits, ell1, 256);
        const double closed = p1_closed_form(orbits, ell1);
        CHECK(std::abs(quad - closed) < 1e-8 * std::max(1.0, std::abs(closed)));
    }
}

TEST_CASE("double average matches the closed form and its planar/vertical split") {
    Rng rng(303);
    for (int i = 0; i < 50; ++i) {
        const auto mp = draw_masses(rng);
        const auto pt = sampling::random_secular_point(rng, mp, 0.5, 0.3);
        const double quad = double_average_f2(pt, mp, 256);
        const double closed = closed_form_f2(embed(pt, mp));
        CHECK(std::abs(quad - closed) < 1e-8 * std::max(1.0, std::abs(closed)));
        const auto split = planar_vertical_split(pt, mp);
        const double total = -mp.mbar1 * mp.mbar2 * quad;
        CHECK(std::abs(split.planar + split.vertical - total) <
              1e-8 * std::max(1.0, std::abs(total)));
    }
}

TEST_CASE("interaction expansion in the separation ratio: odd term vanishes") {
    Rng rng(304);
    const auto mp = draw_masses(rng);
    const auto pt = sampling::random_secular_point(rng, mp, 0.3, 0.2);
    const auto orbits = embed(pt, mp);
    const double a1 = orbits.o1.a;
    const auto c = epsilon_expansion(pt, mp, 0.1);
    const double f2 = double_average_f2(pt, mp, 256);
    CHECK(std::abs(c[1]) < 1e-8 * std::max(1.0, std::abs(c[0])));
    CHECK(c[2] == doctest::Approx(f2 / (a1 * a1)).epsilon(1e-6));
}

TEST_CASE("momentum cross term averages to zero over the two fast anomalies") {
    Rng rng(305);
    for (int i = 0; i < 5; ++i) {
        const auto mp = draw_masses(rng);
        const auto pt = sampling::random_secular_point(rng, mp, 0.5, 0.3);
        CHECK(std::abs(indirect_average(pt, mp)) < 1e-10);
    }
}

TEST_CASE("secular energy is invariant under the diagonal phase rotation") {
    Rng rng(306);
    const auto mp = draw_masses(rng);
    for (int i = 0; i < 10; ++i) {
        const auto pt = sampling::random_secular_point(rng, mp, 0.5, 0.3);
        const double f = double_average_f2(pt, mp, 128);
        const double g = rng.uniform(-M_PI, M_PI);
        const double fr = double_average_f2(rotate_phases(pt, g), mp, 128);
        CHECK(std::abs(fr - f) < 1e-10 * std::max(1.0, std::abs(f)));
    }
}

TEST_CASE("secular energy is invariant under rotating the outer pair alone") {
    Rng rng(307);
    const auto mp = draw_masses(rng);
    for (int i = 0; i < 10; ++i) {
        const auto pt = sampling::random_secular_point(rng, mp, 0.5, 0.3);
        const double f = double_average_f2(pt, mp, 128);
        const double g = rng.uniform(-M_PI, M_PI);
        const double fr = double_average_f2(rotate_phase2(pt, g), mp, 128);
        CHECK(std::abs(fr - f) < 1e-10 * std::max(1.0, std::abs(f)));
    }
}

TEST_CASE("node-reduction embedding is consistent") {
    Rng rng(308);
    for (int i = 0; i < 20; ++i) {
        const auto mp = draw_masses(rng);
        const auto pt = sampling::random_secular_point(rng, mp, 0.5, 0.3);
        const auto orbits = embed(pt, mp);
        // The advertised angular momenta match the realized orbits.
        CHECK(norm(orbits.o1.angular_momentum()) ==
              doctest::Approx(orbits.Gamma1).epsilon(1e-9));
        CHECK(norm(orbits.o2.angular_momentum()) ==
              doctest::Approx(orbits.Gamma2).epsilon(1e-9));
        // Total angular momentum lies along k3 with length G.
        const Vec3 C = orbits.o1.angular_momentum() + orbits.o2.angular_momentum();
        CHECK(std::abs(C.x) < 1e-9 * orbits.G);
        CHECK(std::abs(C.y) < 1e-9 * orbits.G);
        CHECK(C.z == doctest::Approx(orbits.G).epsilon(1e-9));
    }
}

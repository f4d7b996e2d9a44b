#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sforge/charts.hpp"
#include "sforge/random.hpp"
#include "sforge/sampling.hpp"

#include <cmath>

using namespace sforge;
using namespace sforge::charts;

TEST_CASE("oriented angle: additivity and orientation flip") {
    Rng rng(201);
    const Vec3 w{0.0, 0.0, 1.0};
    for (int i = 0; i < 100; ++i) {
        const double a = rng.uniform(-2.0, 2.0);
        const Vec3 u = rot3(a, Vec3{1.0, 0.0, 0.0});
        const double b = rng.uniform(-2.0, 2.0);
        const Vec3 v = rot3(a + b, Vec3{1.0, 0.0, 0.0});
        CHECK(oriented_angle(u, v, w) == doctest::Approx(wrap_angle(b)).epsilon(1e-12));
        // Reversing the axis reverses the angle (generic b).
        if (std::abs(std::abs(wrap_angle(b)) - M_PI) > 1e-3) {
            CHECK(oriented_angle(u, v, -w) ==
                  doctest::Approx(-wrap_angle(b)).epsilon(1e-12));
        }
    }
    // Non-orthogonal inputs are rejected.
    CHECK_THROWS(oriented_angle(Vec3{1.0, 0.0, 0.5}, Vec3{0.0, 1.0, 0.0}, w));
}

TEST_CASE("chart roundtrip both ways on random non-degenerate points") {
    Rng rng(202);
    for (int i = 0; i < 1000; ++i) {
        const auto p = sampling::random_chart_point(rng);
        const auto s = chart_forward(p);
        const auto p2 = chart_inverse(s);
        const auto pa = p.as_array(), pb = p2.as_array();
        for (int k = 0; k < 12; ++k) {
            const double scale = std::max(1.0, std::abs(pa[k]));
            CHECK(std::abs(pa[k] - pb[k]) < 1e-9 * scale);
        }
        // And back through Cartesian once more.
        const auto s2 = chart_forward(p2);
        CHECK(norm(s.x1 - s2.x1) < 1e-8);
        CHECK(norm(s.x2 - s2.x2) < 1e-8);
        CHECK(norm(s.y1 - s2.y1) < 1e-8);
        CHECK(norm(s.y2 - s2.y2) < 1e-8);
    }
}

TEST_CASE("chart realizes its own labels: momenta match the geometry") {
    Rng rng(203);
    for (int i = 0; i < 200; ++i) {
        const auto p = sampling::random_chart_point(rng);
        const auto s = chart_forward(p);
        const auto am = angular_momenta(s);
        CHECK(am.C.z == doctest::Approx(p.C3).epsilon(1e-10));
        CHECK(norm(am.C) == doctest::Approx(p.G).epsilon(1e-10));
        CHECK(norm(am.C2) == doctest::Approx(p.Phi2).epsilon(1e-10));
        CHECK(dot(am.C2, normalized(s.x1)) == doctest::Approx(p.Theta).epsilon(1e-10));
        CHECK(norm(s.x1) == doctest::Approx(p.r1).epsilon(1e-10));
        CHECK(norm(s.x2) == doctest::Approx(p.r2).epsilon(1e-10));
        CHECK(dot(s.y1, normalized(s.x1)) == doctest::Approx(p.R1).epsilon(1e-9));
        CHECK(dot(s.y2, normalized(s.x2)) == doctest::Approx(p.R2).epsilon(1e-9));
    }
}

TEST_CASE("finite-difference symplecticity of the chart") {
    Rng rng(204);
    for (int i = 0; i < 100; ++i) {
        const auto p = sampling::random_chart_point(rng);
        CHECK(check_symplectic(p) < 1e-6);
    }
}

TEST_CASE("first-multipole Hamiltonian: chart form equals the Cartesian form") {
    Rng rng(205);
    for (int i = 0; i < 100; ++i) {
        const auto p = sampling::random_chart_point(rng);
        const auto s = chart_forward(p);
        const double M2 = rng.uniform(0.5, 2.0);
        const double m2 = rng.uniform(0.5, 2.0);
        const double alpha = rng.uniform(0.0, 0.5);
        const double hc = dipole_hamiltonian(p, M2, m2, alpha);
        const double hx = dipole_hamiltonian_cartesian(s, M2, m2, alpha);
        CHECK(std::abs(hc - hx) < 1e-10 * std::max(1.0, std::abs(hx)));
    }
}

TEST_CASE("degenerate configurations are rejected by the inverse chart") {
    // Angular momentum along k3: the first node vector nu1 = k3 x C vanishes.
    CartesianState s;
    s.x1 = {1.0, 0.0, 0.0};
    s.y1 = {0.0, 1.0, 0.0};
    s.x2 = {0.0, 3.0, 0.0};
    s.y2 = {-0.5, 0.0, 0.0};
    CHECK_THROWS(chart_inverse(s));
}

TEST_CASE("chart point JSON record roundtrips") {
    Rng rng(206);
    const auto p = sampling::random_chart_point(rng);
    const auto q = chart_point_from_json(chart_point_to_json(p));
    const auto pa = p.as_array(), qa = q.as_array();
    for (int k = 0; k < 12; ++k) CHECK(pa[k] == doctest::Approx(qa[k]).epsilon(1e-15));
}

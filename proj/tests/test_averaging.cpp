#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sforge/averaging.hpp"
#include "sforge/random.hpp"

#include <cmath>

using namespace sforge;
using namespace sforge::averaging;

namespace {

// Slow state layout for the first-multipole problem: z = (Phi2, Theta, r1);
// the fast angle is phi2 and its conjugate action Phi2 sits at index 0.  The
// outer radius enters only as a frozen parameter.
constexpr double kM2 = 1.3, km2 = 0.8, kr2 = 3.0;

TwoStepSpec dipole_spec() {
    TwoStepSpec spec;
    spec.h0 = [](const std::vector<double>& z) { return dipole_h0(z[0], kr2, km2); };
    spec.P = [](const std::vector<double>& z, double phi) {
        return dipole_P0(z[2], kr2, z[0], z[1], phi, kM2, km2);
    };
    spec.fast_action = 0;
    spec.nodes = 64;
    return spec;
}

std::vector<double> draw_state(Rng& rng) {
    const double Phi2 = rng.uniform(0.8, 2.0);
    const double Theta = rng.uniform(-0.7, 0.7) * Phi2;
    const double r1 = rng.uniform(0.3, 1.0);
    return {Phi2, Theta, r1};
}

}  // namespace

TEST_CASE("fast frequency is dh0/dPhi2") {
    const TwoStepAverager av(dipole_spec());
    Rng rng(501);
    for (int i = 0; i < 20; ++i) {
        const auto z = draw_state(rng);
        CHECK(av.omega(z) == doctest::Approx(z[0] / (km2 * kr2 * kr2)).epsilon(1e-8));
    }
}

TEST_CASE("the oscillating part has zero mean, as the first step requires") {
    const TwoStepAverager av(dipole_spec());
    Rng rng(502);
    for (int i = 0; i < 20; ++i) {
        CHECK(std::abs(av.average(draw_state(rng))) < 1e-12);
    }
}

TEST_CASE("first-order generator matches its closed form") {
    const TwoStepAverager av(dipole_spec());
    Rng rng(503);
    for (int i = 0; i < 20; ++i) {
        const auto z = draw_state(rng);
        const double phi = rng.uniform(-M_PI, M_PI);
        const double psi = av.generator(z, phi);
        const double closed = dipole_psi0(z[2], z[0], z[1], phi, kM2, km2);
        CHECK(psi == doctest::Approx(closed).epsilon(1e-9));
    }
}

TEST_CASE("second-order normal part reproduces the doubly-averaged closed form") {
    const TwoStepAverager av(dipole_spec());
    Rng rng(504);
    for (int i = 0; i < 20; ++i) {
        const auto z = draw_state(rng);
        const double got = av.normal(z);
        const double want = dipole_P2(z[2], kr2, z[0], z[1], kM2, km2);
        CHECK(got == doctest::Approx(want).epsilon(2e-5));
    }
}

TEST_CASE("the normal part does not move when the generator is shifted") {
    // Adding any angle-independent function to the generator must leave the
    // averaged second-order term unchanged (its bracket contribution has zero
    // angular mean).
    const TwoStepAverager av(dipole_spec());
    Rng rng(505);
    for (int i = 0; i < 10; ++i) {
        const auto z = draw_state(rng);
        const double base = av.normal(z);
        const double amp = rng.uniform(-2.0, 2.0);
        const auto extra = [amp](const std::vector<double>& zz) {
            return amp * zz[0] * zz[0] + 0.3 * zz[1] * std::sin(zz[2]);
        };
        const double shifted = av.normal_with_generator_shift(z, extra);
        CHECK(shifted == doctest::Approx(base).epsilon(1e-6));
    }
}

TEST_CASE("declared slow pairs the data does not depend on change nothing") {
    auto spec = dipole_spec();
    // (Theta, r1) treated as a canonical pair: both derivatives vanish in the
    // bracket since neither psi nor P pairs them dynamically here.
    spec.slow_pairs = {{1, 2}};
    const TwoStepAverager with_pairs(spec);
    const TwoStepAverager without(dipole_spec());
    Rng rng(506);
    for (int i = 0; i < 5; ++i) {
        const auto z = draw_state(rng);
        CHECK(with_pairs.normal(z) == doctest::Approx(without.normal(z)).epsilon(1e-7));
    }
}

TEST_CASE("resonant (angle-action-free) fast dynamics is rejected") {
    auto spec = dipole_spec();
    spec.h0 = [](const std::vector<double>&) { return 1.0; };
    const TwoStepAverager av(spec);
    Rng rng(507);
    CHECK_THROWS(av.omega(draw_state(rng)));
}

TEST_CASE("construction rejects incomplete specifications") {
    TwoStepSpec spec;
    CHECK_THROWS(TwoStepAverager(spec));
    auto ok = dipole_spec();
    ok.nodes = 4;
    CHECK_THROWS(TwoStepAverager(ok));
}

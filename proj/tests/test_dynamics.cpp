#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sforge/dynamics.hpp"

#include <json.hpp>

#include <cmath>

using namespace sforge;
using namespace sforge::dynamics;

namespace {

SystemConfig base_config() {
    SystemConfig cfg;
    cfg.masses.mu = 1e-3;
    cfg.a1 = 0.2;
    cfg.a2 = 1.0;
    cfg.e1 = 0.02;
    cfg.e2 = 0.02;
    cfg.periods = 100;
    cfg.sample_stride = 100;
    return cfg;
}

}  // namespace

TEST_CASE("configuration validation rejects out-of-regime setups") {
    SystemConfig cfg = base_config();
    CHECK_NOTHROW(cfg.validate());
    cfg.a1 = 0.6;
    CHECK_THROWS(cfg.validate());  // hierarchy violated
    cfg = base_config();
    cfg.e2 = 0.9;
    CHECK_THROWS(cfg.validate());  // crossing orbits
    cfg = base_config();
    cfg.masses.mu = 0.5;
    CHECK_THROWS(cfg.validate());  // mass ratio beyond the bound
    cfg = base_config();
    cfg.order = 3;
    CHECK_THROWS(cfg.validate());
}

TEST_CASE("energy splits into two Kepler blocks at mu = 0") {
    SystemConfig cfg = base_config();
    cfg.masses.mu = 0.0;
    const auto am = kepler::auxiliary_masses(cfg.masses);
    const auto s = initial_state(cfg);
    const double H = hamiltonian_plt(s, cfg.masses);
    const double L1 = kepler::lambda_from_axis(am.M1, am.m1, cfg.a1);
    const double L2 = kepler::lambda_from_axis(am.M2, am.m2, cfg.a2);
    const double expected =
        kepler::kepler_energy(am.M1, am.m1, L1) + kepler::kepler_energy(am.M2, am.m2, L2);
    CHECK(H == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("collision configurations are rejected by the energy") {
    CartesianState s;
    s.x1 = {1.0, 0.0, 0.0};
    s.x2 = {1.0, 0.0, 0.0};
    s.y1 = {0.0, 1.0, 0.0};
    s.y2 = {0.0, 1.0, 0.0};
    CHECK_THROWS(hamiltonian_plt(s, kepler::MassParameters{}));
}

TEST_CASE("decoupled limit: all element drifts at solver tolerance") {
    SystemConfig cfg = base_config();
    cfg.masses.mu = 0.0;
    cfg.periods = 50;
    const auto rep = track_elements(integrate(cfg), cfg.masses);
    CHECK(rep.max_dLambda1 < 1e-10);
    CHECK(rep.max_dLambda2 < 1e-10);
    CHECK(rep.max_de1 < 1e-10);
    CHECK(rep.max_de2 < 1e-10);
}

TEST_CASE("time reversal recovers the initial state") {
    SystemConfig cfg = base_config();
    auto s = initial_state(cfg);
    const auto s0 = s;
    const auto am = kepler::auxiliary_masses(cfg.masses);
    const double tau =
        2.0 * M_PI * std::sqrt(cfg.a1 * cfg.a1 * cfg.a1 / am.M1) / cfg.steps_per_period;
    for (int k = 0; k < 3000; ++k) step(s, cfg.masses, tau, 2);
    for (int k = 0; k < 3000; ++k) step(s, cfg.masses, -tau, 2);
    CHECK(norm(s.x1 - s0.x1) + norm(s.x2 - s0.x2) < 1e-6);
    CHECK(norm(s.y1 - s0.y1) + norm(s.y2 - s0.y2) < 1e-6);
}

TEST_CASE("conservation over a medium span; angular momentum near machine level") {
    SystemConfig cfg = base_config();
    cfg.periods = 500;
    const auto rep = track_elements(integrate(cfg), cfg.masses);
    CHECK(rep.energy_rel_error < 1e-9);
    CHECK(rep.angmom_rel_error < 1e-11);
}

TEST_CASE("planar initial data stays planar to roundoff") {
    SystemConfig cfg = base_config();
    cfg.periods = 200;
    const auto rep = track_elements(integrate(cfg), cfg.masses);
    CHECK(rep.max_x3 == 0.0);
    CHECK(rep.max_y3 == 0.0);
}

TEST_CASE("mutual inclination is tracked for spatial data") {
    SystemConfig cfg = base_config();
    cfg.incl1 = 0.15;
    cfg.node1 = 0.3;
    cfg.periods = 50;
    const auto rep = track_elements(integrate(cfg), cfg.masses);
    CHECK(rep.elements.front().mutual_incl == doctest::Approx(0.15).epsilon(1e-3));
    CHECK(rep.max_dincl < 0.05);
}

TEST_CASE("higher-order composition shrinks the energy error by orders of magnitude") {
    SystemConfig cfg = base_config();
    cfg.periods = 100;
    cfg.order = 2;
    const auto r2 = track_elements(integrate(cfg), cfg.masses);
    cfg.order = 4;
    const auto r4 = track_elements(integrate(cfg), cfg.masses);
    CHECK(r4.energy_rel_error < 1e-2 * r2.energy_rel_error);
}

TEST_CASE("close encounters abort the run and are flagged") {
    SystemConfig cfg = base_config();
    // Nearly crossing orbits at larger mu: bound but strongly interacting.
    cfg.a1 = 0.45;
    cfg.e1 = 0.1;
    cfg.e2 = 0.45;
    cfg.masses.mu = 1e-2;
    cfg.ell2 = 2.0;
    cfg.periods = 2000;
    const auto traj = integrate(cfg);
    // This violent setup must end early, one way or the other: either the
    // separation dips below the flag radius or a sub-flow leaves the elliptic
    // domain and the run is recorded as aborted.
    CHECK((traj.close_encounter || traj.aborted));
    CHECK(traj.samples.back().t <
          0.999 * cfg.periods * traj.dt * cfg.steps_per_period);
    // The flag must be consistent with the recorded separation.
    CHECK(traj.close_encounter == (traj.min_separation < 0.1 * cfg.a1));
    if (traj.aborted) CHECK_FALSE(traj.abort_reason.empty());
}

TEST_CASE("drift report serializes to parseable JSON") {
    SystemConfig cfg = base_config();
    cfg.periods = 20;
    const auto rep = track_elements(integrate(cfg), cfg.masses);
    const auto parsed = nlohmann::json::parse(drift_report_to_json(rep));
    CHECK(parsed["energy_rel_error"].get<double>() == rep.energy_rel_error);
    CHECK(parsed["samples"].size() == rep.elements.size());
    CHECK(parsed["close_encounter"].get<bool>() == rep.close_encounter);
}

TEST_CASE("secular perihelion rate scales linearly in mu") {
    std::vector<double> rates;
    for (const double mu : {1e-4, 3e-4, 1e-3}) {
        SystemConfig cfg = base_config();
        cfg.masses.mu = mu;
        cfg.periods = 2000;
        cfg.sample_stride = 50;
        rates.push_back(perihelion_rate(integrate(cfg), cfg.masses) / mu);
    }
    for (size_t i = 1; i < rates.size(); ++i) {
        CHECK(std::abs(rates[i] - rates[0]) < 0.1 * std::abs(rates[0]));
    }
}

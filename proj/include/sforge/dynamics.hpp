#pragma once

#include "sforge/charts.hpp"
#include "sforge/kepler.hpp"
#include "sforge/vec3.hpp"

#include <string>
#include <vector>

namespace sforge::dynamics {

using charts::CartesianState;

// Full integration setup: masses, per-planet initial elements and step control.
struct SystemConfig {
    kepler::MassParameters masses;
    double a1 = 0.2, e1 = 0.02, a2 = 1.0, e2 = 0.02;
    double incl1 = 0.0, incl2 = 0.0;       // inclinations to the reference plane
    double node1 = 0.0, node2 = 0.0;       // node longitudes
    double argp1 = 0.0, argp2 = 0.0;       // perihelion arguments
    double ell1 = 0.0, ell2 = 0.0;         // initial mean anomalies
    double periods = 1e4;                  // span in inner orbital periods
    int steps_per_period = 100;
    int sample_stride = 100;               // output every this many steps
    int order = 4;                         // 2 = symmetric splitting, 4 = composed
    double mu_max = 1e-2;                  // admissible mass-ratio bound

    void validate() const;  // hierarchy a1/a2 <= 1/2, non-crossing, mu in range
};

struct Sample {
    double t = 0.0;
    CartesianState state;
};

struct Trajectory {
    std::vector<Sample> samples;
    double dt = 0.0;
    bool close_encounter = false;  // |x1 - x2| dipped below 0.1 a1
    bool aborted = false;          // a sub-flow failed (e.g. orbit unbound)
    std::string abort_reason;
    double min_separation = 0.0;
};

// Per-planet instantaneous two-body elements plus the mutual inclination.
struct ElementSample {
    double t = 0.0;
    double a1 = 0.0, e1 = 0.0, Lambda1 = 0.0, varpi1 = 0.0;
    double a2 = 0.0, e2 = 0.0, Lambda2 = 0.0, varpi2 = 0.0;
    double mutual_incl = 0.0;
};

struct DriftReport {
    std::vector<ElementSample> elements;
    double max_dLambda1 = 0.0, max_dLambda2 = 0.0;
    double max_de1 = 0.0, max_de2 = 0.0;
    double max_dincl = 0.0;
    double energy_rel_error = 0.0;     // max |H - H0| / |H0|
    double angmom_rel_error = 0.0;     // max |C - C0| / |C0|
    double max_x3 = 0.0, max_y3 = 0.0; // out-of-plane excursions
    bool close_encounter = false;
};

// Full heliocentric energy: two Kepler blocks plus the mu-coupling
// (momentum cross term and planet-planet attraction).  Throws on collision
// configurations.
double hamiltonian_plt(const CartesianState& s, const kepler::MassParameters& mp);

// Total angular momentum x1 x y1 + x2 x y2 (conserved exactly by each
// splitting sub-flow).
Vec3 total_angular_momentum(const CartesianState& s);

// Cartesian state realizing the configured elements (heliocentric, y = m v).
CartesianState initial_state(const SystemConfig& cfg);

// One splitting step of size tau (negative tau integrates backwards):
//   kick(tau/2) . drift_momenta(tau/2) . Kepler(tau) . drift_momenta(tau/2)
//     . kick(tau/2),
// with the exact per-planet Kepler propagator in the middle.  Returns the
// minimum planet separation seen at the step endpoints.
double step(CartesianState& s, const kepler::MassParameters& mp, double tau, int order);

// Fixed-step integration over the configured span.
Trajectory integrate(const SystemConfig& cfg);

// Element conversion and drift maxima over a sampled trajectory.
DriftReport track_elements(const Trajectory& traj, const kepler::MassParameters& mp);

std::string drift_report_to_json(const DriftReport& rep);

// Slope (rad per unit time) of the unwrapped perihelion longitude of planet 1,
// by least-squares line fit over the trajectory samples.
double perihelion_rate(const Trajectory& traj, const kepler::MassParameters& mp);

}  // namespace sforge::dynamics

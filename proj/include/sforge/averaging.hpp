#pragma once

#include <functional>
#include <utility>
#include <vector>

namespace sforge::averaging {

// A scalar observable of a slow state z plus one fast 2pi-periodic angle.
using AngleFn = std::function<double(const std::vector<double>&, double)>;
// A scalar function of the slow state only.
using SlowFn = std::function<double(const std::vector<double>&)>;

// One-fast-angle two-step averaging operator.  The slow state z packs
// canonical variables in caller-chosen order; `slow_pairs` lists (action,
// angle) index pairs within z, and `fast_action` is the index of the action
// conjugate to the explicit fast angle.  h0 must be independent of the fast
// angle; its derivative with respect to the fast action is the frequency.
struct TwoStepSpec {
    AngleFn P;
    SlowFn h0;
    std::vector<std::pair<int, int>> slow_pairs;
    int fast_action = 0;
    int nodes = 64;     // angle quadrature / Fourier nodes
    double fd = 1e-5;   // relative finite-difference step
};

class TwoStepAverager {
public:
    explicit TwoStepAverager(TwoStepSpec spec);

    // Frequency of the fast angle at z (throws on values too close to zero).
    double omega(const std::vector<double>& z) const;

    // Angle average of P at z (the precondition demands this vanish).
    double average(const std::vector<double>& z) const;

    // First-order generator psi(z, phi) = sum_{k != 0} P_k(z) e^{ik phi}/(ik w),
    // i.e. the zero-average primitive of (P - <P>)/omega in the fast angle.
    double generator(const std::vector<double>& z, double phi) const;

    // Second-order normal part  Pbar2(z) = (1/2) <{psi, P}>_phi, with the full
    // canonical bracket over the fast pair and all slow pairs.
    double normal(const std::vector<double>& z) const;

    // Same, with the generator shifted by an arbitrary angle-independent
    // function: Lemma-style uniqueness says the result must not move.
    double normal_with_generator_shift(const std::vector<double>& z,
                                       const SlowFn& extra) const;

private:
    double bracket_psi_P(const std::vector<double>& z, double phi,
                         const SlowFn& extra, bool use_extra) const;

    TwoStepSpec spec_;
};

// Closed forms of the dipole-reduction cascade (tangential part; the coupling
// strength is factored out, so these are the alpha-homogeneous coefficients).
double dipole_h0(double Phi2, double r2, double m2);
double dipole_P0(double r1, double r2, double Phi2, double Theta, double phi2, double M2,
                 double m2);
double dipole_psi0(double r1, double Phi2, double Theta, double phi2, double M2, double m2);
// The doubly-averaged second-order term -(M2^2 m2^3/4) r1^2 (3 Theta^2 - Phi2^2)
// / (r2^2 Phi2^4): the fast radius survives only through the 1/r2^2 prefactor.
double dipole_P2(double r1, double r2, double Phi2, double Theta, double M2, double m2);

}  // namespace sforge::averaging

#pragma once

#include <array>
#include <vector>

namespace sforge::steepness {

// Jet data of a Hamiltonian at a point: gradient, Hessian and symmetric
// third-derivative tensor.  The three-jet test asks whether the system
//   grad.eta = 0,  eta.Hess.eta = 0,  Third[eta,eta,eta] = 0
// admits a nontrivial direction eta.
struct ThreeJetSystem {
    int n = 0;
    std::vector<double> grad;                 // n
    std::vector<std::vector<double>> hess;    // n x n, symmetric
    std::vector<double> third;                // n^3 flattened, fully symmetric

    double& t(int i, int j, int k) { return third[(i * n + j) * n + k]; }
    double tval(int i, int j, int k) const { return third[(i * n + j) * n + k]; }

    // The three homogeneous forms evaluated at eta.
    std::array<double, 3> forms(const std::vector<double>& eta) const;
    // Largest absolute coefficient over the three blocks.
    double scale() const;
};

// Residual sqrt(f1^2 + f2^2 + f3^2) of the three forms; zero iff eta solves.
double three_jet_residual(const ThreeJetSystem& jet, const std::vector<double>& eta);

struct Verdict {
    bool only_trivial = false;
    std::vector<double> eta;   // best direction found (unit)
    double residual = 0.0;     // its residual
};

// Minimize the residual over the unit sphere: low-discrepancy lattice scan
// followed by Nelder-Mead refinement from the best candidates.  only_trivial
// iff the refined minimum exceeds tol_factor * jet scale.
Verdict check_three_jet(const ThreeJetSystem& jet, int grid_points = 10000,
                        double tol_factor = 1e-6);

// Parameters of the rescaled slow system in the hierarchical regime.
struct RescaledParams {
    double alpha_star = 0.05;  // semi-axis ratio scale, 0 < alpha_star < 1
    double eps1 = 0.05;        // eccentricity scale
    double mu = 1e-4;          // mass ratio
    double m1_over_m2 = 1.0;
    double m2_over_m0 = 1.0;
    double m1_over_m0 = 1.0;
    double a_ratio = 0.5;      // rescaled semi-axis ratio a1hat/a2hat

    double beta2() const;      // alpha_star^(-3/2)
    double beta3() const;      // mu^-1 alpha_star^-3 eps1^-2
    void validate() const;     // throws on out-of-range values
};

// Residual-threshold factor for the slow-system jets: the steepness moduli of
// the rescaled system shrink like min(sqrt(alpha_star), eps1^2), so the
// only-trivial verdict threshold must carry the same degeneracy or genuinely
// unsolvable draws near ahat^(3/2) ~ eps1 get misread as solutions.
double verdict_tolerance_factor(const RescaledParams& p);

// Planar three-variable jet system (eta1, eta2, eta3).
ThreeJetSystem planar_jet(const RescaledParams& p);
// Spatial four-variable system with the extra inclination direction eta4.
ThreeJetSystem spatial_jet(const RescaledParams& p);

// Elimination cross-check: substitute eta1 from the linear equation into the
// quadratic and cubic ones and return the Sylvester resultant of the resulting
// binary forms in (eta2, eta3); nonzero means only the trivial solution.
double planar_elimination_resultant(const RescaledParams& p);

// Conjugate all jet tensors by an orthogonal matrix Q (verdicts must be
// invariant under this).
ThreeJetSystem rotated(const ThreeJetSystem& jet,
                       const std::vector<std::vector<double>>& Q);

}  // namespace sforge::steepness

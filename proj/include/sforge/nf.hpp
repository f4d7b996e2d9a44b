#pragma once

#include "sforge/series.hpp"

#include <vector>

namespace sforge::nf {

using series::ActionPoly;
using series::Rational;
using series::TruncatedSeries;

// Exact secular quadrupole energy S as a polynomial in the Birkhoff variables
// (u1, u1*, u2, u2*, v, v*) and the symbols x1 = 1/Lambda1, x2 = 1/Lambda2,
// normalized by the a1^2/(4 a2^3) prefactor.  Assembled from the closed-form
// eccentricity / inclination / outer-ring factors; exact at every order kept.
TruncatedSeries build_secular_input(int max_degree = 6, int max_x2 = 12);

struct NormalFormResult {
    // Normal form of S (only action monomials survive), same sign convention
    // as the input S, Birkhoff degree <= the requested order.
    TruncatedSeries normal_part;
    // The same data as a real polynomial in the actions t1, t2, t3.
    ActionPoly action_form;
    // Generating functions of the degree-4 and degree-6 steps (for -S, the
    // Hamiltonian actually normalized; they are sign-invariant anyway).
    std::vector<TruncatedSeries> generators;
    // Degree-2 coefficients of the action form: the three secular frequencies
    // (times the actions); their sum vanishes identically.
    ActionPoly invariant1, invariant2, invariant3;
    // Normal projection of the order-6 term (1/2){phi4, R4} produced by the
    // degree-4 step, in the sign convention of S: the only route by which
    // non-normal degree-4 terms feed the degree-6 normal form.
    ActionPoly order4_cross_normal;
};

// Birkhoff normalization of the secular series about the elliptic equilibrium,
// through the given (even) Birkhoff order.  The degree-2 part must consist of
// action monomials only; small divisors are inverted exactly as Laurent tails
// in x2/x1.
NormalFormResult birkhoff_normalize(const TruncatedSeries& S, int order = 6);

// Substitute t1 := rho^2/2 - t2 - t3: the vertical rotation reduction, with
// rho^2 twice the conserved sum of the actions.
ActionPoly so3_reduce(const ActionPoly& action_form);

// Leading coefficients (minimal x2 power, then minimal x1 power) of every
// t-monomial with total degree in [degmin, degmax], key-sorted.
struct LeadingEntry {
    std::array<int, 3> t{0, 0, 0};
    int a1 = 0, a2 = 0;
    Rational value;
};
std::vector<LeadingEntry> leading_table(const ActionPoly& p, int degmin, int degmax);

// Same, but for the reduced polynomial: entries are (t2hat, t3hat) monomials at
// rho = 0 with degree in [degmin, degmax].
std::vector<LeadingEntry> reduced_leading_table(const ActionPoly& reduced, int degmin,
                                                int degmax);

}  // namespace sforge::nf

#include "sforge/nf.hpp"

#include <map>
#include <set>
#include <stdexcept>

namespace sforge::nf {

using series::GaussRat;
using series::Key;
using series::poisson_bracket;

namespace {

TruncatedSeries xmono(int a1, int a2, Rational c, int D, int X) {
    Key k;
    k.a1 = a1;
    k.a2 = a2;
    return TruncatedSeries::monomial(k, GaussRat(std::move(c)), D, X);
}

}  // namespace

TruncatedSeries build_secular_input(int max_degree, int max_x2) {
    const int D = max_degree, X = max_x2;
    const TruncatedSeries one = TruncatedSeries::constant(GaussRat(1L), D, X);
    const TruncatedSeries t1 = TruncatedSeries::action(1, D, X);
    const TruncatedSeries t2 = TruncatedSeries::action(2, D, X);
    const TruncatedSeries t3 = TruncatedSeries::action(3, D, X);
    const TruncatedSeries x1 = xmono(1, 0, 1, D, X);
    const TruncatedSeries x2 = xmono(0, 1, 1, D, X);

    // e1^2 = 2 t1 * e1sq_bar with e1sq_bar = x1 (1 - x1 t1 / 2): exact.
    const TruncatedSeries e1b = x1 - (x1 * x1 * t1).scaled(GaussRat(Rational(1, 2)));

    // Geometric tails of 1/(Lambda_i - t_i) = x_i (1 + x_i t_i + ...); three
    // orders suffice at Birkhoff degree 6.
    const TruncatedSeries g1 = one + x1 * t1 + x1 * x1 * t1 * t1 + x1 * x1 * x1 * t1 * t1 * t1;
    const TruncatedSeries g2 = one + x2 * t2 + x2 * x2 * t2 * t2 + x2 * x2 * x2 * t2 * t2 * t2;

    // cbar = (Lambda1 + Lambda2 - t1 - t2 - t3/2) / (2 Gamma1 Gamma2): the
    // mutual-inclination factor, written without negative powers.
    const TruncatedSeries cbar =
        (xmono(1, 0, 2, D, X) + xmono(0, 1, 2, D, X) -
         x1 * x2 * (t1.scaled(GaussRat(2L)) + t2.scaled(GaussRat(2L)) + t3))
            .scaled(GaussRat(Rational(1, 4))) *
        g1 * g2;
    // sin^2 of the mutual-node tilt variable: 2 cbar (1 - t3 cbar), exact.
    const TruncatedSeries sbar2 = cbar.scaled(GaussRat(2L)) - (t3 * cbar * cbar).scaled(GaussRat(2L));

    // Outer-ring factor 1/(1 - e2^2)^{3/2} expanded in t2/Lambda2.
    const TruncatedSeries x2t2 = x2 * t2;
    const TruncatedSeries frak = one + x2t2.scaled(GaussRat(3L)) +
                                 (x2t2 * x2t2).scaled(GaussRat(6L)) +
                                 (x2t2 * x2t2 * x2t2).scaled(GaussRat(10L));

    // The phase-coupled eccentricity-inclination term (u1*)^2 v^2 + (v*)^2 u1^2.
    Key ka, kb;
    ka.b = {0, 2, 0, 0, 2, 0};
    kb.b = {2, 0, 0, 0, 0, 2};
    const TruncatedSeries Aplus = TruncatedSeries::monomial(ka, GaussRat(1L), D, X) +
                                  TruncatedSeries::monomial(kb, GaussRat(1L), D, X);

    const TruncatedSeries F =
        one + (t1 * e1b).scaled(GaussRat(3L)) - (t3 * sbar2).scaled(GaussRat(3L)) -
        (t1 * t3 * sbar2 * e1b).scaled(GaussRat(9L)) -
        (Aplus * e1b * sbar2).scaled(GaussRat(Rational(15, 2)));

    return (F * frak).truncated(max_degree);
}

namespace {

// Divisor series of a monomial u^b under a diagonal quadratic part
// H2 = sum_j c_j(x) u_j u_j*:  D(b) = sum_j c_j (b[2j+1] - b[2j]), so that
// {H2, u^b} = D(b) u^b.
TruncatedSeries divisor_for(const std::array<int, 6>& b, const TruncatedSeries& H2) {
    TruncatedSeries D(H2.max_degree(), H2.max_x2());
    for (const auto& [k2, c] : H2.terms()) {
        for (int j = 0; j < 3; ++j) {
            if (k2.b[2 * j] == 1 && k2.b[2 * j + 1] == 1) {
                const int diff = b[2 * j + 1] - b[2 * j];
                if (diff != 0) {
                    Key km;
                    km.a1 = k2.a1;
                    km.a2 = k2.a2;
                    D.add_term(km, c * GaussRat(Rational(diff)));
                }
            }
        }
    }
    return D;
}

}  // namespace

NormalFormResult birkhoff_normalize(const TruncatedSeries& S, int order) {
    if (order < 2 || order % 2 != 0) {
        throw std::domain_error("birkhoff_normalize: order must be even and >= 2");
    }
    TruncatedSeries H = (-S).truncated(order);
    const TruncatedSeries H2 = H.degree_part(2);
    for (const auto& [k, c] : H2.terms()) {
        if (!k.is_action_monomial()) {
            throw std::domain_error("birkhoff_normalize: quadratic part not diagonal");
        }
    }

    NormalFormResult res;
    TruncatedSeries cross4(H.max_degree(), H.max_x2());
    for (int d = 4; d <= order; d += 2) {
        const TruncatedSeries Rtil = H.degree_part(d).non_normal_part();
        TruncatedSeries phi(H.max_degree(), H.max_x2());
        if (!Rtil.empty()) {
            // Group the terms by Birkhoff exponent: the divisor depends only on
            // it, and the coefficient of each group is a full series in x1, x2.
            std::map<std::array<int, 6>, TruncatedSeries> groups;
            for (const auto& [k, c] : Rtil.terms()) {
                auto [it, inserted] = groups.try_emplace(
                    k.b, TruncatedSeries(H.max_degree(), H.max_x2()));
                Key km;
                km.a1 = k.a1;
                km.a2 = k.a2;
                it->second.add_term(km, c);
            }
            for (const auto& [b, coef] : groups) {
                const TruncatedSeries Dinv = divisor_for(b, H2).inverse_homogeneous();
                Key kb;
                kb.b = b;
                phi = phi + (coef * Dinv) *
                                TruncatedSeries::monomial(kb, GaussRat(1L), H.max_degree(),
                                                          H.max_x2());
            }
            if (d == 4) {
                cross4 = poisson_bracket(phi, Rtil)
                             .scaled(GaussRat(Rational(1, 2)))
                             .normal_part();
            }
            // Time-one Lie transform exp(ad_phi); each bracket raises the
            // degree by at least two, so the series terminates under truncation.
            TruncatedSeries newH = H, term = H;
            Rational fact = 1;
            for (int k = 1; !term.empty(); ++k) {
                term = poisson_bracket(phi, term);
                fact *= k;
                if (!term.empty()) newH = newH + term.scaled(GaussRat(Rational(1) / fact));
            }
            H = newH;
        }
        res.generators.push_back(phi);
    }
    if (!H.non_normal_part().empty()) {
        throw std::logic_error("birkhoff_normalize: residual non-normal terms");
    }

    res.normal_part = -H;
    res.action_form = to_action_poly(res.normal_part);
    res.invariant1 = res.action_form.coefficient_of({1, 0, 0});
    res.invariant2 = res.action_form.coefficient_of({0, 1, 0});
    res.invariant3 = res.action_form.coefficient_of({0, 0, 1});
    res.order4_cross_normal = to_action_poly(-cross4);
    return res;
}

ActionPoly so3_reduce(const ActionPoly& action_form) { return action_form.reduce_t1(); }

namespace {

std::vector<LeadingEntry> table_impl(const ActionPoly& p, int degmin, int degmax,
                                     bool reduced) {
    std::set<std::array<int, 3>> monomials;
    for (const auto& [k, c] : p.terms()) {
        if (k.rho2 != 0) continue;
        if (reduced && k.t[0] != 0) continue;
        const int deg = k.t[0] + k.t[1] + k.t[2];
        if (deg >= degmin && deg <= degmax) monomials.insert(k.t);
    }
    std::vector<LeadingEntry> out;
    for (const auto& t : monomials) {
        const auto lead = p.leading_of(t);
        if (lead.value == 0) continue;
        out.push_back({t, lead.a1, lead.a2, lead.value});
    }
    return out;
}

}  // namespace

std::vector<LeadingEntry> leading_table(const ActionPoly& p, int degmin, int degmax) {
    return table_impl(p, degmin, degmax, false);
}

std::vector<LeadingEntry> reduced_leading_table(const ActionPoly& reduced, int degmin,
                                                int degmax) {
    return table_impl(reduced, degmin, degmax, true);
}

}  // namespace sforge::nf

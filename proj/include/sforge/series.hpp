#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <complex>
#include <compare>
#include <map>
#include <string>

namespace sforge::series {

using Rational = boost::multiprecision::cpp_rational;

// Gaussian rational a + i b (the complexified coefficient field).
struct GaussRat {
    Rational re, im;

    GaussRat() = default;
    GaussRat(long n) : re(n) {}
    GaussRat(Rational r) : re(std::move(r)) {}
    GaussRat(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    static GaussRat i_unit() { return GaussRat(Rational(0), Rational(1)); }

    bool is_zero() const { return re == 0 && im == 0; }
    GaussRat operator+(const GaussRat& o) const { return {re + o.re, im + o.im}; }
    GaussRat operator-(const GaussRat& o) const { return {re - o.re, im - o.im}; }
    GaussRat operator-() const { return {-re, -im}; }
    GaussRat operator*(const GaussRat& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    GaussRat inverse() const;
    GaussRat conj() const { return {re, -im}; }
    bool operator==(const GaussRat& o) const { return re == o.re && im == o.im; }
    std::complex<double> to_complex() const {
        return {static_cast<double>(re), static_cast<double>(im)};
    }
};

// Monomial key: Birkhoff exponents for (u1, u1*, u2, u2*, v, v*) plus a Laurent
// exponent in x1 = 1/Lambda1 and an exponent in x2 = 1/Lambda2.
struct Key {
    std::array<int, 6> b{0, 0, 0, 0, 0, 0};
    int a1 = 0;
    int a2 = 0;

    int birkhoff_degree() const { return b[0] + b[1] + b[2] + b[3] + b[4] + b[5]; }
    bool is_action_monomial() const { return b[0] == b[1] && b[2] == b[3] && b[4] == b[5]; }
    auto operator<=>(const Key&) const = default;
};

// Variable indices for derivatives and monomial construction.
enum Var { U1 = 0, U1s = 1, U2 = 2, U2s = 3, V = 4, Vs = 5 };

// Truncated Fourier-Taylor polynomial over the Birkhoff variables with exact
// Gaussian-rational coefficients.  Truncations: Birkhoff degree <= max_degree,
// x2 exponent <= max_x2 (the second, Lambda1/Lambda2 grading; only inversion of
// divisors produces infinite tails there).
class TruncatedSeries {
public:
    explicit TruncatedSeries(int max_degree = 6, int max_x2 = 12)
        : max_degree_(max_degree), max_x2_(max_x2) {}

    static TruncatedSeries constant(const GaussRat& c, int max_degree = 6, int max_x2 = 12);
    static TruncatedSeries monomial(const Key& k, const GaussRat& c, int max_degree = 6,
                                    int max_x2 = 12);
    // t_j = i u_j u_j* as a series (j in {1,2,3} picks the pair).
    static TruncatedSeries action(int j, int max_degree = 6, int max_x2 = 12);

    int max_degree() const { return max_degree_; }
    int max_x2() const { return max_x2_; }
    const std::map<Key, GaussRat>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    void add_term(const Key& k, const GaussRat& c);

    TruncatedSeries operator+(const TruncatedSeries& o) const;
    TruncatedSeries operator-(const TruncatedSeries& o) const;
    TruncatedSeries operator*(const TruncatedSeries& o) const;
    TruncatedSeries operator-() const;
    TruncatedSeries scaled(const GaussRat& c) const;
    TruncatedSeries derivative(Var v) const;

    // Parts and filters.
    TruncatedSeries degree_part(int d) const;
    TruncatedSeries normal_part() const;      // action monomials only
    TruncatedSeries non_normal_part() const;
    TruncatedSeries truncated(int max_degree) const;

    // {a, b} = sum over pairs (du/dw dv/dw* - du/dw* dv/dw).
    friend TruncatedSeries poisson_bracket(const TruncatedSeries& a,
                                           const TruncatedSeries& b);

    // Multiplicative inverse of a homogeneous coefficient-only series (no
    // Birkhoff variables; all terms share a1+a2); expands the tail in
    // x2/x1 up to max_x2.  Throws on non-homogeneous or vanishing leading term.
    TruncatedSeries inverse_homogeneous() const;

    std::complex<double> evaluate(double Lambda1, double Lambda2,
                                  const std::array<std::complex<double>, 6>& w) const;

    // One line per term, key-sorted: "b0..b5 a1 a2 re_num re_den im_num im_den".
    std::string dump() const;

    bool operator==(const TruncatedSeries& o) const { return terms_ == o.terms_; }

private:
    int max_degree_;
    int max_x2_;
    std::map<Key, GaussRat> terms_;
};

TruncatedSeries poisson_bracket(const TruncatedSeries& a, const TruncatedSeries& b);

// ---------------------------------------------------------------------------
// Real polynomial in the actions t1, t2, t3, the reduction parameter rho^2 and
// the coefficient symbols x1, x2.  Used for normal parts, golden tables and the
// rotation-reduced form.
// ---------------------------------------------------------------------------
struct ActionKey {
    std::array<int, 3> t{0, 0, 0};
    int rho2 = 0;
    int a1 = 0;
    int a2 = 0;
    auto operator<=>(const ActionKey&) const = default;
};

class ActionPoly {
public:
    const std::map<ActionKey, Rational>& terms() const { return terms_; }
    void add_term(const ActionKey& k, const Rational& c);

    ActionPoly operator+(const ActionPoly& o) const;
    ActionPoly operator-(const ActionPoly& o) const;

    // Coefficient (as a sub-polynomial in x1, x2, rho2) of a given t-monomial.
    ActionPoly coefficient_of(const std::array<int, 3>& t) const;
    // Leading (minimal x2-exponent, then minimal x1-exponent) coefficient of a
    // pure t-monomial at rho = 0;
    // returns {a1, a2, value}; zero if absent.
    struct Leading {
        int a1 = 0, a2 = 0;
        Rational value;
    };
    Leading leading_of(const std::array<int, 3>& t) const;

    // Substitute t1 := rho^2/2 - t2 - t3 (the rotation reduction); slots t2, t3
    // then carry the reduced actions.
    ActionPoly reduce_t1() const;

    double evaluate(double t1, double t2, double t3, double rho2, double Lambda1,
                    double Lambda2) const;

    // "k1 k2 k3 rho2 a1 a2 num den", key-sorted.
    std::string dump() const;

    bool operator==(const ActionPoly& o) const { return terms_ == o.terms_; }

private:
    std::map<ActionKey, Rational> terms_;
};

// Convert a series containing only action monomials into an ActionPoly
// (coefficients must come out real; throws otherwise).
ActionPoly to_action_poly(const TruncatedSeries& s);

}  // namespace sforge::series

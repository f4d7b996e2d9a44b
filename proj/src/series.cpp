#include "sforge/series.hpp"

#include <sstream>
#include <stdexcept>
#include <vector>

namespace sforge::series {

GaussRat GaussRat::inverse() const {
    const Rational n = re * re + im * im;
    if (n == 0) throw std::domain_error("GaussRat: division by zero");
    return {re / n, -im / n};
}

TruncatedSeries TruncatedSeries::constant(const GaussRat& c, int max_degree, int max_x2) {
    TruncatedSeries s(max_degree, max_x2);
    s.add_term(Key{}, c);
    return s;
}

TruncatedSeries TruncatedSeries::monomial(const Key& k, const GaussRat& c, int max_degree,
                                          int max_x2) {
    TruncatedSeries s(max_degree, max_x2);
    s.add_term(k, c);
    return s;
}

TruncatedSeries TruncatedSeries::action(int j, int max_degree, int max_x2) {
    if (j < 1 || j > 3) throw std::domain_error("action: pair index must be 1, 2 or 3");
    Key k;
    k.b[2 * (j - 1)] = 1;
    k.b[2 * (j - 1) + 1] = 1;
    return monomial(k, GaussRat::i_unit(), max_degree, max_x2);
}

void TruncatedSeries::add_term(const Key& k, const GaussRat& c) {
    if (c.is_zero()) return;
    if (k.birkhoff_degree() > max_degree_ || k.a2 > max_x2_) return;
    auto it = terms_.find(k);
    if (it == terms_.end()) {
        terms_.emplace(k, c);
    } else {
        it->second = it->second + c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

TruncatedSeries TruncatedSeries::operator+(const TruncatedSeries& o) const {
    TruncatedSeries r = *this;
    for (const auto& [k, c] : o.terms_) r.add_term(k, c);
    return r;
}

TruncatedSeries TruncatedSeries::operator-(const TruncatedSeries& o) const {
    TruncatedSeries r = *this;
    for (const auto& [k, c] : o.terms_) r.add_term(k, -c);
    return r;
}

TruncatedSeries TruncatedSeries::operator-() const { return scaled(GaussRat(-1L)); }

TruncatedSeries TruncatedSeries::scaled(const GaussRat& c) const {
    TruncatedSeries r(max_degree_, max_x2_);
    if (c.is_zero()) return r;
    for (const auto& [k, v] : terms_) r.terms_.emplace(k, v * c);
    return r;
}

TruncatedSeries TruncatedSeries::operator*(const TruncatedSeries& o) const {
    TruncatedSeries r(std::min(max_degree_, o.max_degree_), std::min(max_x2_, o.max_x2_));
    for (const auto& [ka, ca] : terms_) {
        for (const auto& [kb, cb] : o.terms_) {
            Key k;
            for (int i = 0; i < 6; ++i) k.b[i] = ka.b[i] + kb.b[i];
            k.a1 = ka.a1 + kb.a1;
            k.a2 = ka.a2 + kb.a2;
            r.add_term(k, ca * cb);
        }
    }
    return r;
}

TruncatedSeries TruncatedSeries::derivative(Var v) const {
    TruncatedSeries r(max_degree_, max_x2_);
    for (const auto& [k, c] : terms_) {
        if (k.b[v] == 0) continue;
        Key nk = k;
        nk.b[v] -= 1;
        r.add_term(nk, c * GaussRat(Rational(k.b[v])));
    }
    return r;
}

TruncatedSeries TruncatedSeries::degree_part(int d) const {
    TruncatedSeries r(max_degree_, max_x2_);
    for (const auto& [k, c] : terms_) {
        if (k.birkhoff_degree() == d) r.add_term(k, c);
    }
    return r;
}

TruncatedSeries TruncatedSeries::normal_part() const {
    TruncatedSeries r(max_degree_, max_x2_);
    for (const auto& [k, c] : terms_) {
        if (k.is_action_monomial()) r.add_term(k, c);
    }
    return r;
}

TruncatedSeries TruncatedSeries::non_normal_part() const {
    TruncatedSeries r(max_degree_, max_x2_);
    for (const auto& [k, c] : terms_) {
        if (!k.is_action_monomial()) r.add_term(k, c);
    }
    return r;
}

TruncatedSeries TruncatedSeries::truncated(int max_degree) const {
    TruncatedSeries r(max_degree, max_x2_);
    for (const auto& [k, c] : terms_) r.add_term(k, c);
    return r;
}

TruncatedSeries poisson_bracket(const TruncatedSeries& a, const TruncatedSeries& b) {
    TruncatedSeries r(std::min(a.max_degree_, b.max_degree_),
                      std::min(a.max_x2_, b.max_x2_));
    for (int pair = 0; pair < 3; ++pair) {
        const Var w = static_cast<Var>(2 * pair);
        const Var ws = static_cast<Var>(2 * pair + 1);
        r = r + a.derivative(w) * b.derivative(ws) - a.derivative(ws) * b.derivative(w);
    }
    return r;
}

TruncatedSeries TruncatedSeries::inverse_homogeneous() const {
    if (terms_.empty()) throw std::domain_error("inverse_homogeneous: zero series");
    int weight = 0;
    bool first = true;
    std::vector<GaussRat> c(static_cast<std::size_t>(max_x2_) + 1);
    for (const auto& [k, v] : terms_) {
        if (k.birkhoff_degree() != 0) {
            throw std::domain_error("inverse_homogeneous: Birkhoff variables present");
        }
        if (first) {
            weight = k.a1 + k.a2;
            first = false;
        } else if (k.a1 + k.a2 != weight) {
            throw std::domain_error("inverse_homogeneous: not homogeneous");
        }
        if (k.a2 < 0 || k.a2 > max_x2_) {
            throw std::domain_error("inverse_homogeneous: x2 exponent out of range");
        }
        c[static_cast<std::size_t>(k.a2)] = v;
    }
    if (c[0].is_zero()) {
        throw std::domain_error("inverse_homogeneous: vanishing leading (resonant) term");
    }
    // Power-series inversion in r = x2/x1 against the leading x1^weight factor.
    std::vector<GaussRat> q(static_cast<std::size_t>(max_x2_) + 1);
    const GaussRat inv0 = c[0].inverse();
    q[0] = inv0;
    for (int j = 1; j <= max_x2_; ++j) {
        GaussRat acc;
        for (int k = 1; k <= j; ++k) {
            acc = acc + c[static_cast<std::size_t>(k)] * q[static_cast<std::size_t>(j - k)];
        }
        q[static_cast<std::size_t>(j)] = -(inv0 * acc);
    }
    TruncatedSeries r(max_degree_, max_x2_);
    for (int j = 0; j <= max_x2_; ++j) {
        if (q[static_cast<std::size_t>(j)].is_zero()) continue;
        Key k;
        k.a1 = -weight - j;
        k.a2 = j;
        r.add_term(k, q[static_cast<std::size_t>(j)]);
    }
    return r;
}

std::complex<double> TruncatedSeries::evaluate(
    double Lambda1, double Lambda2, const std::array<std::complex<double>, 6>& w) const {
    std::complex<double> acc = 0.0;
    for (const auto& [k, c] : terms_) {
        std::complex<double> t = c.to_complex();
        for (int i = 0; i < 6; ++i) {
            for (int p = 0; p < k.b[i]; ++p) t *= w[static_cast<std::size_t>(i)];
        }
        t *= std::pow(1.0 / Lambda1, k.a1) * std::pow(1.0 / Lambda2, k.a2);
        acc += t;
    }
    return acc;
}

namespace {

std::string rat_str(const Rational& r) {
    std::ostringstream os;
    os << boost::multiprecision::numerator(r) << " " << boost::multiprecision::denominator(r);
    return os.str();
}

}  // namespace

std::string TruncatedSeries::dump() const {
    std::ostringstream os;
    for (const auto& [k, c] : terms_) {
        for (int i = 0; i < 6; ++i) os << k.b[i] << " ";
        os << k.a1 << " " << k.a2 << " " << rat_str(c.re) << " " << rat_str(c.im) << "\n";
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// ActionPoly
// ---------------------------------------------------------------------------

void ActionPoly::add_term(const ActionKey& k, const Rational& c) {
    if (c == 0) return;
    auto it = terms_.find(k);
    if (it == terms_.end()) {
        terms_.emplace(k, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

ActionPoly ActionPoly::operator+(const ActionPoly& o) const {
    ActionPoly r = *this;
    for (const auto& [k, c] : o.terms_) r.add_term(k, c);
    return r;
}

ActionPoly ActionPoly::operator-(const ActionPoly& o) const {
    ActionPoly r = *this;
    for (const auto& [k, c] : o.terms_) r.add_term(k, -c);
    return r;
}

ActionPoly ActionPoly::coefficient_of(const std::array<int, 3>& t) const {
    ActionPoly r;
    for (const auto& [k, c] : terms_) {
        if (k.t == t) {
            ActionKey nk = k;
            nk.t = {0, 0, 0};
            r.add_term(nk, c);
        }
    }
    return r;
}

ActionPoly::Leading ActionPoly::leading_of(const std::array<int, 3>& t) const {
    Leading best;
    bool found = false;
    for (const auto& [k, c] : terms_) {
        if (k.t != t || k.rho2 != 0) continue;
        if (!found || k.a2 < best.a2 || (k.a2 == best.a2 && k.a1 < best.a1)) {
            best = {k.a1, k.a2, c};
            found = true;
        }
    }
    if (!found) best.value = 0;
    return best;
}

ActionPoly ActionPoly::reduce_t1() const {
    ActionPoly r;
    for (const auto& [k, c] : terms_) {
        const int n = k.t[0];
        // Expand (rho^2/2 - t2 - t3)^n.
        for (int i = 0; i <= n; ++i) {
            for (int j = 0; i + j <= n; ++j) {
                const int l = n - i - j;
                // multinomial n! / (i! j! l!)
                Rational mult = 1;
                for (int m = 1; m <= n; ++m) mult *= m;
                Rational div = 1;
                for (int m = 1; m <= i; ++m) div *= m;
                for (int m = 1; m <= j; ++m) div *= m;
                for (int m = 1; m <= l; ++m) div *= m;
                Rational coeff = c * mult / div;
                for (int m = 0; m < i; ++m) coeff /= 2;  // (1/2)^i
                if ((j + l) % 2 == 1) coeff = -coeff;
                ActionKey nk = k;
                nk.t = {0, k.t[1] + j, k.t[2] + l};
                nk.rho2 = k.rho2 + i;
                r.add_term(nk, coeff);
            }
        }
    }
    return r;
}

double ActionPoly::evaluate(double t1, double t2, double t3, double rho2, double Lambda1,
                            double Lambda2) const {
    double acc = 0.0;
    for (const auto& [k, c] : terms_) {
        double t = static_cast<double>(c);
        t *= std::pow(t1, k.t[0]) * std::pow(t2, k.t[1]) * std::pow(t3, k.t[2]);
        t *= std::pow(rho2, k.rho2);
        t *= std::pow(1.0 / Lambda1, k.a1) * std::pow(1.0 / Lambda2, k.a2);
        acc += t;
    }
    return acc;
}

std::string ActionPoly::dump() const {
    std::ostringstream os;
    for (const auto& [k, c] : terms_) {
        os << k.t[0] << " " << k.t[1] << " " << k.t[2] << " " << k.rho2 << " " << k.a1
           << " " << k.a2 << " " << rat_str(c) << "\n";
    }
    return os.str();
}

ActionPoly to_action_poly(const TruncatedSeries& s) {
    ActionPoly r;
    for (const auto& [k, c] : s.terms()) {
        if (!k.is_action_monomial()) {
            throw std::domain_error("to_action_poly: non-action monomial present");
        }
        const int total = k.b[0] + k.b[2] + k.b[4];
        // u u* = -i t  =>  (u1 u1*)^{k1} ... = (-i)^{total} t-monomial, so the
        // t-coefficient is c * i^{total} ... careful: c * (u-mon) = c * (-i)^{tot} t-mon.
        GaussRat factor(1L);
        const GaussRat minus_i(Rational(0), Rational(-1));
        for (int m = 0; m < total; ++m) factor = factor * minus_i;
        const GaussRat coeff = c * factor;
        if (!(coeff.im == 0)) {
            throw std::domain_error("to_action_poly: non-real action coefficient");
        }
        ActionKey nk;
        nk.t = {k.b[0], k.b[2], k.b[4]};
        nk.a1 = k.a1;
        nk.a2 = k.a2;
        r.add_term(nk, coeff.re);
    }
    return r;
}

}  // namespace sforge::series

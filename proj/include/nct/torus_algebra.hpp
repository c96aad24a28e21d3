#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "nct/matrix.hpp"
#include "nct/phase.hpp"

namespace nct {

/// Gaussian rational a + b*i.
struct GaussRational {
    Rational re;
    Rational im;

    GaussRational() = default;
    GaussRational(Rational r, Rational i = Rational(0)) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return re.is_zero() && im.is_zero(); }

    GaussRational operator+(const GaussRational& o) const { return {re + o.re, im + o.im}; }
    GaussRational operator-(const GaussRational& o) const { return {re - o.re, im - o.im}; }
    GaussRational operator-() const { return {-re, -im}; }
    GaussRational operator*(const GaussRational& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    GaussRational operator*(const Rational& s) const { return {re * s, im * s}; }

    GaussRational conj() const { return {re, -im}; }

    /// Multiplication by i^k.
    GaussRational times_i_pow(int k) const {
        switch (((k % 4) + 4) % 4) {
            case 1: return {-im, re};
            case 2: return {-re, -im};
            case 3: return {im, -re};
            default: return *this;
        }
    }

    bool operator==(const GaussRational& o) const { return re == o.re && im == o.im; }
    bool operator!=(const GaussRational& o) const { return !(*this == o); }

    Complex to_complex() const { return {re.to_double(), im.to_double()}; }
};

/// Exact coefficient: a finite sum of Gaussian rationals times unit phases,
/// sum_r g_r * e(r). Each phase exponent is kept canonical in [0, 1/4) by
/// folding quarter turns (powers of i) into the Gaussian part; with that
/// normalization two structurally equal sums represent equal numbers, and
/// every ring operation used here preserves structural equality.
class Coeff {
public:
    Coeff() = default;
    explicit Coeff(GaussRational g) { add(Rational(0), std::move(g)); }
    explicit Coeff(Rational r) { add(Rational(0), GaussRational(std::move(r))); }

    static Coeff one() { return Coeff(Rational(1)); }
    static Coeff from_phase(const Phase& p) {
        Coeff c;
        c.add(p.exponent(), GaussRational(Rational(1)));
        return c;
    }

    bool is_zero() const { return terms_.empty(); }

    void add(Rational exponent, GaussRational g) {
        if (g.is_zero()) return;
        Rational r = exponent.frac();
        Int quarter = (r * Rational(4)).floor();
        r -= Rational(quarter) * Rational(1, 4);
        g = g.times_i_pow(static_cast<int>(quarter));
        auto it = terms_.find(r);
        if (it == terms_.end()) {
            terms_.emplace(std::move(r), std::move(g));
        } else {
            it->second = it->second + g;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    Coeff operator+(const Coeff& o) const {
        Coeff r = *this;
        for (const auto& [p, g] : o.terms_) r.add(p, g);
        return r;
    }
    Coeff operator-() const {
        Coeff r;
        for (const auto& [p, g] : terms_) r.terms_.emplace(p, -g);
        return r;
    }
    Coeff operator-(const Coeff& o) const { return *this + (-o); }

    Coeff operator*(const Coeff& o) const {
        Coeff r;
        for (const auto& [p, g] : terms_)
            for (const auto& [q, h] : o.terms_) r.add(p + q, g * h);
        return r;
    }

    Coeff operator*(const Rational& s) const {
        Coeff r;
        if (s.is_zero()) return r;
        for (const auto& [p, g] : terms_) r.terms_.emplace(p, g * s);
        return r;
    }

    Coeff operator*(const Phase& ph) const {
        Coeff r;
        for (const auto& [p, g] : terms_) r.add(p + ph.exponent(), g);
        return r;
    }

    Coeff conj() const {
        Coeff r;
        for (const auto& [p, g] : terms_) r.add(-p, g.conj());
        return r;
    }

    bool operator==(const Coeff& o) const { return terms_ == o.terms_; }
    bool operator!=(const Coeff& o) const { return !(*this == o); }

    Complex to_complex() const {
        Complex z = 0.0;
        for (const auto& [p, g] : terms_) z += g.to_complex() * Phase(p).to_complex();
        return z;
    }

    const std::map<Rational, GaussRational>& parts() const { return terms_; }

private:
    std::map<Rational, GaussRational> terms_;
};

using ExponentVec = std::vector<long long>;

/// Element of the smooth noncommutative torus algebra A_theta: a finite sum
/// of normal-ordered monomials U_1^{x_1}...U_n^{x_n} with exact coefficients.
class TorusElement {
public:
    explicit TorusElement(SkewMatrix theta) : theta_(std::move(theta)) {}

    static TorusElement zero(SkewMatrix theta) { return TorusElement(std::move(theta)); }

    static TorusElement unit(SkewMatrix theta) {
        return monomial(std::move(theta), ExponentVec(0), Coeff::one());
    }

    static TorusElement monomial(SkewMatrix theta, ExponentVec x, Coeff c = Coeff::one()) {
        TorusElement a(std::move(theta));
        if (x.empty()) x.assign(a.n(), 0);
        if (x.size() != a.n()) throw DimensionMismatch("exponent vector has wrong length");
        if (!c.is_zero()) a.terms_.emplace(std::move(x), std::move(c));
        return a;
    }

    std::size_t n() const { return theta_.n(); }
    const SkewMatrix& theta() const { return theta_; }
    const std::map<ExponentVec, Coeff>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const ExponentVec& x, const Coeff& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(x);
        if (it == terms_.end()) {
            terms_.emplace(x, c);
        } else {
            it->second = it->second + c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    TorusElement operator+(const TorusElement& o) const {
        check_theta(o);
        TorusElement r = *this;
        for (const auto& [x, c] : o.terms_) r.add_term(x, c);
        return r;
    }

    TorusElement operator-() const {
        TorusElement r(theta_);
        for (const auto& [x, c] : terms_) r.terms_.emplace(x, -c);
        return r;
    }

    TorusElement operator-(const TorusElement& o) const { return *this + (-o); }

    TorusElement operator*(const Coeff& s) const {
        TorusElement r(theta_);
        for (const auto& [x, c] : terms_) r.add_term(x, c * s);
        return r;
    }

    TorusElement operator*(const Rational& s) const { return *this * Coeff(s); }

    bool operator==(const TorusElement& o) const {
        return theta_ == o.theta_ && terms_ == o.terms_;
    }
    bool operator!=(const TorusElement& o) const { return !(*this == o); }

    void check_theta(const TorusElement& o) const {
        if (theta_ != o.theta_) throw ThetaMismatch();
    }

private:
    SkewMatrix theta_;
    std::map<ExponentVec, Coeff> terms_;
};

/// Reordering phase of the monomial product M(x) M(y) = e(reorder(x,y)) M(x+y):
/// moving each U_j^{y_j} left through the U_i^{x_i} with i > j picks up
/// e(x_i y_j theta_{ij}).
inline Rational reorder_exponent(const SkewMatrix& theta, const ExponentVec& x,
                                 const ExponentVec& y) {
    Rational s(0);
    for (std::size_t i = 1; i < theta.n(); ++i)
        for (std::size_t j = 0; j < i; ++j) {
            long long f = x[i] * y[j];
            if (f != 0) s += theta(i, j) * Rational(f);
        }
    return s;
}

/// Exponent of the commutation factor e(x . theta y).
inline Rational commutation_exponent(const SkewMatrix& theta, const ExponentVec& x,
                                     const ExponentVec& y) {
    Rational s(0);
    for (std::size_t i = 0; i < theta.n(); ++i)
        for (std::size_t j = 0; j < theta.n(); ++j) {
            long long f = x[i] * y[j];
            if (f != 0) s += theta(i, j) * Rational(f);
        }
    return s;
}

inline TorusElement mul(const TorusElement& a, const TorusElement& b) {
    a.check_theta(b);
    TorusElement r(a.theta());
    for (const auto& [x, cx] : a.terms())
        for (const auto& [y, cy] : b.terms()) {
            ExponentVec z(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] + y[i];
            Phase ph = e(reorder_exponent(a.theta(), x, y));
            r.add_term(z, (cx * cy) * ph);
        }
    return r;
}

inline TorusElement operator*(const TorusElement& a, const TorusElement& b) { return mul(a, b); }

/// Antilinear involution with U_x^* = U_x^{-1}; reversing the generator string
/// of M(x)^{-1} into normal order contributes e(sum_{i>j} x_i x_j theta_{ij}).
inline TorusElement star(const TorusElement& a) {
    TorusElement r(a.theta());
    for (const auto& [x, c] : a.terms()) {
        ExponentVec nx(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) nx[i] = -x[i];
        Phase ph = e(reorder_exponent(a.theta(), x, x));
        r.add_term(nx, c.conj() * ph);
    }
    return r;
}

/// Basis derivation: delta_j U_x = x_j U_x, extended linearly.
inline TorusElement delta(std::size_t j, const TorusElement& a) {
    if (j < 1 || j > a.n()) throw IndexOutOfRange("derivation index out of range");
    TorusElement r(a.theta());
    for (const auto& [x, c] : a.terms()) {
        long long xj = x[j - 1];
        if (xj != 0) r.add_term(x, c * Rational(xj));
    }
    return r;
}

/// One-form over A_theta: rank-n coefficient vector of algebra elements, one
/// per Clifford generator.
class OneForm {
public:
    explicit OneForm(std::vector<TorusElement> components) : comps_(std::move(components)) {
        if (comps_.empty()) throw DimensionTooSmall("one-form needs at least one component");
        for (const auto& c : comps_)
            if (c.n() != comps_.size())
                throw DimensionMismatch("one-form component count must equal n");
    }

    static OneForm zero(const SkewMatrix& theta) {
        return OneForm(std::vector<TorusElement>(theta.n(), TorusElement::zero(theta)));
    }

    std::size_t n() const { return comps_.size(); }
    const TorusElement& component(std::size_t i) const { return comps_.at(i); }
    const std::vector<TorusElement>& components() const { return comps_; }

    bool is_zero() const {
        for (const auto& c : comps_)
            if (!c.is_zero()) return false;
        return true;
    }

    bool operator==(const OneForm& o) const { return comps_ == o.comps_; }
    bool operator!=(const OneForm& o) const { return !(*this == o); }

    OneForm operator+(const OneForm& o) const {
        if (n() != o.n()) throw DimensionMismatch();
        std::vector<TorusElement> r;
        r.reserve(n());
        for (std::size_t i = 0; i < n(); ++i) r.push_back(comps_[i] + o.comps_[i]);
        return OneForm(std::move(r));
    }

    OneForm operator-(const OneForm& o) const {
        if (n() != o.n()) throw DimensionMismatch();
        std::vector<TorusElement> r;
        r.reserve(n());
        for (std::size_t i = 0; i < n(); ++i) r.push_back(comps_[i] - o.comps_[i]);
        return OneForm(std::move(r));
    }

private:
    std::vector<TorusElement> comps_;
};

/// [D, a] for D = sum_i (tau_i . delta) A_i + B: component i collects
/// (tau_i . x) per monomial; the bounded part contributes nothing since it
/// commutes with the algebra. tau columns are the frame vectors.
inline OneForm dirac_commutator_frame(const RatMatrix& tau, const TorusElement& a) {
    if (!tau.square() || tau.rows() != a.n())
        throw DimensionMismatch("frame size does not match the algebra");
    std::vector<TorusElement> comps(a.n(), TorusElement::zero(a.theta()));
    for (const auto& [x, c] : a.terms()) {
        for (std::size_t i = 0; i < a.n(); ++i) {
            Rational dot(0);
            for (std::size_t k = 0; k < a.n(); ++k)
                if (x[k] != 0) dot += tau(k, i) * Rational(x[k]);
            if (!dot.is_zero()) comps[i].add_term(x, c * dot);
        }
    }
    return OneForm(std::move(comps));
}

/// Sign of the conjugated gauge term in an inner fluctuation:
/// -1 iff n = 1 mod 4.
struct RealSign {
    std::size_t n;
    int value;
};

inline RealSign epsilon_j(std::size_t n) {
    if (n < 1) throw DimensionTooSmall("dimension must be >= 1");
    return RealSign{n, n % 4 == 1 ? -1 : +1};
}

/// Result of assembling D' = D + c + eps_J J c J^dagger on the truncated
/// circle basis e_mu, |mu| <= cutoff.
struct FluctuationReport {
    long long cutoff = 0;
    std::size_t interior = 0;       // residual measured on columns |mu| <= cutoff/2
    double max_residual = 0.0;      // max interior column norm of D' - D
};

/// Dimension-1 inner fluctuation on the circle. D e_mu = mu e_mu, the gauge
/// term acts as the multiplication operator of its symbolic coefficient, and
/// J e_mu = conj . shift to e_{-mu}. Truncation effects stay outside the
/// interior columns as long as the coefficient's frequencies stay below
/// cutoff/2.
inline FluctuationReport fluctuate_dim1(const TorusElement& gauge, long long cutoff) {
    if (gauge.n() != 1) throw DimensionMismatch("circle fluctuation needs n = 1");
    if (cutoff < 4) throw CutoffTooSmall("cutoff must be >= 4");

    const long long m = cutoff;
    const std::size_t dim = static_cast<std::size_t>(2 * m + 1);
    auto idx = [m](long long mu) { return static_cast<std::size_t>(mu + m); };

    // Multiplication operator of the gauge coefficient: U_k e_mu = e_{mu+k}.
    CMatrix c(dim, dim);
    for (const auto& [x, coeff] : gauge.terms()) {
        long long k = x[0];
        Complex z = coeff.to_complex();
        for (long long mu = -m; mu <= m; ++mu)
            if (mu + k >= -m && mu + k <= m) c(idx(mu + k), idx(mu)) += z;
    }

    // (J c J^dagger)(rho, mu) = conj(c(-rho, -mu)).
    CMatrix jcj(dim, dim);
    for (long long rho = -m; rho <= m; ++rho)
        for (long long mu = -m; mu <= m; ++mu)
            jcj(idx(rho), idx(mu)) = std::conj(c(idx(-rho), idx(-mu)));

    const int eps = epsilon_j(1).value;
    CMatrix diff = c + jcj * Complex(eps, 0.0);  // D' - D

    FluctuationReport rpt;
    rpt.cutoff = m;
    double worst = 0.0;
    for (long long mu = -m / 2; mu <= m / 2; ++mu) {
        double col = 0.0;
        for (long long rho = -m; rho <= m; ++rho) col += std::norm(diff(idx(rho), idx(mu)));
        worst = std::max(worst, std::sqrt(col));
        ++rpt.interior;
    }
    rpt.max_residual = worst;
    return rpt;
}

}  // namespace nct

#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "nct/matrix.hpp"

namespace nct {

/// Element of SO(n,n|Z): a 2n x 2n integer matrix preserving the split
/// quadratic form sum_i x_i x_{n+i}, with determinant 1. Block views
/// A, B, C, D are the four n x n corners.
class SonnElement {
public:
    SonnElement(std::size_t n, IntMatrix m) : n_(n), m_(std::move(m)) {
        if (m_.rows() != 2 * n_ || m_.cols() != 2 * n_)
            throw DimensionMismatch("group element must be 2n x 2n");
    }

    static SonnElement identity(std::size_t n) {
        return SonnElement(n, IntMatrix::identity(2 * n));
    }

    std::size_t n() const { return n_; }
    const IntMatrix& mat() const { return m_; }

    IntMatrix block_a() const { return m_.block(0, 0, n_, n_); }
    IntMatrix block_b() const { return m_.block(0, n_, n_, n_); }
    IntMatrix block_c() const { return m_.block(n_, 0, n_, n_); }
    IntMatrix block_d() const { return m_.block(n_, n_, n_, n_); }

    bool operator==(const SonnElement& o) const { return n_ == o.n_ && m_ == o.m_; }
    bool operator!=(const SonnElement& o) const { return !(*this == o); }

private:
    std::size_t n_;
    IntMatrix m_;
};

/// Gram matrix of the split form: [[0, I],[I, 0]]. The 1/2 normalization of
/// the quadratic form cancels on both sides of the invariance identity.
inline IntMatrix split_form_gram(std::size_t n) {
    IntMatrix q(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        q(i, n + i) = 1;
        q(n + i, i) = 1;
    }
    return q;
}

/// True iff m^t [[0,I],[I,0]] m = [[0,I],[I,0]] and det(m) = 1.
inline bool verify_membership(const IntMatrix& m) {
    if (!m.square() || m.rows() % 2 != 0 || m.rows() == 0) return false;
    std::size_t n = m.rows() / 2;
    IntMatrix q = split_form_gram(n);
    if (m.transpose() * q * m != q) return false;
    return det(m) == Rational(1);
}

inline bool verify_membership(const SonnElement& g) { return verify_membership(g.mat()); }

/// rho(R) = [[R, 0],[0, (R^t)^{-1}]] for R in GL(n,Z).
inline SonnElement make_rho(const IntMatrix& r) {
    if (!r.square()) throw NonSquare("rho payload must be square");
    Rational d = det(r);
    if (d != Rational(1) && d != Rational(-1))
        throw NotUnimodular("rho payload must have determinant +-1");
    std::size_t n = r.rows();
    IntMatrix rti = to_integer(rat_inverse(to_rational(r.transpose())));
    IntMatrix m(2 * n, 2 * n);
    m.set_block(0, 0, r);
    m.set_block(n, n, rti);
    return SonnElement(n, m);
}

/// nu(N) = [[I, N],[0, I]] for integer skew N.
inline SonnElement make_nu(const IntMatrix& nmat) {
    if (!is_skew(nmat)) throw NotSkew("nu payload must be integer skew-symmetric");
    std::size_t n = nmat.rows();
    IntMatrix m = IntMatrix::identity(2 * n);
    m.set_block(0, n, nmat);
    return SonnElement(n, m);
}

/// The permutation interchanging x_1 <-> x_{n+1} and x_2 <-> x_{n+2}.
inline SonnElement make_sigma2(std::size_t n) {
    if (n < 2) throw DimensionTooSmall("sigma2 needs n >= 2");
    IntMatrix m(2 * n, 2 * n);
    std::vector<std::size_t> target(2 * n);
    for (std::size_t i = 0; i < 2 * n; ++i) target[i] = i;
    target[0] = n;
    target[n] = 0;
    target[1] = n + 1;
    target[n + 1] = 1;
    for (std::size_t i = 0; i < 2 * n; ++i) m(i, target[i]) = 1;
    return SonnElement(n, m);
}

inline SonnElement compose(const SonnElement& g, const SonnElement& h) {
    if (g.n() != h.n()) throw DimensionMismatch("composing elements of different n");
    return SonnElement(g.n(), g.mat() * h.mat());
}

/// Fractional-linear action g(theta) = (A theta + B)(C theta + D)^{-1}.
/// Throws ActionUndefined when C theta + D is singular.
inline SkewMatrix act_on_theta(const SonnElement& g, const SkewMatrix& theta) {
    if (g.n() != theta.n()) throw DimensionMismatch("group element and theta disagree on n");
    RatMatrix a = to_rational(g.block_a());
    RatMatrix b = to_rational(g.block_b());
    RatMatrix c = to_rational(g.block_c());
    RatMatrix d = to_rational(g.block_d());
    RatMatrix denom = c * theta.mat() + d;
    if (det(denom).is_zero()) throw ActionUndefined(0);
    RatMatrix result = (a * theta.mat() + b) * rat_inverse(denom);
    return SkewMatrix(result);
}

/// One letter of a generator word.
struct RhoToken {
    IntMatrix r;
};
struct NuToken {
    IntMatrix n;
};
struct Sigma2Token {};

using WordToken = std::variant<RhoToken, NuToken, Sigma2Token>;

/// Ordered word in the three generator families. Payloads are validated on
/// construction; sigma2 letters are dimension-free until applied.
class GeneratorWord {
public:
    GeneratorWord() = default;
    explicit GeneratorWord(std::vector<WordToken> tokens) : tokens_(std::move(tokens)) {
        for (const auto& t : tokens_) validate(t);
    }

    void push(WordToken t) {
        validate(t);
        tokens_.push_back(std::move(t));
    }

    const std::vector<WordToken>& tokens() const { return tokens_; }
    std::size_t size() const { return tokens_.size(); }
    bool empty() const { return tokens_.empty(); }

private:
    static void validate(const WordToken& t) {
        if (const auto* rho = std::get_if<RhoToken>(&t)) {
            Rational d = det(rho->r);
            if (d != Rational(1) && d != Rational(-1))
                throw NotUnimodular("rho letter must have determinant +-1");
        } else if (const auto* nu = std::get_if<NuToken>(&t)) {
            if (!is_skew(nu->n)) throw NotSkew("nu letter must be integer skew-symmetric");
        }
    }

    std::vector<WordToken> tokens_;
};

inline SonnElement token_element(const WordToken& t, std::size_t n) {
    if (const auto* rho = std::get_if<RhoToken>(&t)) {
        if (rho->r.rows() != n) throw DimensionMismatch("rho letter has wrong n");
        return make_rho(rho->r);
    }
    if (const auto* nu = std::get_if<NuToken>(&t)) {
        if (nu->n.rows() != n) throw DimensionMismatch("nu letter has wrong n");
        return make_nu(nu->n);
    }
    return make_sigma2(n);
}

/// Applies the word letter by letter, left to right. Equals the action of
/// compose_word(w, n) whenever every intermediate step is defined.
inline SkewMatrix word_act(const GeneratorWord& w, const SkewMatrix& theta) {
    SkewMatrix cur = theta;
    std::size_t step = 0;
    for (const auto& t : w.tokens()) {
        try {
            cur = act_on_theta(token_element(t, theta.n()), cur);
        } catch (const ActionUndefined&) {
            throw ActionUndefined(step);
        }
        ++step;
    }
    return cur;
}

/// Single group element whose action equals applying the word left to right:
/// the product of the letters in reverse order.
inline SonnElement compose_word(const GeneratorWord& w, std::size_t n) {
    SonnElement g = SonnElement::identity(n);
    for (const auto& t : w.tokens()) g = compose(token_element(t, n), g);
    return g;
}

}  // namespace nct

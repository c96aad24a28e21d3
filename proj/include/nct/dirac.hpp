#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "nct/matrix.hpp"
#include "nct/sonn.hpp"
#include "nct/torus_algebra.hpp"

namespace nct {

/// Parameterization of an equivariant Dirac operator
/// D = sum_i (tau_i . delta) A_i + B: the i-th column of tau is the spanning
/// vector tau_i, B is the optional bounded self-adjoint commutant part on the
/// spinor factor, and mu_shift in {0, 1/2}^n records the spin structure.
struct DiracData {
    std::size_t n = 0;
    RatMatrix tau;
    std::optional<CMatrix> bounded;
    std::vector<Rational> mu_shift;

    DiracData(std::size_t n_, RatMatrix tau_, std::optional<CMatrix> b = std::nullopt,
              std::vector<Rational> mu = {})
        : n(n_), tau(std::move(tau_)), bounded(std::move(b)), mu_shift(std::move(mu)) {
        if (tau.rows() != n || tau.cols() != n) throw DimensionMismatch("tau must be n x n");
        if (det(tau).is_zero()) throw SingularMatrix("tau columns must span R^n");
        if (mu_shift.empty()) mu_shift.assign(n, Rational(0));
        if (mu_shift.size() != n) throw DimensionMismatch("mu_shift must have n entries");
        for (const auto& s : mu_shift)
            if (!s.is_zero() && s != Rational(1, 2))
                throw Error("mu_shift entries must be 0 or 1/2");
        if (bounded) {
            std::size_t dim = std::size_t(1) << (n / 2);
            if (bounded->rows() != dim || bounded->cols() != dim)
                throw DimensionMismatch("bounded part must act on the spinor factor");
            if (hermitian_defect(*bounded) > 1e-12)
                throw Error("bounded part must be self-adjoint");
        }
    }

    static DiracData standard(std::size_t n) { return DiracData(n, RatMatrix::identity(n)); }

    bool operator==(const DiracData& o) const {
        if (n != o.n || !(tau == o.tau) || mu_shift != o.mu_shift) return false;
        if (bounded.has_value() != o.bounded.has_value()) return false;
        if (bounded && max_abs(*bounded - *o.bounded) != 0.0) return false;
        return true;
    }
};

/// nu(N) leaves the Dirac operator untouched; only theta moves.
inline DiracData transform_nu(const DiracData& d, const IntMatrix& nmat) {
    if (!is_skew(nmat)) throw NotSkew("nu payload must be integer skew-symmetric");
    if (nmat.rows() != d.n) throw DimensionMismatch();
    return d;
}

/// rho(R): tau_i -> R^{-1} tau_i columnwise; bounded part and spin structure
/// are untouched.
inline DiracData transform_rho(const DiracData& d, const IntMatrix& r) {
    if (r.rows() != d.n || !r.square()) throw DimensionMismatch();
    Rational dr = det(r);
    if (dr != Rational(1) && dr != Rational(-1)) throw NotUnimodular();
    RatMatrix rinv = rat_inverse(to_rational(r));
    return DiracData(d.n, rinv * d.tau, d.bounded, d.mu_shift);
}

/// Top 2x2 block of theta; invertible iff nonzero.
inline RatMatrix theta11(const SkewMatrix& theta) {
    if (theta.n() < 2) throw DimensionTooSmall("theta11 needs n >= 2");
    return theta.mat().block(0, 0, 2, 2);
}

inline RatMatrix theta12(const SkewMatrix& theta) {
    return theta.mat().block(0, 2, 2, theta.n() - 2);
}

inline RatMatrix theta22(const SkewMatrix& theta) {
    return theta.mat().block(2, 2, theta.n() - 2, theta.n() - 2);
}

/// sigma2(theta) by the block formula
/// [[th11^{-1}, -th11^{-1} th12],[th21 th11^{-1}, th22 - th21 th11^{-1} th12]].
inline SkewMatrix sigma2_block(const SkewMatrix& theta) {
    std::size_t n = theta.n();
    RatMatrix t11 = theta11(theta);
    if (det(t11).is_zero()) throw Theta11Singular();
    RatMatrix inv11 = rat_inverse(t11);
    RatMatrix t12 = theta12(theta);
    RatMatrix t21 = theta.mat().block(2, 0, n - 2, 2);
    RatMatrix out(n, n);
    out.set_block(0, 0, inv11);
    out.set_block(0, 2, -(inv11 * t12));
    out.set_block(2, 0, t21 * inv11);
    out.set_block(2, 2, theta22(theta) - t21 * inv11 * t12);
    return SkewMatrix(out);
}

/// Frame transformation matrix of the sigma2 move,
/// F = [[-th11^{-1}, 0],[th12^t th11^{-1}, I_q]].
inline RatMatrix sigma2_frame_matrix(const SkewMatrix& theta) {
    std::size_t n = theta.n();
    RatMatrix t11 = theta11(theta);
    if (det(t11).is_zero()) throw Theta11Singular();
    RatMatrix inv11 = rat_inverse(t11);
    RatMatrix f(n, n);
    f.set_block(0, 0, -inv11);
    if (n > 2) {
        f.set_block(2, 0, theta12(theta).transpose() * inv11);
        f.set_block(2, 2, RatMatrix::identity(n - 2));
    }
    return f;
}

/// sigma2: tau -> F tau. The bounded part is reset to absent (the transformed
/// operator's commutant term is arbitrary, so the canonical representative
/// carries none); the spin structure is carried through unchanged.
inline DiracData transform_sigma2(const DiracData& d, const SkewMatrix& theta) {
    if (theta.n() != d.n) throw DimensionMismatch();
    RatMatrix f = sigma2_frame_matrix(theta);
    return DiracData(d.n, f * d.tau, std::nullopt, d.mu_shift);
}

/// Joint fold of (Dirac data, theta) along a generator word, left to right.
inline std::pair<DiracData, SkewMatrix> transform_word(const DiracData& d, const SkewMatrix& theta,
                                                       const GeneratorWord& w) {
    DiracData cur_d = d;
    SkewMatrix cur_t = theta;
    std::size_t step = 0;
    for (const auto& tok : w.tokens()) {
        try {
            if (const auto* rho = std::get_if<RhoToken>(&tok)) {
                cur_d = transform_rho(cur_d, rho->r);
                cur_t = act_on_theta(make_rho(rho->r), cur_t);
            } else if (const auto* nu = std::get_if<NuToken>(&tok)) {
                cur_d = transform_nu(cur_d, nu->n);
                cur_t = act_on_theta(make_nu(nu->n), cur_t);
            } else {
                cur_d = transform_sigma2(cur_d, cur_t);
                cur_t = act_on_theta(make_sigma2(cur_t.n()), cur_t);
            }
        } catch (const Theta11Singular&) {
            throw ActionUndefined(step, "sigma2 undefined: theta11 singular");
        } catch (const ActionUndefined&) {
            throw ActionUndefined(step);
        }
        ++step;
    }
    return {cur_d, cur_t};
}

/// [D, a] for the Dirac operator described by d.
inline OneForm dirac_commutator(const DiracData& d, const TorusElement& a) {
    if (d.n != a.n()) throw DimensionMismatch();
    return dirac_commutator_frame(d.tau, a);
}

}  // namespace nct

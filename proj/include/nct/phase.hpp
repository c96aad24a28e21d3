#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include "nct/rational.hpp"

namespace nct {

/// Unit-modulus value e(r) = exp(2*pi*i*r) with exact rational exponent, reduced mod 1.
class Phase {
public:
    Phase() : exp_(0) {}
    explicit Phase(Rational exponent) : exp_(exponent.frac()) {}

    static Phase one() { return Phase(); }

    const Rational& exponent() const { return exp_; }
    bool is_one() const { return exp_.is_zero(); }

    Phase operator*(const Phase& o) const { return Phase(exp_ + o.exp_); }
    Phase& operator*=(const Phase& o) { return *this = *this * o; }

    Phase inverse() const { return Phase(-exp_); }
    Phase conj() const { return inverse(); }

    Phase pow(long long k) const { return Phase(exp_ * Rational(k)); }

    bool operator==(const Phase& o) const { return exp_ == o.exp_; }
    bool operator!=(const Phase& o) const { return !(*this == o); }

    std::complex<double> to_complex() const {
        double t = 2.0 * std::numbers::pi * exp_.to_double();
        return {std::cos(t), std::sin(t)};
    }

private:
    Rational exp_;
};

inline Phase phase_mul(const Phase& p, const Phase& q) { return p * q; }

/// e(r) for a rational exponent r.
inline Phase e(Rational r) { return Phase(std::move(r)); }

/// exp(2*pi*i*x) for numeric x.
inline std::complex<double> e(double x) {
    double t = 2.0 * std::numbers::pi * x;
    return {std::cos(t), std::sin(t)};
}

}  // namespace nct

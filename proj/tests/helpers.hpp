#pragma once

#include <cstdlib>
#include <random>
#include <vector>

#include "nct/matrix.hpp"
#include "nct/sonn.hpp"
#include "nct/torus_algebra.hpp"

namespace testutil {

using namespace nct;

inline std::uint64_t battery_seed() {
    if (const char* s = std::getenv("NCT_MORITA_SEED")) return std::strtoull(s, nullptr, 10);
    return 0;
}

inline Rational random_rational(std::mt19937_64& rng, long long max_den = 12,
                                long long max_num = 12) {
    std::uniform_int_distribution<long long> num(-max_num, max_num);
    std::uniform_int_distribution<long long> den(1, max_den);
    return Rational(num(rng), den(rng));
}

/// Random rational skew matrix; optionally forces the (1,2) entry nonzero so
/// that the top 2x2 block is invertible.
inline SkewMatrix random_skew(std::mt19937_64& rng, std::size_t n, bool top_block_invertible,
                              long long max_den = 12) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            Rational v = random_rational(rng, max_den);
            if (i == 0 && j == 1 && top_block_invertible)
                while (v.is_zero()) v = random_rational(rng, max_den);
            m(i, j) = v;
            m(j, i) = -v;
        }
    return SkewMatrix(m);
}

/// Random rational skew matrix whose entries share one denominator; keeps the
/// clock/shift representation dimension at denominator^(n-1).
inline SkewMatrix random_skew_common_den(std::mt19937_64& rng, std::size_t n, long long den) {
    std::uniform_int_distribution<long long> num(-den + 1, den - 1);
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            m(i, j) = Rational(num(rng), den);
            m(j, i) = -m(i, j);
        }
    return SkewMatrix(m);
}

/// Random integer skew matrix with entries in [-bound, bound].
inline IntMatrix random_int_skew(std::mt19937_64& rng, std::size_t n, long long bound = 3) {
    std::uniform_int_distribution<long long> dist(-bound, bound);
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            long long v = dist(rng);
            m(i, j) = v;
            m(j, i) = -v;
        }
    return m;
}

/// Random GL(n,Z) element built from elementary row operations.
inline IntMatrix random_unimodular(std::mt19937_64& rng, std::size_t n, int ops = 6) {
    std::uniform_int_distribution<std::size_t> row(0, n - 1);
    std::uniform_int_distribution<long long> coef(-2, 2);
    std::uniform_int_distribution<int> kind(0, 2);
    IntMatrix m = IntMatrix::identity(n);
    for (int k = 0; k < ops; ++k) {
        std::size_t i = row(rng), j = row(rng);
        if (i == j) continue;
        switch (kind(rng)) {
            case 0: {
                long long c = coef(rng);
                for (std::size_t col = 0; col < n; ++col) m(i, col) += Int(c) * m(j, col);
                break;
            }
            case 1:
                for (std::size_t col = 0; col < n; ++col) std::swap(m(i, col), m(j, col));
                break;
            default:
                for (std::size_t col = 0; col < n; ++col) m(i, col) = -m(i, col);
        }
    }
    return m;
}

/// Random invertible rational matrix with small entries.
inline RatMatrix random_invertible(std::mt19937_64& rng, std::size_t n) {
    while (true) {
        RatMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m(i, j) = random_rational(rng, 4, 4);
        if (!det(m).is_zero()) return m;
    }
}

/// Random algebra element with a handful of monomials.
inline TorusElement random_element(std::mt19937_64& rng, const SkewMatrix& theta,
                                   std::size_t terms = 3, long long box = 2) {
    std::uniform_int_distribution<long long> expo(-box, box);
    std::uniform_int_distribution<long long> mag(-3, 3);
    std::uniform_int_distribution<long long> ph(0, 7);
    TorusElement a = TorusElement::zero(theta);
    for (std::size_t t = 0; t < terms; ++t) {
        ExponentVec x(theta.n());
        for (auto& c : x) c = expo(rng);
        Coeff c;
        c.add(Rational(ph(rng), 8), GaussRational(Rational(mag(rng), 2), Rational(mag(rng), 3)));
        a.add_term(x, c);
    }
    return a;
}

inline ExponentVec random_exponent(std::mt19937_64& rng, std::size_t n, long long box = 3) {
    std::uniform_int_distribution<long long> expo(-box, box);
    ExponentVec x(n);
    for (auto& c : x) c = expo(rng);
    return x;
}

}  // namespace testutil

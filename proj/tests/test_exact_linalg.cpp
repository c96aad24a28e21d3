#include <doctest.h>

#include "helpers.hpp"
#include "nct/matrix.hpp"
#include "nct/phase.hpp"

using namespace nct;

namespace {
RatMatrix rectangular() {
    RatMatrix m(2, 3);
    m(0, 0) = Rational(1);
    return m;
}
}  // namespace

TEST_CASE("rat_inverse on the identity") {
    RatMatrix id = RatMatrix::identity(3);
    CHECK(rat_inverse(id) == id);
}

TEST_CASE("rat_inverse of a skew 2x2") {
    RatMatrix m{{Rational(0), Rational(1, 2)}, {Rational(-1, 2), Rational(0)}};
    RatMatrix inv = rat_inverse(m);
    RatMatrix expected{{Rational(0), Rational(-2)}, {Rational(2), Rational(0)}};
    CHECK(inv == expected);
    CHECK(m * inv == RatMatrix::identity(2));
    CHECK(inv * m == RatMatrix::identity(2));
}

TEST_CASE("rat_inverse rejects singular input") {
    RatMatrix m{{Rational(1), Rational(1)}, {Rational(1), Rational(1)}};
    CHECK_THROWS_AS(rat_inverse(m), SingularMatrix);
}

TEST_CASE("rat_inverse is an involution on random invertible matrices") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t n = 2 + trial % 3;
        RatMatrix m = testutil::random_invertible(rng, n);
        CHECK(rat_inverse(rat_inverse(m)) == m);
        CHECK(m * rat_inverse(m) == RatMatrix::identity(n));
    }
}

TEST_CASE("is_skew") {
    CHECK(is_skew(RatMatrix(4, 4)));
    RatMatrix good{{Rational(0), Rational(1, 3)}, {Rational(-1, 3), Rational(0)}};
    CHECK(is_skew(good));
    RatMatrix bad{{Rational(0), Rational(1, 3)}, {Rational(1, 3), Rational(0)}};
    CHECK_FALSE(is_skew(bad));
    CHECK_THROWS_AS(is_skew(rectangular()), NonSquare);
}

TEST_CASE("skewness is preserved under congruence by integer matrices") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 25; ++trial) {
        std::size_t n = 2 + trial % 3;
        SkewMatrix theta = testutil::random_skew(rng, n, false);
        IntMatrix r = testutil::random_unimodular(rng, n);
        RatMatrix rr = to_rational(r);
        CHECK(is_skew(rr * theta.mat() * rr.transpose()));
    }
}

TEST_CASE("phase multiplication adds exponents mod 1") {
    Phase r = e(Rational(5, 7));
    CHECK(phase_mul(Phase(), r) == r);
    CHECK(phase_mul(e(Rational(1, 3)), e(Rational(1, 3))) == e(Rational(2, 3)));
    CHECK(phase_mul(e(Rational(2, 3)), e(Rational(2, 3))) == e(Rational(1, 3)));
}

TEST_CASE("phase group laws") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        Phase a = e(testutil::random_rational(rng));
        Phase b = e(testutil::random_rational(rng));
        Phase c = e(testutil::random_rational(rng));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * Phase() == a);
        CHECK(a * a.inverse() == Phase());
        // inverse of e(r) is e(1 - r)
        CHECK(a.inverse() == e(Rational(1) - a.exponent()));
    }
}

TEST_CASE("rational parsing and printing round-trips") {
    CHECK(Rational::parse("3/4") == Rational(3, 4));
    CHECK(Rational::parse("-6/8") == Rational(-3, 4));
    CHECK(Rational::parse("5") == Rational(5));
    CHECK(Rational(-3, 4).str() == "-3/4");
    CHECK(Rational(8).str() == "8");
    CHECK_THROWS_AS(Rational::parse("1.5"), ParseError);
    CHECK_THROWS_AS(Rational::parse("x"), ParseError);
    CHECK_THROWS_AS(Rational::parse("1/0"), ParseError);
}

TEST_CASE("rational floor and frac") {
    CHECK(Rational(7, 2).floor() == 3);
    CHECK(Rational(-7, 2).floor() == -4);
    CHECK(Rational(-7, 2).frac() == Rational(1, 2));
    CHECK(Rational(3).frac() == Rational(0));
}

TEST_CASE("determinant of integer matrices is exact") {
    IntMatrix m{{Int(2), Int(0)}, {Int(0), Int(3)}};
    CHECK(det(m) == Rational(6));
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        IntMatrix u = testutil::random_unimodular(rng, 3);
        Rational d = det(u);
        CHECK((d == Rational(1) || d == Rational(-1)));
    }
}

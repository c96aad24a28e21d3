#include <doctest.h>

#include "helpers.hpp"
#include "nct/dirac.hpp"

using namespace nct;

namespace {

SkewMatrix skew2(const Rational& v) {
    return SkewMatrix(RatMatrix{{Rational(0), v}, {-v, Rational(0)}});
}

}  // namespace

TEST_CASE("DiracData validation") {
    CHECK_THROWS_AS(DiracData(2, RatMatrix(2, 2)), SingularMatrix);
    CHECK_THROWS_AS(DiracData(2, RatMatrix::identity(2), std::nullopt,
                              {Rational(1, 3), Rational(0)}),
                    Error);
    DiracData d(2, RatMatrix::identity(2), std::nullopt, {Rational(1, 2), Rational(0)});
    CHECK(d.mu_shift[0] == Rational(1, 2));
}

TEST_CASE("nu leaves the Dirac data unchanged") {
    std::mt19937_64 rng(43);
    DiracData d(3, testutil::random_invertible(rng, 3));
    IntMatrix n = testutil::random_int_skew(rng, 3);
    CHECK(transform_nu(d, n) == d);
    CHECK(transform_nu(transform_nu(d, n), n) == d);
    CHECK(transform_rho(transform_nu(d, n), IntMatrix::identity(3)) == d);
}

TEST_CASE("rho transforms the frame by R^{-1}") {
    DiracData d = DiracData::standard(2);
    CHECK(transform_rho(d, IntMatrix::identity(2)) == d);

    IntMatrix r{{Int(1), Int(1)}, {Int(0), Int(1)}};
    DiracData moved = transform_rho(d, r);
    RatMatrix expected{{Rational(1), Rational(-1)}, {Rational(0), Rational(1)}};
    CHECK(moved.tau == expected);

    IntMatrix rinv = to_integer(rat_inverse(to_rational(r)));
    CHECK(transform_rho(moved, rinv) == d);

    CHECK_THROWS_AS(transform_rho(d, IntMatrix{{Int(2), Int(0)}, {Int(0), Int(1)}}),
                    NotUnimodular);
}

TEST_CASE("sigma2 transforms the frame by the block matrix") {
    SkewMatrix theta = skew2(Rational(1, 2));
    DiracData d = DiracData::standard(2);
    DiracData moved = transform_sigma2(d, theta);
    RatMatrix expected{{Rational(0), Rational(2)}, {Rational(-2), Rational(0)}};
    CHECK(moved.tau == expected);

    // applying the transform again at sigma2(theta) restores the frame
    DiracData back = transform_sigma2(moved, sigma2_block(theta));
    CHECK(back.tau == RatMatrix::identity(2));

    CHECK_THROWS_AS(transform_sigma2(d, SkewMatrix::zero(2)), Theta11Singular);
}

TEST_CASE("sigma2 resets the bounded part and keeps the spin shift") {
    SkewMatrix theta = skew2(Rational(1, 2));
    CMatrix b{{Complex(1.0, 0.0), Complex(0.0, 1.0)}, {Complex(0.0, -1.0), Complex(2.0, 0.0)}};
    DiracData d(2, RatMatrix::identity(2), b, {Rational(1, 2), Rational(0)});
    DiracData moved = transform_sigma2(d, theta);
    CHECK_FALSE(moved.bounded.has_value());
    CHECK(moved.mu_shift == d.mu_shift);
}

TEST_CASE("sigma2 on Dirac data is an involution") {
    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t n = 2 + trial % 3;
        SkewMatrix theta = testutil::random_skew(rng, n, true);
        DiracData d(n, testutil::random_invertible(rng, n));
        DiracData once = transform_sigma2(d, theta);
        CHECK_FALSE(det(once.tau).is_zero());
        DiracData twice = transform_sigma2(once, sigma2_block(theta));
        CHECK(twice.tau == d.tau);
    }
}

TEST_CASE("the two displayed forms of the transformed frame agree") {
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t n = 2 + trial % 3;
        SkewMatrix theta = testutil::random_skew(rng, n, true);
        RatMatrix inv11 = rat_inverse(theta11(theta));
        std::size_t q = n - 2;
        // G acts on the derivation vector; F acts on the frame. They are
        // transposes of one another.
        RatMatrix g(n, n);
        g.set_block(0, 0, inv11);
        if (q > 0) {
            g.set_block(0, 2, -(inv11 * theta12(theta)));
            g.set_block(2, 2, RatMatrix::identity(q));
        }
        CHECK(g.transpose() == sigma2_frame_matrix(theta));
    }
}

TEST_CASE("transform_word basics") {
    SkewMatrix theta = skew2(Rational(1, 2));
    DiracData d = DiracData::standard(2);

    auto [d0, t0] = transform_word(d, theta, GeneratorWord());
    CHECK(d0 == d);
    CHECK(t0 == theta);

    GeneratorWord twice({Sigma2Token{}, Sigma2Token{}});
    auto [d2, t2] = transform_word(d, theta, twice);
    CHECK(d2 == d);
    CHECK(t2 == theta);

    std::mt19937_64 rng(59);
    IntMatrix r = testutil::random_unimodular(rng, 2);
    IntMatrix rinv = to_integer(rat_inverse(to_rational(r)));
    GeneratorWord cancel({RhoToken{r}, RhoToken{rinv}});
    auto [dr, tr] = transform_word(d, theta, cancel);
    CHECK(dr == d);
    CHECK(tr == theta);
}

TEST_CASE("transform_word surfaces the failing step") {
    DiracData d = DiracData::standard(2);
    GeneratorWord w({NuToken{IntMatrix(2, 2)}, Sigma2Token{}});
    try {
        transform_word(d, SkewMatrix::zero(2), w);
        CHECK(false);
    } catch (const ActionUndefined& e) {
        CHECK(e.step == 1);
    }
}

TEST_CASE("frame stays invertible along random words") {
    std::mt19937_64 rng(61);
    std::uniform_int_distribution<int> kind(0, 2);
    int checked = 0;
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t n = 2 + trial % 3;
        SkewMatrix theta = testutil::random_skew(rng, n, true);
        DiracData d(n, testutil::random_invertible(rng, n));
        GeneratorWord w;
        for (int i = 0; i < 4; ++i) {
            switch (kind(rng)) {
                case 0: w.push(RhoToken{testutil::random_unimodular(rng, n)}); break;
                case 1: w.push(NuToken{testutil::random_int_skew(rng, n)}); break;
                default: w.push(Sigma2Token{});
            }
        }
        try {
            auto [dw, tw] = transform_word(d, theta, w);
            CHECK_FALSE(det(dw.tau).is_zero());
            ++checked;
        } catch (const ActionUndefined&) {
            // some words leave the domain; that is expected
        }
    }
    CHECK(checked >= 30);
}

TEST_CASE("transformed frame matches the symbolic Dirac commutator") {
    std::mt19937_64 rng(67);
    for (int trial = 0; trial < 25; ++trial) {
        std::size_t n = 2 + trial % 2;
        SkewMatrix theta = testutil::random_skew(rng, n, true);
        DiracData d = DiracData::standard(n);
        DiracData moved = transform_sigma2(d, theta);

        RatMatrix inv11 = rat_inverse(theta11(theta));
        RatMatrix lead(2, n);
        lead.set_block(0, 0, inv11);
        if (n > 2) lead.set_block(0, 2, -(inv11 * theta12(theta)));

        ExponentVec x = testutil::random_exponent(rng, n, 2);
        TorusElement ux = TorusElement::monomial(theta, x);
        OneForm w = dirac_commutator(moved, ux);
        for (std::size_t i = 0; i < n; ++i) {
            Rational ci(0);
            if (i < 2)
                for (std::size_t j = 0; j < n; ++j) ci += lead(i, j) * Rational(x[j]);
            else
                ci = Rational(x[i]);
            CHECK(w.component(i) == ux * ci);
        }
    }
}

#include <doctest.h>

#include "helpers.hpp"
#include "nct/dirac.hpp"
#include "nct/sonn.hpp"

using namespace nct;

namespace {

GeneratorWord random_word(std::mt19937_64& rng, std::size_t n, std::size_t len) {
    std::uniform_int_distribution<int> kind(0, 2);
    GeneratorWord w;
    for (std::size_t i = 0; i < len; ++i) {
        switch (kind(rng)) {
            case 0: w.push(RhoToken{testutil::random_unimodular(rng, n)}); break;
            case 1: w.push(NuToken{testutil::random_int_skew(rng, n)}); break;
            default: w.push(Sigma2Token{});
        }
    }
    return w;
}

}  // namespace

TEST_CASE("make_rho") {
    CHECK(make_rho(IntMatrix::identity(2)) == SonnElement::identity(2));

    IntMatrix r{{Int(1), Int(1)}, {Int(0), Int(1)}};
    SonnElement g = make_rho(r);
    CHECK(g.block_a() == r);
    IntMatrix expected_d{{Int(1), Int(0)}, {Int(-1), Int(1)}};
    CHECK(g.block_d() == expected_d);
    CHECK(verify_membership(g));

    IntMatrix bad{{Int(2), Int(0)}, {Int(0), Int(1)}};
    CHECK_THROWS_AS(make_rho(bad), NotUnimodular);
}

TEST_CASE("make_nu") {
    CHECK(make_nu(IntMatrix(2, 2)) == SonnElement::identity(2));

    IntMatrix n{{Int(0), Int(3)}, {Int(-3), Int(0)}};
    SonnElement g = make_nu(n);
    CHECK(g.block_b() == n);
    CHECK(verify_membership(g));

    IntMatrix sym{{Int(0), Int(1)}, {Int(1), Int(0)}};
    CHECK_THROWS_AS(make_nu(sym), NotSkew);
}

TEST_CASE("make_sigma2") {
    SonnElement s2 = make_sigma2(2);
    IntMatrix expected{{Int(0), Int(0), Int(1), Int(0)},
                       {Int(0), Int(0), Int(0), Int(1)},
                       {Int(1), Int(0), Int(0), Int(0)},
                       {Int(0), Int(1), Int(0), Int(0)}};
    CHECK(s2.mat() == expected);
    CHECK(det(s2.mat()) == Rational(1));
    CHECK(verify_membership(s2));

    SonnElement s3 = make_sigma2(3);
    CHECK(verify_membership(s3));
    // coordinates 3 and 6 stay put
    CHECK(s3.mat()(2, 2) == 1);
    CHECK(s3.mat()(5, 5) == 1);
    CHECK(s3.mat()(0, 3) == 1);
    CHECK(s3.mat()(1, 4) == 1);

    CHECK_THROWS_AS(make_sigma2(1), DimensionTooSmall);
}

TEST_CASE("verify_membership") {
    CHECK(verify_membership(IntMatrix::identity(4)));
    CHECK(verify_membership(make_rho(IntMatrix{{Int(0), Int(1)}, {Int(1), Int(0)}})));
    IntMatrix scaled = IntMatrix::identity(4);
    scaled(0, 0) = 2;
    CHECK_FALSE(verify_membership(scaled));
}

TEST_CASE("compose") {
    SonnElement s2 = make_sigma2(2);
    SonnElement id = SonnElement::identity(2);
    CHECK(compose(s2, id) == s2);
    CHECK(compose(s2, s2) == id);

    std::mt19937_64 rng(17);
    IntMatrix n1 = testutil::random_int_skew(rng, 3);
    IntMatrix n2 = testutil::random_int_skew(rng, 3);
    CHECK(compose(make_nu(n1), make_nu(n2)) == make_nu(n1 + n2));

    CHECK_THROWS_AS(compose(make_sigma2(2), make_sigma2(3)), DimensionMismatch);
}

TEST_CASE("membership is closed under generators and words") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t n = 2 + trial % 3;
        CHECK(verify_membership(make_rho(testutil::random_unimodular(rng, n))));
        CHECK(verify_membership(make_nu(testutil::random_int_skew(rng, n))));
        CHECK(verify_membership(compose_word(random_word(rng, n, 6), n)));
    }
}

TEST_CASE("act_on_theta on generators") {
    SkewMatrix theta(RatMatrix{{Rational(0), Rational(1, 2)}, {Rational(-1, 2), Rational(0)}});

    CHECK(act_on_theta(SonnElement::identity(2), theta) == theta);

    IntMatrix n{{Int(0), Int(3)}, {Int(-3), Int(0)}};
    SkewMatrix shifted = act_on_theta(make_nu(n), theta);
    CHECK(shifted(0, 1) == Rational(7, 2));

    SkewMatrix big(RatMatrix{{Rational(0), Rational(2)}, {Rational(-2), Rational(0)}});
    SkewMatrix inv = act_on_theta(make_sigma2(2), big);
    CHECK(inv(0, 1) == Rational(-1, 2));
    CHECK(inv(1, 0) == Rational(1, 2));
}

TEST_CASE("action undefined when C theta + D is singular") {
    SkewMatrix zero = SkewMatrix::zero(2);
    CHECK_THROWS_AS(act_on_theta(make_sigma2(2), zero), ActionUndefined);
}

TEST_CASE("nu action adds N and rho action conjugates") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 25; ++trial) {
        std::size_t n = 2 + trial % 3;
        SkewMatrix theta = testutil::random_skew(rng, n, false);

        IntMatrix nu = testutil::random_int_skew(rng, n);
        CHECK(act_on_theta(make_nu(nu), theta) ==
              SkewMatrix(theta.mat() + to_rational(nu)));

        IntMatrix r = testutil::random_unimodular(rng, n);
        RatMatrix rr = to_rational(r);
        CHECK(act_on_theta(make_rho(r), theta) ==
              SkewMatrix(rr * theta.mat() * rr.transpose()));
    }
}

TEST_CASE("word_act basics") {
    SkewMatrix theta(RatMatrix{{Rational(0), Rational(1, 3)}, {Rational(-1, 3), Rational(0)}});
    CHECK(word_act(GeneratorWord(), theta) == theta);

    GeneratorWord twice({Sigma2Token{}, Sigma2Token{}});
    CHECK(word_act(twice, theta) == theta);
}

TEST_CASE("word_act reports the failing step") {
    SkewMatrix zero = SkewMatrix::zero(2);
    GeneratorWord fails({NuToken{IntMatrix(2, 2)}, Sigma2Token{}});
    try {
        word_act(fails, zero);
        CHECK(false);
    } catch (const ActionUndefined& e) {
        CHECK(e.step == 1);
    }
}

TEST_CASE("word action agrees with the composed element") {
    std::mt19937_64 rng(31);
    int done = 0;
    for (int trial = 0; trial < 60 && done < 30; ++trial) {
        std::size_t n = 2 + trial % 3;
        SkewMatrix theta = testutil::random_skew(rng, n, true);
        GeneratorWord w = random_word(rng, n, 1 + trial % 4);
        SkewMatrix via_word(RatMatrix(n, n)), via_element(RatMatrix(n, n));
        bool word_ok = true, elem_ok = true;
        try {
            via_word = word_act(w, theta);
        } catch (const ActionUndefined&) {
            word_ok = false;
        }
        try {
            via_element = act_on_theta(compose_word(w, n), theta);
        } catch (const ActionUndefined&) {
            elem_ok = false;
        }
        if (word_ok && elem_ok) {
            CHECK(via_word == via_element);
            ++done;
        }
    }
    CHECK(done >= 20);
}

TEST_CASE("sigma2 action is an involution when defined") {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t n = 2 + trial % 3;
        SkewMatrix theta = testutil::random_skew(rng, n, true);
        GeneratorWord twice({Sigma2Token{}, Sigma2Token{}});
        CHECK(word_act(twice, theta) == theta);
    }
}

TEST_CASE("sigma2 block formula matches the fractional-linear action") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t n = 2 + trial % 3;
        SkewMatrix theta = testutil::random_skew(rng, n, true);
        CHECK(sigma2_block(theta) == act_on_theta(make_sigma2(n), theta));
    }
}

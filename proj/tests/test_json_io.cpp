#include <doctest.h>

#include "helpers.hpp"
#include "nct/json_io.hpp"

using namespace nct;

TEST_CASE("theta round-trip") {
    std::mt19937_64 rng(83);
    for (int trial = 0; trial < 15; ++trial) {
        SkewMatrix theta = testutil::random_skew(rng, 2 + trial % 3, false);
        Json j = theta_to_json(theta);
        CHECK(theta_from_json(j) == theta);
        // emitted documents are deterministic
        CHECK(theta_to_json(theta_from_json(j)).dump() == j.dump());
    }
    CHECK_THROWS_AS(theta_from_json(Json::parse(R"({"theta": [["0","1"],["1","0"]]})")),
                    ParseError);
    CHECK_THROWS_AS(theta_from_json(Json::parse(R"({"no": 1})")), ParseError);
}

TEST_CASE("group element round-trip and validation") {
    SonnElement g = make_sigma2(2);
    Json j = sonn_to_json(g);
    CHECK(sonn_from_json(j) == g);
    CHECK_THROWS_AS(sonn_from_json(Json::parse(R"({"n": 2, "matrix": [[1]]})")), ParseError);
    // non-integer entries are malformed
    CHECK_THROWS_AS(
        sonn_from_json(Json::parse(
            R"({"n": 1, "matrix": [[0.5, 0],[0, 1]]})")),
        ParseError);
}

TEST_CASE("word round-trip") {
    std::mt19937_64 rng(89);
    GeneratorWord w({RhoToken{testutil::random_unimodular(rng, 2)},
                     NuToken{testutil::random_int_skew(rng, 2)}, Sigma2Token{}});
    Json j = word_to_json(w);
    GeneratorWord back = word_from_json(j);
    CHECK(word_to_json(back).dump() == j.dump());
    CHECK(back.size() == 3);

    // bare array form is accepted
    GeneratorWord short_form = word_from_json(Json::parse(R"(["sigma2","sigma2"])"));
    CHECK(short_form.size() == 2);

    CHECK_THROWS_AS(word_from_json(Json::parse(R"({"word": ["sigma3"]})")), ParseError);
    CHECK_THROWS_AS(word_from_json(Json::parse(R"({"word": [{"rho": [[2,0],[0,1]]}]})")),
                    ParseError);
}

TEST_CASE("algebra element round-trip keeps coefficients exact") {
    std::mt19937_64 rng(97);
    SkewMatrix theta = testutil::random_skew(rng, 2, false);
    for (int trial = 0; trial < 15; ++trial) {
        TorusElement a = testutil::random_element(rng, theta, 4);
        Json j = torus_element_to_json(a);
        CHECK(torus_element_from_json(j) == a);
        CHECK(torus_element_to_json(torus_element_from_json(j)).dump() == j.dump());
    }
}

TEST_CASE("Dirac data round-trip") {
    std::mt19937_64 rng(101);
    DiracData d(2, testutil::random_invertible(rng, 2),
                CMatrix{{Complex(1.0, 0.0), Complex(2.0, -0.5)}, {Complex(2.0, 0.5), Complex(0.0, 0.0)}},
                {Rational(1, 2), Rational(0)});
    Json j = dirac_to_json(d);
    CHECK(dirac_from_json(j) == d);
    CHECK(dirac_to_json(dirac_from_json(j)).dump() == j.dump());

    DiracData bare = DiracData::standard(3);
    CHECK(dirac_from_json(dirac_to_json(bare)) == bare);

    CHECK_THROWS_AS(dirac_from_json(Json::parse(R"({"n": 2, "tau": [["0","0"],["0","0"]]})")),
                    ParseError);
}

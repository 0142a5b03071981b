#include <doctest.h>

#include <cmath>
#include <random>

#include "gfc/specfun.hpp"
#include "oracles.hpp"

using namespace gfc;
namespace sf = gfc::specfun;

TEST_CASE("gamma: classical values") {
    CHECK(sf::gamma(1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(sf::gamma(0.5) == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-14));
    CHECK(sf::gamma(5.0) == doctest::Approx(24.0).epsilon(1e-14));
    // reference evaluation cross-checked against the Stirling oracle
    CHECK(sf::gamma(1.2) == doctest::Approx(oracles::gamma(1.2)).epsilon(1e-13));
    CHECK(sf::gamma(1.2) == doctest::Approx(0.91816874239976061).epsilon(1e-13));
}

TEST_CASE("gamma: relative error below 1e-12 on [0.05, 50]") {
    for (double x = 0.05; x <= 50.0; x += 0.083) {
        double ref = oracles::gamma(x);
        CHECK(std::fabs(sf::gamma(x) - ref) <= 1e-12 * std::fabs(ref));
    }
}

TEST_CASE("gamma: poles and negatives") {
    CHECK_THROWS_AS(sf::gamma(0.0), PoleError);
    CHECK_THROWS_AS(sf::gamma(-3.0), PoleError);
    CHECK(sf::gamma(-0.5) == doctest::Approx(-2.0 * std::sqrt(M_PI)).epsilon(1e-13));
    CHECK(sf::gamma(-2.5) == doctest::Approx(oracles::gamma(-2.5)).epsilon(1e-12));
}

TEST_CASE("gamma: functional equation on 1000 random points") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> xs(0.1, 20.0);
    for (int i = 0; i < 1000; ++i) {
        double x = xs(rng);
        double lhs = sf::gamma(x + 1.0);
        double rhs = x * sf::gamma(x);
        CHECK(std::fabs(lhs - rhs) <= 1e-12 * std::fabs(lhs));
    }
}

TEST_CASE("rgamma: zeros at the poles, reciprocal elsewhere") {
    CHECK(sf::rgamma(0.0) == 0.0);
    CHECK(sf::rgamma(-7.0) == 0.0);
    for (double x : {0.3, 1.0, 2.7, 10.0, -0.5, -1.5}) {
        CHECK(sf::rgamma(x) * sf::gamma(x) == doctest::Approx(1.0).epsilon(1e-13));
    }
    CHECK(sf::log_gamma(17.25) == doctest::Approx(oracles::log_gamma(17.25)).epsilon(1e-14));
}

TEST_CASE("mittag_leffler: exponential collapse at alpha = beta = 1") {
    sf::MLParams p{1.0, 1.0, 200, 1e-15};
    CHECK(sf::mittag_leffler(p, 1.0) == doctest::Approx(std::exp(1.0)).epsilon(1e-13));
    for (double z = -2.0; z <= 2.0; z += 0.25) {
        CHECK(sf::mittag_leffler(p, z) == doctest::Approx(std::exp(z)).epsilon(1e-10));
    }
}

TEST_CASE("mittag_leffler: value at zero is 1/Gamma(beta)") {
    for (double alpha : {0.25, 0.5, 1.0, 1.7}) {
        for (double beta : {0.5, 1.0, 2.0}) {
            sf::MLParams p{alpha, beta, 200, 1e-15};
            CHECK(sf::mittag_leffler(p, 0.0) ==
                  doctest::Approx(1.0 / sf::gamma(beta)).epsilon(1e-14));
        }
    }
}

TEST_CASE("mittag_leffler: E_{1/2,1/2}(1) against two independent routes") {
    sf::MLParams p{0.5, 0.5, 200, 1e-16};
    double v = sf::mittag_leffler(p, 1.0);
    CHECK(v == doctest::Approx(oracles::mittag_leffler(0.5, 0.5, 1.0, 60)).epsilon(1e-12));
    // E_{1/2,1/2}(z) = 1/sqrt(pi) + z e^{z^2} erfc(-z)
    double identity = 1.0 / std::sqrt(M_PI) + std::exp(1.0) * (2.0 - std::erfc(1.0));
    CHECK(v == doctest::Approx(identity).epsilon(1e-12));
    CHECK(v == doctest::Approx(5.5731696643100397).epsilon(1e-12));
}

TEST_CASE("mittag_leffler: loud failure outside the budget") {
    sf::MLParams p{0.5, 0.5, 5, 1e-15};
    CHECK_THROWS_AS(sf::mittag_leffler(p, 3.0), NotConverged);
    sf::MLParams bad{-1.0, 0.5, 200, 1e-15};
    CHECK_THROWS_AS(sf::mittag_leffler(bad, 1.0), RangeError);
}

TEST_CASE("multinomial_ml: m = 1 collapses to the two-parameter function") {
    for (double z : {-0.8, 0.3, 1.0}) {
        sf::MultiMLParams mm{{0.5}, 0.5, 80};
        sf::MLParams p{0.5, 0.5, 200, 1e-16};
        CHECK(sf::multinomial_ml(mm, {z}) ==
              doctest::Approx(sf::mittag_leffler(p, z)).epsilon(1e-12));
    }
}

TEST_CASE("multinomial_ml: degree-zero layer only") {
    sf::MultiMLParams mm{{0.3, 0.9}, 1.0, 40};
    CHECK(sf::multinomial_ml(mm, {0.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("multinomial_ml: m = 2 against the nested-loop oracle") {
    // lambda = 0.5 at x = 1 lands both arguments at 0.5
    sf::MultiMLParams mm{{0.375, 0.75}, 0.0, 60};
    double v = sf::multinomial_ml(mm, {0.5, 0.5});
    CHECK(v == doctest::Approx(oracles::multinomial_ml2(0.375, 0.75, 0.0, 0.5, 0.5, 40))
                   .epsilon(1e-10));
}

TEST_CASE("multinomial_ml: arity errors") {
    sf::MultiMLParams mm{{0.5, 0.7}, 1.0, 40};
    CHECK_THROWS_AS(sf::multinomial_ml(mm, {1.0}), ArityMismatch);
    sf::MultiMLParams empty{{}, 1.0, 40};
    CHECK_THROWS_AS(sf::multinomial_ml(empty, {}), RangeError);
}

#include <doctest.h>

#include <cmath>
#include <random>

#include "gfc/jacobi.hpp"
#include "oracles.hpp"

using namespace gfc;

TEST_CASE("jacobi: Legendre case has unit weight sum") {
    auto rule = jacobi_rule(0.0, 0.0, 5);
    double s = 0.0;
    for (double w : rule.weights) s += w;
    CHECK(s == doctest::Approx(1.0).epsilon(1e-14));
    // nodes symmetric about 1/2
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        CHECK(rule.nodes[i] == doctest::Approx(1.0 - rule.nodes[rule.nodes.size() - 1 - i])
                                   .epsilon(1e-12));
    }
}

TEST_CASE("jacobi: Chebyshev weight sums to pi") {
    auto rule = jacobi_rule(-0.5, -0.5, 8);
    CHECK(rule.weight_sum == doctest::Approx(M_PI).epsilon(1e-13));
}

TEST_CASE("jacobi: moment against the analytic Beta value") {
    auto rule = jacobi_rule(-0.5, 0.0, 16);
    double got = rule.integrate([](double t) { return t * t * t; });
    // int_0^1 (1-t)^{-1/2} t^3 dt = B(1/2, 4)
    double expect = oracles::beta_fn(0.5, 4.0);
    CHECK(got == doctest::Approx(expect).epsilon(1e-11));
}

TEST_CASE("jacobi: weight-sum and degree-exactness properties") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> abd(-0.9, 2.0);
    std::uniform_int_distribution<int> kd(0, 31);
    for (int trial = 0; trial < 40; ++trial) {
        double a = abd(rng), b = abd(rng);
        int m = 16;
        auto rule = jacobi_rule(a, b, m);
        CHECK(rule.weight_sum ==
              doctest::Approx(oracles::beta_fn(a + 1.0, b + 1.0)).epsilon(1e-10));
        int k = kd(rng);  // any degree <= 2m-1
        double got = rule.integrate([k](double t) { return std::pow(t, k); });
        double expect = oracles::beta_fn(a + 1.0, b + k + 1.0);
        CHECK(got == doctest::Approx(expect).epsilon(1e-9));
    }
}

TEST_CASE("jacobi: parameter validation") {
    CHECK_THROWS_AS(jacobi_rule(-1.0, 0.0, 8), RangeError);
    CHECK_THROWS_AS(jacobi_rule(0.0, 0.0, 0), RangeError);
}

TEST_CASE("jacobi: cache returns the same rule") {
    auto r1 = jacobi_rule_cached(-0.25, -0.75, 32);
    auto r2 = jacobi_rule_cached(-0.25, -0.75, 32);
    CHECK(r1.get() == r2.get());
}

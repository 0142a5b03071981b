#include <doctest.h>

#include <cmath>
#include <random>

#include "gfc/kernels.hpp"
#include "gfc/specfun.hpp"
#include "oracles.hpp"

using namespace gfc;

TEST_CASE("resolve: power laws") {
    auto one = resolve(KernelSpec::power_law(1.0));
    for (double x : {0.1, 0.5, 1.3, 2.0}) CHECK(one(x) == doctest::Approx(1.0).epsilon(1e-15));

    auto half = resolve(KernelSpec::power_law(0.5));
    CHECK(half(0.25) == doctest::Approx(2.0 / std::sqrt(M_PI)).epsilon(1e-13));

    // representation invariant: exponent in (0,1], regular factor continuous
    auto steep = resolve(KernelSpec::power_law(2.5));
    CHECK(steep.exponent() == doctest::Approx(1.0));
    CHECK(steep.regular(1.7) == doctest::Approx(std::pow(1.7, 1.5) / oracles::gamma(2.5))
                                    .epsilon(1e-13));

    std::mt19937 rng(3);
    std::uniform_real_distribution<double> bd(0.05, 3.0), xd(0.05, 2.0);
    for (int i = 0; i < 50; ++i) {
        double beta = bd(rng), x = xd(rng);
        double expect = oracles::h(beta, x);
        CHECK(resolve(KernelSpec::power_law(beta))(x) ==
              doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("resolve: Mittag-Leffler kernel matches the series oracle") {
    auto k = resolve(KernelSpec::ml(0.25, 0.625));
    for (double x : {0.2, 1.0, 2.0}) {
        double expect = std::pow(x, 0.625 - 1.0) *
                        oracles::mittag_leffler(0.25, 0.625, -std::pow(x, 0.25), 120);
        CHECK(k(x) == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("resolve: extended kernels") {
    auto h1 = resolve(KernelSpec::h1());
    CHECK(h1(1.234) == doctest::Approx(1.0));
    CHECK_THROWS_AS(resolve(KernelSpec::h0()), DistributionalKernel);
}

TEST_CASE("kernel factories validate ranges") {
    CHECK_THROWS_AS(KernelSpec::power_law(-0.5), RangeError);
    CHECK_THROWS_AS(KernelSpec::ml(0.7, 0.5), RangeError);
    CHECK_THROWS_AS(KernelSpec::ml(0.0, 0.5), RangeError);
    CHECK_THROWS_AS(KernelSpec::sum_power_law({}), RangeError);
}

TEST_CASE("associated_kernel: catalog pairs") {
    auto a = associated_kernel(KernelSpec::power_law(0.3));
    REQUIRE(a.power_law_spec() != nullptr);
    CHECK(a.power_law_spec()->beta == doctest::Approx(0.7));

    auto ml = associated_kernel(KernelSpec::sum_power_law({{1.0, 0.625}, {1.0, 0.375}}));
    REQUIRE(ml.ml_spec() != nullptr);
    CHECK(ml.ml_spec()->alpha == doctest::Approx(0.25));
    CHECK(ml.ml_spec()->beta == doctest::Approx(0.625));

    CHECK(associated_kernel(KernelSpec::h1()).is_h0());
    CHECK(associated_kernel(KernelSpec::h0()).is_h1());
}

TEST_CASE("associated_kernel: involution on the catalog") {
    std::vector<KernelSpec> catalog = {
        KernelSpec::power_law(0.25), KernelSpec::power_law(0.5), KernelSpec::power_law(0.81),
        KernelSpec::ml(0.25, 0.625), KernelSpec::ml(0.1, 0.9),
        KernelSpec::sum_power_law({{1.0, 0.625}, {1.0, 0.375}}),
        KernelSpec::h0(), KernelSpec::h1()};
    for (const auto& s : catalog) {
        CHECK(same_kernel(associated_kernel(associated_kernel(s)), s, 1e-12));
    }
}

TEST_CASE("associated_kernel: outside the catalog") {
    CHECK_THROWS_AS(associated_kernel(KernelSpec::power_law(1.5)), NoKnownAssociate);
    CHECK_THROWS_AS(associated_kernel(KernelSpec::sum_power_law({{2.0, 0.5}, {1.0, 0.25}})),
                    NoKnownAssociate);
}

TEST_CASE("sonine_check: power pair is exact") {
    auto pair = make_sonine_pair(KernelSpec::power_law(0.5));
    auto report = sonine_check(pair, 2.0, 64, 32);
    CHECK(report.residual_max() <= 1e-10);
    REQUIRE(pair.verified_to.has_value());
    CHECK(*pair.verified_to <= 1e-10);
}

TEST_CASE("sonine_check: Mittag-Leffler pair") {
    auto pair = make_sonine_pair(KernelSpec::sum_power_law({{1.0, 0.625}, {1.0, 0.375}}));
    auto report = sonine_check(pair, 2.0, 64, 32);
    CHECK(report.residual_max() <= 1e-6);
}

TEST_CASE("sonine_check: mismatched kernels report a large residual") {
    SoninePair pair{KernelSpec::power_law(0.5), KernelSpec::power_law(0.6), std::nullopt};
    auto report = sonine_check(pair, 2.0, 64, 32);
    CHECK(report.residual_max() > 0.05);
    // closed form: (h_.5 * h_.6)(x) = h_{1.1}(x) = x^{0.1}/Gamma(1.1)
    double expect = std::pow(2.0, 0.1) / oracles::gamma(1.1);
    CHECK(report.lhs.back() == doctest::Approx(expect).epsilon(1e-11));
}

TEST_CASE("sonine_check: every catalog pair verifies to 1e-6 at order 32") {
    std::vector<KernelSpec> kappas = {KernelSpec::power_law(0.25), KernelSpec::power_law(0.5),
                                      KernelSpec::power_law(0.75),
                                      KernelSpec::sum_power_law({{1.0, 0.625}, {1.0, 0.375}}),
                                      KernelSpec::h1()};
    for (const auto& kappa : kappas) {
        auto pair = make_sonine_pair(kappa);
        sonine_check(pair, 2.0, 32, 32);
        CHECK(*pair.verified_to <= 1e-6);
    }
}

TEST_CASE("kernel spelling round-trips") {
    CHECK(KernelSpec::power_law(0.5).to_string() == "h:0.5");
    CHECK(KernelSpec::ml(0.25, 0.625).to_string() == "mlk:0.25,0.625");
    CHECK(KernelSpec::h0().to_string() == "h0");
    CHECK(KernelSpec::sum_power_law({{1.0, 0.625}, {1.0, 0.375}}).to_string() ==
          "sum:1*h:0.625+1*h:0.375");
}

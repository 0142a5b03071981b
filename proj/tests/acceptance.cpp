// Acceptance suite: one line per criterion, strict tolerances pinned in code.

#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "gfc/convops.hpp"
#include "gfc/kernels.hpp"
#include "gfc/series.hpp"
#include "gfc/specfun.hpp"
#include "gfc/taylor.hpp"
#include "gfc/theorems.hpp"

using namespace gfc;

namespace {

int g_failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
    std::printf("[%s] %2d. %-34s %s\n", pass ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
    if (!pass) ++g_failures;
}

std::string fmt_res(double r) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "max residual %.3e", r);
    return buf;
}

SingularFunction exp_fn(double X = 2.0) {
    return SingularFunction::analytic_family(1.0, [](int, double x) { return std::exp(x); }, X);
}

} // namespace

int main() {
    const double X = 2.0;

    // 1. Sonine pairs verify numerically.
    {
        double worst_power = 0.0, worst_ml = 0.0;
        for (double alpha : {0.25, 0.5, 0.75}) {
            auto pair = make_sonine_pair(KernelSpec::power_law(alpha));
            sonine_check(pair, X, 64, 32);
            worst_power = std::max(worst_power, *pair.verified_to);
        }
        auto ml = make_sonine_pair(KernelSpec::sum_power_law({{1.0, 0.625}, {1.0, 0.375}}));
        sonine_check(ml, X, 64, 32);
        worst_ml = *ml.verified_to;
        report(1, "sonine pairs", worst_power <= 1e-10 && worst_ml <= 1e-6,
               fmt_res(worst_power) + " (power), " + fmt_res(worst_ml) + " (ML)");
    }

    // 2. Power-kernel convolution algebra.
    {
        std::mt19937 rng(2024);
        std::uniform_real_distribution<double> ab(0.02, 0.98), xd(0.1, 2.0);
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            double a = ab(rng), b = ab(rng), x = xd(rng);
            auto conv = convolve(SingularFunction::power_term(1.0, a, X),
                                 SingularFunction::power_term(1.0, b, X));
            double expect = std::pow(x, a + b - 1.0) * specfun::rgamma(a + b);
            worst = std::max(worst, std::fabs(conv(x) - expect));
        }
        bool identical = true;
        for (double alpha : {0.25, 0.37, 0.5}) {
            for (int n = 1; n <= 5; ++n) {
                auto p = conv_power(KernelSpec::power_law(alpha), n, X);
                auto ref = SingularFunction::power_term(1.0, n * alpha, X);
                for (double x : {0.1, 0.6, 1.3, 2.0}) identical = identical && p(x) == ref(x);
            }
        }
        report(2, "power convolution algebra", worst <= 1e-12 && identical,
               fmt_res(worst) + std::string(identical ? ", powers identical" : ", powers differ"));
    }

    // 3. GFI commutativity and index law.
    {
        auto k1 = KernelSpec::power_law(0.3);
        auto k2 = KernelSpec::power_law(0.6);
        auto f = SingularFunction::power_term(1.0, 1.0, X);
        auto a = gfi_function(k1, 1, gfi_function(k2, 1, f));
        auto b = gfi_function(k2, 1, gfi_function(k1, 1, f));
        auto c = convolve(convolve(resolve(k1, X), resolve(k2, X)), f);
        double worst_com = 0.0, worst_idx = 0.0;
        for (double x : default_grid(X, 40)) {
            worst_com = std::max(worst_com, std::fabs(a(x) - b(x)));
            worst_idx = std::max(worst_idx, std::fabs(a(x) - c(x)));
        }
        report(3, "GFI commutativity + index law", worst_com <= 1e-8 && worst_idx <= 1e-8,
               fmt_res(worst_com) + " (com), " + fmt_res(worst_idx) + " (index)");
    }

    // 4 & 5. Fundamental theorems over the battery.
    auto battery = run_battery(1e-5, 12345);
    {
        double worst1 = 0.0, worst2 = 0.0;
        bool pass1 = true, pass2 = true;
        int count1 = 0, count2 = 0;
        for (const auto& row : battery) {
            if (row.name.rfind("FT1", 0) == 0) {
                ++count1;
                pass1 = pass1 && row.pass;
                worst1 = std::max(worst1, row.residual);
            } else if (row.name.rfind("FT2", 0) == 0) {
                ++count2;
                pass2 = pass2 && row.pass;
                worst2 = std::max(worst2, row.residual);
            }
        }
        report(4, "first fundamental theorems", pass1 && count1 > 0,
               fmt_res(worst1) + " over " + std::to_string(count1) + " configs");
        // classical reductions, explicitly
        auto pairA = make_sonine_pair(KernelSpec::power_law(0.5));
        sonine_check(pairA, X, 32, 32);
        auto sftla = verify(TheoremId::FT2_RL, pairA, SingularFunction::power_term(1.0, 0.7, X), 1,
                            default_grid(X, 40));
        auto ftla = verify(TheoremId::FT2_C, pairA, exp_fn(X), 1, default_grid(X, 40));
        bool classical = sftla.residual_max() <= 1e-5 && ftla.residual_max() <= 1e-5;
        report(5, "second fundamental theorems", pass2 && count2 > 0 && classical,
               fmt_res(std::max({worst2, sftla.residual_max(), ftla.residual_max()})) + " over " +
                   std::to_string(count2 + 2) + " configs");
    }

    // 6. Taylor round trip with random convolution polynomials.
    {
        std::mt19937 rng(616);
        std::uniform_real_distribution<double> cd(-2.0, 2.0);
        bool pass = true;
        double worst_coeff = 0.0, worst_rem = 0.0;
        for (const auto& kappa : {KernelSpec::power_law(0.5),
                                  KernelSpec::sum_power_law({{1.0, 0.625}, {1.0, 0.375}})}) {
            auto pair = make_sonine_pair(kappa);
            sonine_check(pair, X, 32, 32);
            for (int trial = 0; trial < 2; ++trial) {
                std::vector<double> cs(4);
                SingularFunction f = SingularFunction::zero(X);
                for (int j = 0; j < 4; ++j) {
                    cs[j] = cd(rng);
                    f = f + (cs[j] * conv_power(kappa, j + 1, X));
                }
                try {
                    auto coeffs = extract_coefficients(f, pair, 4);
                    if (coeffs.size() != 4) {
                        pass = false;
                        continue;
                    }
                    for (int j = 0; j < 4; ++j)
                        worst_coeff = std::max(worst_coeff, std::fabs(coeffs[j] - cs[j]));
                    TaylorExpansion te(f, pair, 4, TaylorVariant::RL);
                    for (double x : linspace(0.1, 2.0, 20))
                        worst_rem = std::max(worst_rem, std::fabs(te.remainder(x)));
                } catch (const Error&) {
                    pass = false;
                }
            }
        }
        pass = pass && worst_coeff <= 1e-4 && worst_rem <= 1e-5;
        char buf[96];
        std::snprintf(buf, sizeof(buf), "coeff err %.3e, remainder %.3e", worst_coeff, worst_rem);
        report(6, "taylor round trip", pass, buf);
    }

    // 7. Geometric series closed forms.
    {
        double worst = 0.0;
        for (const auto& kernel : {KernelSpec::h1(), KernelSpec::power_law(0.5),
                                   KernelSpec::sum_power_law({{1.0, 0.625}, {1.0, 0.375}})}) {
            for (double lambda : {-0.5, 0.5, 1.0}) {
                for (double x : linspace(0.1, 2.0, 16)) {
                    auto g = geometric_l(kernel, lambda, x, true, X);
                    worst = std::max(worst,
                                     std::fabs(g.value - *g.oracle) /
                                         std::max(1.0, std::fabs(*g.oracle)));
                }
            }
        }
        report(7, "geometric closed forms", worst <= 1e-8, fmt_res(worst) + " (relative)");
    }

    // 8. Truncation-bound soundness on 100 random probes.
    {
        std::mt19937 rng(88);
        std::uniform_real_distribution<double> xd(0.1, 2.0);
        std::uniform_int_distribution<int> Jd(1, 80);
        bool sound = true;
        double worst_margin = 0.0;
        for (const auto& kernel : {KernelSpec::power_law(0.5),
                                   KernelSpec::sum_power_law({{1.0, 0.625}, {1.0, 0.375}})}) {
            auto spec = make_series(kernel, CoefficientSource::geometric(0.8));
            SeriesEvaluator ev(spec, X, {}, 220);
            for (int i = 0; i < 50; ++i) {
                double x = xd(rng);
                int J = Jd(rng);
                double tail = std::fabs(ev.partial_sum(x, 200) - ev.partial_sum(x, J));
                double bound = tail_bound(spec, ev.bound(), J, x);
                if (tail > bound * (1.0 + 1e-12)) sound = false;
                if (bound > 0.0) worst_margin = std::max(worst_margin, tail / bound);
            }
        }
        char buf[64];
        std::snprintf(buf, sizeof(buf), "worst tail/bound %.3e", worst_margin);
        report(8, "truncation bound soundness", sound, buf);
    }

    // 9. Classical limit of the Caputo Taylor formula.
    {
        auto pair = make_sonine_pair(KernelSpec::h1());
        sonine_check(pair, X, 32, 32);
        auto [poly, rem] = taylor_approx(exp_fn(X), pair, 4, TaylorVariant::Caputo, 0.5);
        double poly_ref = 1.0 + 0.5 + 0.125 + 0.125 / 6.0;       // 79/48
        double rem_ref = std::exp(0.5) - poly_ref;
        bool pass = std::fabs(poly - poly_ref) <= 1e-6 && std::fabs(rem - rem_ref) <= 1e-6;
        char buf[96];
        std::snprintf(buf, sizeof(buf), "poly %.9f, remainder %.9f", poly, rem);
        report(9, "classical Taylor limit", pass, buf);
    }

    // 10. Mean-value bracket across the battery configurations.
    {
        bool pass = true;
        int checked = 0;
        auto pairA = make_sonine_pair(KernelSpec::power_law(0.5));
        auto pairB = make_sonine_pair(KernelSpec::power_law(0.3));
        auto pairM = make_sonine_pair(KernelSpec::sum_power_law({{1.0, 0.625}, {1.0, 0.375}}));
        auto pairE = make_sonine_pair(KernelSpec::h1());
        for (SoninePair* p : {&pairA, &pairB, &pairM, &pairE}) sonine_check(*p, X, 32, 32);

        auto one = SingularFunction::power_term(1.0, 1.0, X);
        auto lin = SingularFunction::power_sum({{1.0, 1.0}, {0.5, 1.5}}, X);
        auto poly3 = SingularFunction::power_sum({{1.0, 1.0}, {1.0, 2.0}, {1.0, 3.0}}, X);

        struct Cfg {
            const SoninePair* pair;
            SingularFunction f;
            TaylorVariant variant;
            std::vector<int> ns;
        };
        std::vector<Cfg> cfgs = {
            {&pairA, one, TaylorVariant::RL, {1, 2, 3}},
            {&pairA, lin, TaylorVariant::RL, {1, 2, 3}},
            {&pairA, geometric_function(pairA.kappa, 0.5, X, 1e-12), TaylorVariant::RL, {1, 2, 3}},
            {&pairB, lin, TaylorVariant::RL, {1, 2, 3}},
            {&pairB, geometric_function(pairB.kappa, 0.5, X, 1e-12), TaylorVariant::RL, {1, 2, 3}},
            {&pairM, geometric_function(pairM.kappa, 0.5, X, 1e-12), TaylorVariant::RL, {1, 2, 3}},
            {&pairA, lin, TaylorVariant::Caputo, {1, 2, 3}},
            {&pairA, poly3, TaylorVariant::Caputo, {1, 2, 3}},
            {&pairA, exp_fn(X), TaylorVariant::Caputo, {1, 2, 3}},
            {&pairM, poly3, TaylorVariant::Caputo, {1, 2, 3}},
            {&pairE, exp_fn(X), TaylorVariant::Caputo, {1, 2, 3}},
            {&pairE, poly3, TaylorVariant::Caputo, {1, 2, 3}},
        };
        for (const auto& cfg : cfgs) {
            for (int n : cfg.ns) {
                for (double x : {0.1, 0.7, 2.0}) {
                    auto b = mean_value_bracket(cfg.f, *cfg.pair, n, cfg.variant, x, 200);
                    pass = pass && b.within;
                    ++checked;
                }
            }
        }
        report(10, "mean-value bracket", pass, std::to_string(checked) + " configurations");
    }

    std::printf("%s (%d failure%s)\n", g_failures == 0 ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED",
                g_failures, g_failures == 1 ? "" : "s");
    return g_failures == 0 ? 0 : 1;
}

#pragma once

// Test-only reference implementations, independent of the library's
// evaluation paths: Stirling-series gamma with argument shifting, brute-force
// Mittag-Leffler partial sums on top of libm's tgamma, and a nested-loop
// multinomial Mittag-Leffler.

#include <cmath>
#include <stdexcept>

namespace oracles {

// ln Gamma via the Stirling series after shifting the argument above 32;
// ten Bernoulli terms leave the truncation error far below double precision.
inline double log_gamma(double x) {
    if (!(x > 0.0)) throw std::invalid_argument("oracle log_gamma needs x > 0");
    double shift = 0.0;
    while (x < 32.0) {
        shift += std::log(x);
        x += 1.0;
    }
    static const double a[] = {
        1.0 / 12,          -1.0 / 360,         1.0 / 1260,        -1.0 / 1680,
        1.0 / 1188,        -691.0 / 360360,    1.0 / 156,         -3617.0 / 122400,
        43867.0 / 244188,  -174611.0 / 125400,
    };
    double s = (x - 0.5) * std::log(x) - x + 0.5 * std::log(2.0 * M_PI);
    double xp = x;
    for (double c : a) {
        s += c / xp;
        xp *= x * x;
    }
    return s - shift;
}

inline double gamma(double x) {
    if (x > 0.0) return std::exp(log_gamma(x));
    // reflection for negative non-integer arguments
    return M_PI / (std::sin(M_PI * x) * std::exp(log_gamma(1.0 - x)));
}

// Brute-force partial sums of E_{alpha,beta}(z) with libm's tgamma.
inline double mittag_leffler(double alpha, double beta, double z, int terms = 60) {
    double s = 0.0;
    for (int k = terms - 1; k >= 0; --k) {
        double arg = alpha * k + beta;
        if (arg <= 0.0 && arg == std::floor(arg)) continue;  // 1/Gamma(pole) = 0
        s += std::pow(z, k) / std::tgamma(arg);
    }
    return s;
}

// Nested-loop multinomial Mittag-Leffler for m = 2.
inline double multinomial_ml2(double a1, double a2, double beta, double z1, double z2,
                              int max_degree = 40) {
    double s = 0.0;
    for (int j = 0; j <= max_degree; ++j) {
        for (int l1 = 0; l1 <= j; ++l1) {
            int l2 = j - l1;
            double arg = beta + a1 * l1 + a2 * l2;
            if (arg <= 0.0 && arg == std::floor(arg)) continue;
            double w = std::tgamma(j + 1.0) / (std::tgamma(l1 + 1.0) * std::tgamma(l2 + 1.0));
            s += w * std::pow(z1, l1) * std::pow(z2, l2) / std::tgamma(arg);
        }
    }
    return s;
}

inline double beta_fn(double a, double b) {
    return std::exp(log_gamma(a) + log_gamma(b) - log_gamma(a + b));
}

inline double h(double beta, double x) { return std::pow(x, beta - 1.0) / gamma(beta); }

} // namespace oracles

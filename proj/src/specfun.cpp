#include "gfc/specfun.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace gfc::specfun {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

// Lanczos, g = 7, 9 terms.
constexpr int kLanczosG = 7;
constexpr double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

bool is_nonpositive_integer(double x) {
    return x <= 0.0 && x == std::floor(x);
}

// Lanczos core, valid for x >= 0.5.
double gamma_positive(double x) {
    double z = x - 1.0;
    double a = kLanczos[0];
    for (int i = 1; i < kLanczosG + 2; ++i) {
        a += kLanczos[i] / (z + i);
    }
    double t = z + kLanczosG + 0.5;
    return std::sqrt(2.0 * kPi) * std::pow(t, z + 0.5) * std::exp(-t) * a;
}

double log_gamma_positive(double x) {
    double z = x - 1.0;
    double a = kLanczos[0];
    for (int i = 1; i < kLanczosG + 2; ++i) {
        a += kLanczos[i] / (z + i);
    }
    double t = z + kLanczosG + 0.5;
    return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(a);
}

} // namespace

double gamma(double x) {
    if (is_nonpositive_integer(x)) {
        throw PoleError("gamma pole at x = " + std::to_string(x));
    }
    if (x < 0.5) {
        // Reflection: Gamma(x) = pi / (sin(pi x) Gamma(1 - x)).
        return kPi / (std::sin(kPi * x) * gamma_positive(1.0 - x));
    }
    return gamma_positive(x);
}

double log_gamma(double x) {
    if (x <= 0.0) {
        throw RangeError("log_gamma requires x > 0, got " + std::to_string(x));
    }
    if (x < 0.5) {
        return std::log(kPi / std::sin(kPi * x)) - log_gamma_positive(1.0 - x);
    }
    return log_gamma_positive(x);
}

double rgamma(double x) {
    if (is_nonpositive_integer(x)) return 0.0;
    if (x > 160.0) {
        // 1/Gamma underflows smoothly; stay in log space.
        return std::exp(-log_gamma(x));
    }
    if (x < 0.5) {
        return std::sin(kPi * x) * gamma_positive(1.0 - x) / kPi;
    }
    return 1.0 / gamma_positive(x);
}

double mittag_leffler(const MLParams& params, double z) {
    if (!(params.alpha > 0.0)) throw RangeError("mittag_leffler requires alpha > 0");
    if (params.max_terms < 1) throw RangeError("mittag_leffler requires max_terms >= 1");
    if (!(params.tol > 0.0)) throw RangeError("mittag_leffler requires tol > 0");

    KahanSum sum;
    double zk = 1.0;
    double prev_mag = std::numeric_limits<double>::infinity();
    for (int k = 0; k < params.max_terms; ++k) {
        double term = zk * rgamma(params.alpha * k + params.beta);
        if (!std::isfinite(term)) {
            throw NotConverged("mittag_leffler term overflow at k = " + std::to_string(k));
        }
        sum.add(term);
        double mag = std::fabs(term);
        if (k > 0 && mag < params.tol && mag <= prev_mag) {
            return sum.value();
        }
        prev_mag = mag;
        zk *= z;
    }
    throw NotConverged("mittag_leffler: " + std::to_string(params.max_terms) +
                       " terms without tail < tol");
}

double multinomial_ml(const MultiMLParams& params, const std::vector<double>& zs) {
    const std::size_t m = params.alphas.size();
    if (m < 1) throw RangeError("multinomial_ml requires at least one alpha");
    for (double a : params.alphas) {
        if (!(a > 0.0)) throw RangeError("multinomial_ml requires alphas > 0");
    }
    if (zs.size() != m) {
        throw ArityMismatch("multinomial_ml: " + std::to_string(zs.size()) +
                            " arguments for " + std::to_string(m) + " alphas");
    }
    if (params.max_total_degree < 0) throw RangeError("multinomial_ml: negative degree budget");

    KahanSum sum;
    double layer_mag = 0.0;
    std::vector<int> l(m, 0);
    for (int j = 0; j <= params.max_total_degree; ++j) {
        layer_mag = 0.0;
        double log_jfact = log_gamma(j + 1.0);
        // Enumerate compositions l_1 + ... + l_m = j: odometer over the
        // first m-1 entries, the last one absorbs the remainder.
        std::fill(l.begin(), l.end(), 0);
        bool done = false;
        while (!done) {
            int used = 0;
            for (std::size_t q = 0; q + 1 < m; ++q) used += l[q];
            l[m - 1] = j - used;

            double log_coeff = log_jfact;
            double g_arg = params.beta;
            double zprod = 1.0;
            for (std::size_t i = 0; i < m; ++i) {
                log_coeff -= log_gamma(l[i] + 1.0);
                g_arg += params.alphas[i] * l[i];
                for (int rep = 0; rep < l[i]; ++rep) zprod *= zs[i];
            }
            double term = std::exp(log_coeff) * zprod * rgamma(g_arg);
            if (!std::isfinite(term)) {
                throw NotConverged("multinomial_ml term overflow at degree " + std::to_string(j));
            }
            sum.add(term);
            layer_mag += std::fabs(term);

            // Advance the odometer keeping sum of the leading entries <= j.
            std::size_t i = 0;
            while (i + 1 < m) {
                ++l[i];
                int u = 0;
                for (std::size_t q = 0; q + 1 < m; ++q) u += l[q];
                if (u <= j) break;
                l[i] = 0;
                ++i;
            }
            if (i + 1 >= m) done = true;
        }
    }
    if (layer_mag >= 1e-12 * (1.0 + std::fabs(sum.value()))) {
        throw NotConverged("multinomial_ml: last degree layer still " + std::to_string(layer_mag));
    }
    return sum.value();
}

} // namespace gfc::specfun

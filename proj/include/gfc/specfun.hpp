#pragma once

#include <vector>

#include "gfc/errors.hpp"

namespace gfc::specfun {

/// Parameters of the two-parameter Mittag-Leffler function E_{alpha,beta}.
/// The series is summed until the running term drops below `tol` while
/// monotonically decreasing; `max_terms` caps the summation.
struct MLParams {
    double alpha = 1.0;
    double beta = 1.0;
    int max_terms = 200;
    double tol = 1e-15;
};

/// Parameters of the multinomial Mittag-Leffler function
/// E_{(alpha_1..alpha_m),beta}(z_1..z_m), truncated at total degree
/// `max_total_degree`.
struct MultiMLParams {
    std::vector<double> alphas;
    double beta = 1.0;
    int max_total_degree = 60;
};

/// Gamma function for real arguments away from the poles 0, -1, -2, ...
/// Lanczos approximation (g = 7, 9 coefficients) with reflection for
/// x < 0.5. Relative error below 1e-12 on [0.05, 50].
double gamma(double x);

/// log(Gamma(x)) for x > 0.
double log_gamma(double x);

/// 1/Gamma(x), defined for all real x with value 0 at the poles of Gamma.
double rgamma(double x);

/// E_{alpha,beta}(z) = sum_k z^k / Gamma(alpha k + beta), summed with
/// compensated accumulation. Throws NotConverged when the term budget is
/// exhausted before the tail falls under params.tol.
double mittag_leffler(const MLParams& params, double z);

/// Multinomial Mittag-Leffler: the double sum over total degree j of the
/// multinomially weighted products z_i^{l_i} / Gamma(beta + sum alpha_i l_i).
/// zs.size() must equal params.alphas.size().
double multinomial_ml(const MultiMLParams& params, const std::vector<double>& zs);

/// Compensated (Kahan) accumulator.
class KahanSum {
public:
    void add(double v) {
        double y = v - c_;
        double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double value() const { return s_; }

private:
    double s_ = 0.0;
    double c_ = 0.0;
};

} // namespace gfc::specfun

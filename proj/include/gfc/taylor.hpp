#pragma once

#include <functional>
#include <vector>

#include "gfc/convops.hpp"
#include "gfc/kernels.hpp"
#include "gfc/series.hpp"

namespace gfc {

/// Limit of F(x) as x -> 0+ from samples at x0, x0/2, ..., x0/2^levels,
/// eliminating error terms C x^{s} for the supplied exponents (ascending)
/// by generalized Richardson extrapolation.
struct LimitAtZero {
    double value = 0.0;
    double residual = 0.0;  // disagreement of the last two extrapolants
    bool stable = true;
};
LimitAtZero limit_at_zero(const std::function<double(double)>& F,
                          const std::vector<double>& error_exponents, double x0 = 0.5,
                          int levels = 8);

/// Error-model exponents read off a representation: the orders s > 1 present
/// in f contribute terms x^{s-1} near zero.
std::vector<double> error_exponents_near_zero(const SingularFunction& f, int max_terms = 14,
                                              double cap = 4.0);

/// Limit of F at 0+. Pure power sums admit the exact read-off (their value
/// at 0 is the h_1 coefficient); everything else goes through Richardson
/// extrapolation with the representation's own exponents. Throws
/// NotContinuousAtZero when the power front sits below 1.
LimitAtZero limit_at_zero_of(const SingularFunction& F, double x0 = 0.5, int levels = 12);

struct CoefficientDiagnostics {
    double value = 0.0;
    double residual = 0.0;
    bool stable = true;
};
struct ExtractionReport {
    std::vector<CoefficientDiagnostics> coefficients;
};

enum class TaylorVariant { RL, Caputo };

struct TaylorOptions {
    ConvOptions conv = {};
    double x0 = 0.5;             // extrapolation anchor
    int levels = 12;             // halvings
    double unstable_tol = 1e-5;  // residual threshold, scaled by (1 + |value|)
    double pair_residual_max = 1e-4;  // required sonine_check quality
};

/// Coefficients a_j = (I_(k) D_(k)^{<j>} f)(0+), j < n, by Richardson
/// extrapolation toward zero. Stops early (returning fewer coefficients)
/// when the extrapolation turns unstable; the report carries per-coefficient
/// diagnostics. The pair must have been verified by sonine_check.
std::vector<double> extract_coefficients(const SingularFunction& f, const SoninePair& pair, int n,
                                         ExtractionReport* report = nullptr,
                                         const TaylorOptions& opts = {});

/// Convolution Taylor expansion of f around 0 for a verified Sonine pair.
/// RL: f = sum_{j<n} a_j kappa^{<j+1>} + (I^{<n>} D^{<n>} f);
/// Caputo: f = f(0) + sum_{1<=j<n} (*D^{<j>}f)(0) ({1}*kappa^{<j>}) + (I^{<n>} *D^{<n>} f).
class TaylorExpansion {
public:
    TaylorExpansion(SingularFunction f, SoninePair pair, int n, TaylorVariant variant,
                    const TaylorOptions& opts = {});

    double poly(double x) const;
    double remainder(double x) const;
    double f_value(double x) const { return f_(x); }

    const std::vector<double>& coeffs() const { return coeffs_; }
    const ExtractionReport& report() const { return report_; }
    TaylorVariant variant() const { return variant_; }
    int n() const { return n_; }
    const SingularFunction& nth_derivative() const { return dn_; }

private:
    SingularFunction f_;
    SoninePair pair_;
    int n_;
    TaylorVariant variant_;
    std::vector<double> coeffs_;
    std::vector<SingularFunction> basis_;  // RL: kappa^{<j+1>}; Caputo: {1}*kappa^{<j>}
    SingularFunction dn_;                  // n-fold sequential derivative of f
    SingularFunction remainder_;           // I^{<n>} applied to dn_
    ExtractionReport report_;
};

/// (poly, remainder) at a point; poly + remainder reproduces f(x) within the
/// composition tolerance.
std::pair<double, double> taylor_approx(const SingularFunction& f, const SoninePair& pair, int n,
                                        TaylorVariant variant, double x,
                                        const TaylorOptions& opts = {});

/// Mean-value form of the remainder: ratio = r_n(x) / ({1}*kappa^{<n>})(x)
/// against the sampled range of the n-fold sequential derivative on (0, x].
struct MeanValueBracket {
    double lo = 0.0;
    double hi = 0.0;
    double ratio = 0.0;
    bool within = false;
};
MeanValueBracket mean_value_bracket(const SingularFunction& f, const SoninePair& pair, int n,
                                    TaylorVariant variant, double x, int grid_m,
                                    const TaylorOptions& opts = {});

/// Caputo-type Taylor series: partial sums of
///   f(0) + sum_j (*D^{<j>}f)(0) ({1}*kappa^{<j>})(x)
/// until two successive sums differ by less than tol, or n_max terms.
double caputo_taylor_series(const SingularFunction& f, const SoninePair& pair, double x, int n_max,
                            double tol, const TaylorOptions& opts = {});

} // namespace gfc

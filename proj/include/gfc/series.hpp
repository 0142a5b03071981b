#pragma once

#include <mutex>
#include <optional>
#include <vector>

#include "gfc/convops.hpp"
#include "gfc/kernels.hpp"

namespace gfc {

/// Witness (z0, M) bounding the series coefficients: |a_j| <= M / |z0|^j.
struct RadiusWitness {
    double z0 = 1.0;  // nonzero point inside the convergence disc
    double M = 1.0;   // sup_j |a_j z0^j|
};

/// Coefficient source: an explicit finite list (zero beyond the end) or the
/// geometric generator a_j = lambda^j.
class CoefficientSource {
public:
    static CoefficientSource explicit_list(std::vector<double> values);
    static CoefficientSource geometric(double lambda);

    double operator[](int j) const;
    bool geometric_source() const { return geometric_; }
    double lambda() const { return lambda_; }
    /// For explicit lists: number of stored coefficients; -1 for generators.
    int explicit_size() const { return geometric_ ? -1 : static_cast<int>(values_.size()); }

    /// Default witness: tight for the geometric generator, conservative for
    /// explicit lists.
    RadiusWitness default_witness() const;

private:
    bool geometric_ = false;
    double lambda_ = 0.0;
    std::vector<double> values_;
};

struct ConvolutionSeriesSpec {
    KernelSpec kernel;
    CoefficientSource coeffs = CoefficientSource::explicit_list({});
    RadiusWitness radius_witness;
};

/// Validates the witness against explicit coefficient lists.
ConvolutionSeriesSpec make_series(KernelSpec kernel, CoefficientSource coeffs,
                                  std::optional<RadiusWitness> witness = std::nullopt);

/// M_X = sup over [0, X] of |Gamma(p) x^{1-p} kappa(x)|, estimated on 512
/// Chebyshev points and inflated by 5%; p is the kernel exponent.
struct TruncationBound {
    double M_X = 1.0;
    double X = 2.0;
    double p = 0.5;
};
TruncationBound estimate_truncation_bound(const KernelSpec& kernel, double X);

/// Majorant of |sum_{j>=J} a_j kappa^{<j+1>}(x)|:
///   x^{p-1} sum_{j>=J} M M_X (M_X X^p / |z0|)^j / Gamma((j+1)p).
double tail_bound(const ConvolutionSeriesSpec& spec, const TruncationBound& tb, int J, double x);

/// Evaluates the convolution series with a cached incremental table of
/// convolution powers. Concurrent reads are safe; the cache extends under a
/// writer lock.
///
/// The default term budget accommodates the two-term sum kernel, whose
/// majorant only starts its Stirling decay after several hundred terms.
class SeriesEvaluator {
public:
    SeriesEvaluator(ConvolutionSeriesSpec spec, double x_max = 2.0, ConvOptions opts = {},
                    int term_budget = 1500);

    /// Partial sums until tail_bound < tol (or the explicit list ends).
    /// Throws SeriesDiverged when the budget is exhausted first.
    double eval(double x, double tol) const;

    /// Sum of the first J terms (j = 0 .. J-1).
    double partial_sum(double x, int J) const;

    const TruncationBound& bound() const { return tb_; }
    const ConvolutionSeriesSpec& spec() const { return spec_; }
    int term_budget() const { return budget_; }

    /// kappa^{<n>}(x), n >= 1, via the cache (power-law kernels short-circuit).
    double kernel_power_at(int n, double x) const;

    /// tail_bound through the precomputed majorant suffix table.
    double tail_at(int J, double x) const { return cached_tail(J, x); }

private:
    ConvolutionSeriesSpec spec_;
    double x_max_;
    ConvOptions opts_;
    int budget_;
    TruncationBound tb_;
    std::optional<double> power_law_beta_;  // short-circuit exponent
    std::vector<double> tail_suffix_;       // sum_{j >= J} of the majorant terms
    mutable std::mutex mu_;
    mutable std::vector<SingularFunction> powers_;  // powers_[i] = kappa^{<i+1>}

    double cached_tail(int J, double x) const;
};

/// One-shot evaluation without keeping the evaluator around.
double eval_series(const ConvolutionSeriesSpec& spec, double x, double tol, double x_max = 2.0,
                   const ConvOptions& opts = {});

struct GeometricValue {
    double value = 0.0;
    std::optional<double> oracle;
    std::optional<double> abs_err;
};

/// l_{kappa,lambda}(x) = sum_j lambda^j kappa^{<j+1>}(x). With `with_oracle`
/// the closed form is attached: e^{lambda x} for h1, the Mittag-Leffler form
/// for power-law kernels and the multinomial Mittag-Leffler form for the
/// two-term sum kernel.
GeometricValue geometric_l(const KernelSpec& kernel, double lambda, double x, bool with_oracle,
                           double x_max = 2.0, const ConvOptions& opts = {});

/// l_{kappa,lambda} materialized as a function (truncated at tail tolerance).
SingularFunction geometric_function(const KernelSpec& kernel, double lambda, double x_max = 2.0,
                                    double tol = 1e-12, const ConvOptions& opts = {});

/// Closed-form value of l_{kappa,lambda}(x) when the catalog provides one.
double geometric_oracle(const KernelSpec& kernel, double lambda, double x, double x_max = 2.0);

} // namespace gfc

#include "gfc/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gfc/specfun.hpp"

namespace gfc {

CoefficientSource CoefficientSource::explicit_list(std::vector<double> values) {
    CoefficientSource s;
    s.values_ = std::move(values);
    return s;
}

CoefficientSource CoefficientSource::geometric(double lambda) {
    CoefficientSource s;
    s.geometric_ = true;
    s.lambda_ = lambda;
    return s;
}

double CoefficientSource::operator[](int j) const {
    if (geometric_) return j == 0 ? 1.0 : std::pow(lambda_, j);
    if (j < 0 || j >= static_cast<int>(values_.size())) return 0.0;
    return values_[j];
}

RadiusWitness CoefficientSource::default_witness() const {
    if (geometric_) {
        if (lambda_ == 0.0) return RadiusWitness{1.0, 1.0};
        // |a_j z0^j| = |lambda z0|^j = 1 at z0 = 1/|lambda|; the boundary
        // point still witnesses the coefficient bound and keeps the majorant
        // ratio M_X X^p |lambda| as small as the estimate chain allows
        return RadiusWitness{1.0 / std::fabs(lambda_), 1.0};
    }
    double m = 1.0;
    for (double v : values_) m = std::max(m, std::fabs(v));
    return RadiusWitness{1.0, m};
}

ConvolutionSeriesSpec make_series(KernelSpec kernel, CoefficientSource coeffs,
                                  std::optional<RadiusWitness> witness) {
    ConvolutionSeriesSpec spec;
    spec.kernel = std::move(kernel);
    spec.radius_witness = witness.value_or(coeffs.default_witness());
    if (spec.radius_witness.z0 == 0.0 || !(spec.radius_witness.M > 0.0)) {
        throw RangeError("radius witness requires z0 != 0 and M > 0");
    }
    if (!coeffs.geometric_source()) {
        for (int j = 0; j < coeffs.explicit_size(); ++j) {
            double bound = spec.radius_witness.M / std::pow(std::fabs(spec.radius_witness.z0), j);
            if (std::fabs(coeffs[j]) > bound * (1.0 + 1e-12)) {
                throw RangeError("coefficient a_" + std::to_string(j) +
                                 " violates the radius witness bound");
            }
        }
    }
    spec.coeffs = std::move(coeffs);
    return spec;
}

TruncationBound estimate_truncation_bound(const KernelSpec& kernel, double X) {
    SingularFunction fn = resolve(kernel, X);
    TruncationBound tb;
    tb.X = X;
    tb.p = fn.exponent();
    double gp = specfun::gamma(tb.p);
    double sup = 0.0;
    const int n = 512;
    for (int j = 0; j <= n; ++j) {
        double u = std::cos(M_PI * j / n);
        double x = X * (u + 1.0) * 0.5;
        if (x <= 0.0) x = X * 1e-12;
        sup = std::max(sup, std::fabs(gp * std::pow(x, 1.0 - tb.p) * fn(x)));
    }
    tb.M_X = 1.05 * sup;
    return tb;
}

double tail_bound(const ConvolutionSeriesSpec& spec, const TruncationBound& tb, int J, double x) {
    if (J < 0) J = 0;
    const double M = spec.radius_witness.M;
    const double z0 = std::fabs(spec.radius_witness.z0);
    const double log_q = std::log(tb.M_X) + tb.p * std::log(tb.X) - std::log(z0);
    const double log_front = std::log(M) + std::log(tb.M_X);

    specfun::KahanSum sum;
    double max_term = 0.0;
    double prev = std::numeric_limits<double>::infinity();
    for (int j = J; j < J + 100000; ++j) {
        double lt = log_front + j * log_q - specfun::log_gamma((j + 1) * tb.p);
        double term = std::exp(lt);
        if (!std::isfinite(term)) return std::numeric_limits<double>::infinity();
        sum.add(term);
        max_term = std::max(max_term, term);
        bool decreasing = term < prev;
        if (decreasing && term < 1e-30 * std::max(max_term, sum.value())) break;
        prev = term;
    }
    return std::pow(x, tb.p - 1.0) * sum.value();
}

SeriesEvaluator::SeriesEvaluator(ConvolutionSeriesSpec spec, double x_max, ConvOptions opts,
                                 int term_budget)
    : spec_(std::move(spec)), x_max_(x_max), opts_(opts), budget_(term_budget) {
    if (spec_.kernel.is_h0()) {
        throw DistributionalKernel("convolution series require a resolvable kernel");
    }
    tb_ = estimate_truncation_bound(spec_.kernel, x_max_);
    if (const auto* p = spec_.kernel.power_law_spec()) {
        power_law_beta_ = p->beta;
    } else if (spec_.kernel.is_h1()) {
        power_law_beta_ = 1.0;
    }

    // Majorant terms once, suffix-summed, so per-term stopping checks are O(1).
    const double log_q = std::log(tb_.M_X) + tb_.p * std::log(tb_.X) -
                         std::log(std::fabs(spec_.radius_witness.z0));
    const double log_front = std::log(spec_.radius_witness.M) + std::log(tb_.M_X);
    std::vector<double> terms;
    double max_term = 0.0;
    for (int j = 0; j < budget_ + 100000; ++j) {
        double term = std::exp(log_front + j * log_q - specfun::log_gamma((j + 1) * tb_.p));
        if (!std::isfinite(term)) {
            terms.assign(1, std::numeric_limits<double>::infinity());
            break;
        }
        terms.push_back(term);
        max_term = std::max(max_term, term);
        if (j > 0 && term < terms[j - 1] && term < 1e-30 * max_term &&
            j >= budget_) {
            break;
        }
    }
    tail_suffix_.assign(terms.size() + 1, 0.0);
    for (int j = static_cast<int>(terms.size()) - 1; j >= 0; --j) {
        tail_suffix_[j] = tail_suffix_[j + 1] + terms[j];
    }
}

double SeriesEvaluator::cached_tail(int J, double x) const {
    if (J < 0) J = 0;
    double suffix = J < static_cast<int>(tail_suffix_.size())
                        ? tail_suffix_[J]
                        : tail_suffix_.back();
    return std::pow(x, tb_.p - 1.0) * suffix;
}

double SeriesEvaluator::kernel_power_at(int n, double x) const {
    if (n < 1) throw RangeError("kernel power index must be >= 1");
    if (power_law_beta_) {
        // h_beta^{<n>} = h_{n beta}
        double s = *power_law_beta_ * n;
        return std::pow(x, s - 1.0) * specfun::rgamma(s);
    }
    std::lock_guard<std::mutex> lock(mu_);
    if (powers_.empty()) powers_.push_back(resolve(spec_.kernel, x_max_));
    while (static_cast<int>(powers_.size()) < n) {
        powers_.push_back(convolve(powers_.back(), powers_.front(), opts_));
    }
    return powers_[n - 1](x);
}

double SeriesEvaluator::partial_sum(double x, int J) const {
    specfun::KahanSum sum;
    for (int j = 0; j < J; ++j) {
        double aj = spec_.coeffs[j];
        if (aj == 0.0) continue;
        sum.add(aj * kernel_power_at(j + 1, x));
    }
    return sum.value();
}

double SeriesEvaluator::eval(double x, double tol) const {
    if (!(x > 0.0) || x > x_max_ * (1.0 + 1e-12)) {
        throw RangeError("series evaluation requires 0 < x <= X");
    }
    const int list_end = spec_.coeffs.explicit_size();
    specfun::KahanSum sum;
    for (int j = 0; j < budget_; ++j) {
        if (list_end >= 0 && j >= list_end) return sum.value();  // exact zero tail
        double aj = spec_.coeffs[j];
        if (aj != 0.0) sum.add(aj * kernel_power_at(j + 1, x));
        if (cached_tail(j + 1, x) < tol) return sum.value();
    }
    throw SeriesDiverged("tail majorant still above " + std::to_string(tol) + " after " +
                         std::to_string(budget_) + " terms");
}

double eval_series(const ConvolutionSeriesSpec& spec, double x, double tol, double x_max,
                   const ConvOptions& opts) {
    SeriesEvaluator ev(spec, x_max, opts);
    return ev.eval(x, tol);
}

double geometric_oracle(const KernelSpec& kernel, double lambda, double x, double x_max) {
    if (kernel.is_h1()) {
        return std::exp(lambda * x);  // classical exponential series
    }
    if (const auto* p = kernel.power_law_spec()) {
        specfun::MLParams ml{p->beta, p->beta, 400, 1e-16};
        return std::pow(x, p->beta - 1.0) * specfun::mittag_leffler(ml, lambda * std::pow(x, p->beta));
    }
    if (auto ab = match_ml_sum_template(kernel)) {
        if (lambda == 0.0) return resolve(kernel, x_max)(x);
        double alpha = ab->first, beta = ab->second;
        specfun::MultiMLParams mm;
        mm.alphas = {1.0 - beta, 1.0 - beta + alpha};
        mm.beta = 0.0;
        mm.max_total_degree = 120;
        std::vector<double> zs = {lambda * std::pow(x, 1.0 - beta),
                                  lambda * std::pow(x, 1.0 - beta + alpha)};
        return specfun::multinomial_ml(mm, zs) / (lambda * x);
    }
    throw NoOracle("no closed form for l with kernel " + kernel.to_string());
}

GeometricValue geometric_l(const KernelSpec& kernel, double lambda, double x, bool with_oracle,
                           double x_max, const ConvOptions& opts) {
    GeometricValue out;
    if (with_oracle) {
        out.oracle = geometric_oracle(kernel, lambda, x, x_max);  // fail fast on NoOracle
    }
    auto spec = make_series(kernel, CoefficientSource::geometric(lambda));
    out.value = eval_series(spec, x, 1e-10, x_max, opts);
    if (with_oracle) out.abs_err = std::fabs(out.value - *out.oracle);
    return out;
}

SingularFunction geometric_function(const KernelSpec& kernel, double lambda, double x_max,
                                    double tol, const ConvOptions& opts) {
    auto spec = make_series(kernel, CoefficientSource::geometric(lambda));
    SeriesEvaluator ev(spec, x_max, opts);
    SingularFunction acc = SingularFunction::zero(x_max);
    SingularFunction base = resolve(kernel, x_max);
    SingularFunction power = base;  // kappa^{<j+1>}
    const double x_probe = std::min(1.0, x_max);
    int negligible_streak = 0;
    for (int j = 0; j < ev.term_budget(); ++j) {
        SingularFunction term = spec.coeffs[j] * power;
        acc = acc + term;
        if (ev.tail_at(j + 1, x_probe) < tol) return acc;
        if (lambda == 0.0) return acc;
        // terms that cannot move the representation end the build even when
        // the majorant is still catching up
        if (term.scale_estimate() <= 1e-16 * std::max(acc.scale_estimate(), 1e-300)) {
            if (++negligible_streak >= 3) return acc;
        } else {
            negligible_streak = 0;
        }
        power = convolve(power, base, opts);
    }
    throw SeriesDiverged("geometric series truncation did not reach " + std::to_string(tol) +
                         " within the term budget");
}

} // namespace gfc

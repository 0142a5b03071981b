#include "gfc/taylor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "gfc/specfun.hpp"

namespace gfc {

namespace {

void require_verified(const SoninePair& pair, const TaylorOptions& opts) {
    if (!pair.verified_to) {
        throw UnverifiedPair("run sonine_check on the pair before Taylor operations");
    }
    if (*pair.verified_to > opts.pair_residual_max) {
        throw UnverifiedPair("pair residual " + std::to_string(*pair.verified_to) +
                             " exceeds " + std::to_string(opts.pair_residual_max));
    }
}

SingularFunction sequential_gfd(const KernelSpec& k, OperatorVariant variant, int n,
                                const SingularFunction& f, const ConvOptions& opts) {
    OperatorRequest req;
    req.kernel = k;
    req.fold_n = n;
    req.variant = variant;
    req.form = OperatorForm::Sequential;
    return gfd_function(req, f, opts);
}

// ({1} * kappa^{<j>})(x); for j = 0 the factor is the formal unit and the
// result is {1} itself.
SingularFunction one_conv_power(const KernelSpec& kappa, int j, double x_max,
                                const ConvOptions& opts) {
    SingularFunction one = SingularFunction::power_term(1.0, 1.0, x_max);
    if (j == 0) return one;
    if (kappa.is_h0()) return one;
    return convolve(one, conv_power(kappa, j, x_max, opts), opts);
}

} // namespace

LimitAtZero limit_at_zero(const std::function<double(double)>& F,
                          const std::vector<double>& error_exponents, double x0, int levels) {
    if (levels < 2) throw RangeError("limit_at_zero needs at least 2 levels");
    std::vector<double> T(levels + 1);
    for (int m = 0; m <= levels; ++m) T[m] = F(x0 * std::pow(0.5, m));

    LimitAtZero out;
    int stages = std::min<int>(static_cast<int>(error_exponents.size()), levels - 1);
    for (int i = 0; i < stages; ++i) {
        double r = std::pow(2.0, error_exponents[i]);
        for (int m = levels; m >= i + 1; --m) {
            T[m] = T[m] + (T[m] - T[m - 1]) / (r - 1.0);
        }
    }
    out.value = T[levels];
    // both of the last two rows went through every elimination stage, so
    // their gap measures the remaining x-dependence of the extrapolant
    out.residual = std::fabs(T[levels] - T[levels - 1]);
    return out;
}

LimitAtZero limit_at_zero_of(const SingularFunction& F, double x0, int levels) {
    if (!F.continuous_at_zero()) {
        throw NotContinuousAtZero("no limit at 0: representation exponent " +
                                  std::to_string(F.min_order()) + " < 1");
    }
    bool pure_powers = true;
    for (const auto& c : F.components()) pure_powers = pure_powers && c.unit();
    if (pure_powers) {
        // exact: only the h_1 terms survive at 0, and ratio-2 extrapolation
        // on the dense exponent lattices of the sum kernel would be
        // ill-conditioned anyway
        return {F.value_at_zero(), 0.0, true};
    }
    auto exps = error_exponents_near_zero(F);
    double anchor = std::min(x0, 0.25 * F.x_max());
    return limit_at_zero([&F](double x) { return F(x); }, exps, anchor, levels);
}

std::vector<double> error_exponents_near_zero(const SingularFunction& f, int max_terms,
                                              double cap) {
    std::set<double> exps;
    for (const auto& c : f.components()) {
        if (c.coeff == 0.0) continue;
        double s = c.order - 1.0;
        if (s > 1e-9 && s <= cap) exps.insert(s);
        // Interpolated factors vary smoothly on top of the power front:
        // account for the next integer offsets as well.
        if (!c.unit()) {
            for (int q = 1; q <= 2; ++q) {
                double sq = s + q;
                if (sq > 1e-9 && sq <= cap) exps.insert(sq);
            }
        }
    }
    std::vector<double> out(exps.begin(), exps.end());
    if (static_cast<int>(out.size()) > max_terms) out.resize(max_terms);
    return out;
}

std::vector<double> extract_coefficients(const SingularFunction& f, const SoninePair& pair, int n,
                                         ExtractionReport* report, const TaylorOptions& opts) {
    if (n < 1) throw RangeError("extract_coefficients requires n >= 1");
    require_verified(pair, opts);

    std::vector<double> coeffs;
    ExtractionReport rep;
    SingularFunction g = f;  // D_(k)^{<j>} f
    ConvOptions fold_opts = opts.conv;
    for (int j = 0; j < n; ++j) {
        SingularFunction Fj = gfi_function(pair.k, 1, g, opts.conv);
        if (!Fj.continuous_at_zero()) {
            // A power front below 1 diverges at the origin: a_j does not exist.
            if (report) {
                rep.coefficients.push_back({0.0, std::numeric_limits<double>::infinity(), false});
                *report = rep;
            }
            throw ExtrapolationUnstable("(I_(k) D^{<" + std::to_string(j) +
                                        ">} f)(x) diverges as x -> 0");
        }
        auto lim = limit_at_zero_of(Fj, opts.x0, opts.levels);
        lim.stable = lim.residual <= opts.unstable_tol * (1.0 + std::fabs(lim.value));
        rep.coefficients.push_back({lim.value, lim.residual, lim.stable});
        if (!lim.stable) {
            if (report) *report = rep;
            return coeffs;  // report fewer coefficients instead of garbage
        }
        coeffs.push_back(lim.value);
        if (j + 1 < n) {
            g = sequential_gfd(pair.k, OperatorVariant::GFD_RL, 1, g, fold_opts);
            fold_opts.degree = std::min(96, fold_opts.degree + 16);
        }
    }
    if (report) *report = rep;
    return coeffs;
}

TaylorExpansion::TaylorExpansion(SingularFunction f, SoninePair pair, int n, TaylorVariant variant,
                                 const TaylorOptions& opts)
    : f_(std::move(f)), pair_(std::move(pair)), n_(n), variant_(variant) {
    if (n_ < 1) throw RangeError("taylor expansion requires n >= 1");
    require_verified(pair_, opts);
    const double X = f_.x_max();

    if (variant_ == TaylorVariant::RL) {
        coeffs_ = extract_coefficients(f_, pair_, n_, &report_, opts);
        if (static_cast<int>(coeffs_.size()) < n_) {
            throw ExtrapolationUnstable("coefficient extraction stopped at " +
                                        std::to_string(coeffs_.size()) + " of " +
                                        std::to_string(n_));
        }
        for (int j = 0; j < n_; ++j) {
            basis_.push_back(conv_power(pair_.kappa, j + 1, X, opts.conv));
        }
        dn_ = sequential_gfd(pair_.k, OperatorVariant::GFD_RL, n_, f_, opts.conv);
    } else {
        // coefficients f(0), (*D^{<j>} f)(0); read off at 0 where the folds
        // are continuous by construction
        coeffs_.push_back(f_.value_at_zero());
        report_.coefficients.push_back({coeffs_[0], 0.0, true});
        basis_.push_back(SingularFunction::power_term(1.0, 1.0, X));
        SingularFunction g = f_;
        ConvOptions fold_opts = opts.conv;
        for (int j = 1; j < n_; ++j) {
            g = sequential_gfd(pair_.k, OperatorVariant::GFD_Caputo, 1, g, fold_opts);
            fold_opts.degree = std::min(96, fold_opts.degree + 16);
            double cj = g.value_at_zero();
            coeffs_.push_back(cj);
            report_.coefficients.push_back({cj, g.quality(), true});
            basis_.push_back(one_conv_power(pair_.kappa, j, X, opts.conv));
        }
        dn_ = sequential_gfd(pair_.k, OperatorVariant::GFD_Caputo, 1, g, fold_opts);
    }
    remainder_ = gfi_function(pair_.kappa, n_, dn_, opts.conv);
}

double TaylorExpansion::poly(double x) const {
    specfun::KahanSum sum;
    for (std::size_t j = 0; j < coeffs_.size(); ++j) sum.add(coeffs_[j] * basis_[j](x));
    return sum.value();
}

double TaylorExpansion::remainder(double x) const { return remainder_(x); }

std::pair<double, double> taylor_approx(const SingularFunction& f, const SoninePair& pair, int n,
                                        TaylorVariant variant, double x,
                                        const TaylorOptions& opts) {
    TaylorExpansion exp(f, pair, n, variant, opts);
    return {exp.poly(x), exp.remainder(x)};
}

MeanValueBracket mean_value_bracket(const SingularFunction& f, const SoninePair& pair, int n,
                                    TaylorVariant variant, double x, int grid_m,
                                    const TaylorOptions& opts) {
    if (grid_m < 2) throw RangeError("mean_value_bracket requires grid_m >= 2");
    require_verified(pair, opts);
    OperatorVariant op = variant == TaylorVariant::RL ? OperatorVariant::GFD_RL
                                                      : OperatorVariant::GFD_Caputo;
    SingularFunction dn = sequential_gfd(pair.k, op, n, f, opts.conv);
    SingularFunction rem = gfi_function(pair.kappa, n, dn, opts.conv);
    double denom = one_conv_power(pair.kappa, n, f.x_max(), opts.conv)(x);

    MeanValueBracket out;
    out.ratio = rem(x) / denom;
    out.lo = std::numeric_limits<double>::infinity();
    out.hi = -std::numeric_limits<double>::infinity();
    for (int i = 1; i <= grid_m; ++i) {
        double v = dn(x * i / grid_m);
        out.lo = std::min(out.lo, v);
        out.hi = std::max(out.hi, v);
    }
    double slack = 1e-8 * (1.0 + std::max(std::fabs(out.lo), std::fabs(out.hi)));
    out.within = out.ratio >= out.lo - slack && out.ratio <= out.hi + slack;
    return out;
}

double caputo_taylor_series(const SingularFunction& f, const SoninePair& pair, double x, int n_max,
                            double tol, const TaylorOptions& opts) {
    require_verified(pair, opts);
    const double X = f.x_max();
    specfun::KahanSum sum;
    sum.add(f.value_at_zero());
    double prev = sum.value();
    int calm = 0;
    double coeff_scale = 1.0;
    SingularFunction g = f;
    ConvOptions fold_opts = opts.conv;
    for (int j = 1; j <= n_max; ++j) {
        g = sequential_gfd(pair.k, OperatorVariant::GFD_Caputo, 1, g, fold_opts);
        fold_opts.degree = std::min(96, fold_opts.degree + 16);
        double cj = g.value_at_zero();
        if (j <= 5) coeff_scale = std::max(coeff_scale, std::fabs(cj));
        if (j > 5 && std::fabs(cj) > 1e6 * coeff_scale) {
            throw SeriesDiverged("Caputo coefficient (*D^{<" + std::to_string(j) +
                                 ">}f)(0) = " + std::to_string(cj) + " is unbounded");
        }
        sum.add(cj * one_conv_power(pair.kappa, j, X, opts.conv)(x));
        double cur = sum.value();
        calm = std::fabs(cur - prev) < tol ? calm + 1 : 0;
        prev = cur;
        if (calm >= 2) break;
    }
    return sum.value();
}

} // namespace gfc

#include "gfc/convops.hpp"

#include <cmath>

#include "gfc/specfun.hpp"

namespace gfc {

namespace {

// Convolve two components through the product rule. The result has order
// s1+s2 and its continuous factor is sampled on a Chebyshev grid:
//   G(x) = (1/B(s1,s2)) int_0^1 (1-t)^{s1-1} t^{s2-1} g1(x(1-t)) g2(x t) dt.
// Normalizing by the rule's own weight sum keeps constant factors exact.
Component convolve_pair_quadrature(const Component& ca, const Component& cb, double x_max,
                                   const ConvOptions& opts, double* achieved) {
    if (!(ca.order > 0.0) || !(cb.order > 0.0)) {
        throw OutsideFunctionSpace("convolution requires component orders > 0 (got " +
                                   std::to_string(ca.order) + ", " + std::to_string(cb.order) + ")");
    }
    auto rule = jacobi_rule_cached(ca.order - 1.0, cb.order - 1.0, opts.quad_order);
    auto rule2 = opts.check
                     ? jacobi_rule_cached(ca.order - 1.0, cb.order - 1.0, 2 * opts.quad_order)
                     : nullptr;

    // Copies keep the sampled closure self-contained for later refits.
    Component a = ca, b = cb;
    auto sample = [a, b, rule](double x) {
        double s = 0.0;
        for (std::size_t i = 0; i < rule->nodes.size(); ++i) {
            double t = rule->nodes[i];
            s += rule->weights[i] * a.core(x * (1.0 - t)) * b.core(x * t);
        }
        return s / rule->weight_sum;
    };

    Component out;
    out.order = ca.order + cb.order;
    out.coeff = ca.coeff * cb.coeff;
    out.kind = Component::Core::Interp;
    out.interp = std::make_shared<const Chebyshev>(Chebyshev(sample, opts.degree, x_max));

    if (opts.check) {
        double worst = 0.0, scale = 1.0;
        for (int i = 0; i <= 16; ++i) {
            double x = x_max * i / 16.0;
            double s2 = 0.0;
            for (std::size_t q = 0; q < rule2->nodes.size(); ++q) {
                double t = rule2->nodes[q];
                s2 += rule2->weights[q] * a.core(x * (1.0 - t)) * b.core(x * t);
            }
            s2 /= rule2->weight_sum;
            double s1 = (*out.interp)(x);
            worst = std::max(worst, std::fabs(s1 - s2));
            scale = std::max(scale, std::fabs(s2));
        }
        double rel = worst / scale;
        if (achieved) *achieved = rel;
        if (rel > opts.quad_check_tol) {
            throw QuadratureNotConverged(
                "doubling the quadrature order moves the convolution by " + std::to_string(rel) +
                " (tolerance " + std::to_string(opts.quad_check_tol) + ")");
        }
    } else if (achieved) {
        *achieved = 0.0;
    }
    return out;
}

SingularFunction convolve_impl(const SingularFunction& f, const SingularFunction& g,
                               const ConvOptions& opts, bool exact_powers) {
    if (std::fabs(f.x_max() - g.x_max()) > 1e-12) {
        throw RangeError("convolving functions with different domain caps");
    }
    SingularFunction out(f.x_max());
    out.merge_quality(f.quality());
    out.merge_quality(g.quality());
    for (const auto& ca : f.components()) {
        for (const auto& cb : g.components()) {
            if (exact_powers && ca.unit() && cb.unit()) {
                Component c;
                c.order = ca.order + cb.order;  // h_a * h_b = h_{a+b}
                c.coeff = ca.coeff * cb.coeff;
                out.add_component(std::move(c));
            } else {
                double achieved = 0.0;
                out.add_component(convolve_pair_quadrature(ca, cb, f.x_max(), opts, &achieved));
                out.merge_quality(achieved);
            }
        }
    }
    out.finalize(opts.degree);
    return out;
}

DiffOptions diff_options(const ConvOptions& opts) {
    DiffOptions d;
    d.degree = opts.degree;
    d.check_tol = opts.diff_check_tol;
    d.check = opts.check;
    return d;
}

SingularFunction subtract_value_at_zero(const SingularFunction& f) {
    SingularFunction out = f;
    double f0 = f.value_at_zero();
    if (f0 != 0.0) {
        Component c;
        c.order = 1.0;
        c.coeff = -f0;
        out.add_component(std::move(c));
        out.finalize();
    }
    return out;
}

SingularFunction caputo_derivative(const SingularFunction& f, const ConvOptions& opts) {
    if (!f.continuous_at_zero()) {
        throw CaputoRequiresContinuity("representation exponent " + std::to_string(f.min_order()) +
                                       " < 1: f' is not integrable at 0");
    }
    SingularFunction df = f.derivative(diff_options(opts));
    if (!df.in_c_minus_one()) {
        throw CaputoRequiresContinuity("derivative leaves C_{-1}");
    }
    return df;
}

SingularFunction gfd_single_fold(const KernelSpec& k, OperatorVariant variant,
                                 const SingularFunction& f, const ConvOptions& opts) {
    const bool caputo = variant == OperatorVariant::GFD_Caputo;
    if (k.is_h0()) {
        // D_{(h0)} f = d/dx (h0 * f) = f';  *D_{(h0)} f = h0 * f' = f'.
        return caputo ? caputo_derivative(f, opts) : f.derivative(diff_options(opts));
    }
    if (k.is_h1()) {
        // D_{(h1)} f = d/dx int f = f;  *D_{(h1)} f = int f' = f - f(0).
        if (caputo && !f.continuous_at_zero()) {
            throw CaputoRequiresContinuity("f has no value at 0");
        }
        return caputo ? subtract_value_at_zero(f) : f;
    }
    SingularFunction kernel_fn = resolve(k, f.x_max());
    if (caputo) {
        return convolve(kernel_fn, caputo_derivative(f, opts), opts);
    }
    SingularFunction conv = convolve(kernel_fn, f, opts);
    return conv.derivative(diff_options(opts));
}

} // namespace

SingularFunction convolve(const SingularFunction& f, const SingularFunction& g,
                          const ConvOptions& opts) {
    return convolve_impl(f, g, opts, /*exact_powers=*/true);
}

SingularFunction convolve(const SingularFunction& f, const SingularFunction& g, int quad_order) {
    ConvOptions opts;
    opts.quad_order = quad_order;
    return convolve(f, g, opts);
}

SingularFunction convolve_quadrature(const SingularFunction& f, const SingularFunction& g,
                                     const ConvOptions& opts) {
    return convolve_impl(f, g, opts, /*exact_powers=*/false);
}

SingularFunction conv_power(const KernelSpec& kappa, int n, double x_max,
                            const ConvOptions& opts) {
    if (n < 0) throw RangeError("conv_power requires n >= 0");
    if (n == 0) {
        throw DistributionalKernel("kappa^{<0>} is the formal unit and cannot be materialized");
    }
    if (kappa.is_h0()) {
        throw DistributionalKernel("h0 powers stay distributional");
    }
    if (const auto* p = kappa.power_law_spec()) {
        return SingularFunction::power_term(1.0, n * p->beta, x_max);
    }
    if (kappa.is_h1()) {
        return SingularFunction::power_term(1.0, static_cast<double>(n), x_max);
    }
    SingularFunction base = resolve(kappa, x_max);
    SingularFunction acc = base;
    for (int i = 1; i < n; ++i) acc = convolve(acc, base, opts);
    return acc;
}

SingularFunction gfi_function(const KernelSpec& kappa, int n, const SingularFunction& f,
                              const ConvOptions& opts) {
    if (n < 1) throw RangeError("gfi requires n >= 1");
    if (kappa.is_h0()) return f;  // identity for every fold count
    return convolve(conv_power(kappa, n, f.x_max(), opts), f, opts);
}

double apply_gfi(const KernelSpec& kappa, int n, const SingularFunction& f, double x,
                 const ConvOptions& opts) {
    if (kappa.is_h0()) return f(x);
    return gfi_function(kappa, n, f, opts)(x);
}

SingularFunction gfd_function(const OperatorRequest& req, const SingularFunction& f,
                              const ConvOptions& opts) {
    if (req.fold_n < 1) throw RangeError("operator fold count must be >= 1");
    if (req.variant == OperatorVariant::GFI) {
        return gfi_function(req.kernel, req.fold_n, f, opts);
    }
    const bool caputo = req.variant == OperatorVariant::GFD_Caputo;

    if (req.form == OperatorForm::NFoldAlt) {
        const bool unit_kernel = req.kernel.is_h0();  // h0^{<n>} convolves as identity
        if (caputo) {
            // (k^{<n>} * f^{(n)})
            SingularFunction fn = f;
            ConvOptions o = opts;
            for (int j = 0; j < req.fold_n; ++j) {
                fn = caputo_derivative(fn, o);
                o.degree = std::min(96, o.degree + 16);
            }
            if (unit_kernel) return fn;
            return convolve(conv_power(req.kernel, req.fold_n, f.x_max(), opts), fn, opts);
        }
        // d^n/dx^n (k^{<n>} * f)
        SingularFunction cur =
            unit_kernel ? f : convolve(conv_power(req.kernel, req.fold_n, f.x_max(), opts), f, opts);
        ConvOptions o = opts;
        for (int j = 0; j < req.fold_n; ++j) {
            cur = cur.derivative(diff_options(o));
            o.degree = std::min(96, o.degree + 16);
        }
        return cur;
    }

    // Sequential form.
    SingularFunction cur = f;
    ConvOptions o = opts;
    for (int j = 0; j < req.fold_n; ++j) {
        cur = gfd_single_fold(req.kernel, req.variant, cur, o);
        o.degree = std::min(96, o.degree + 16);
    }
    return cur;
}

double apply_gfd(const OperatorRequest& req, const SingularFunction& f, double x,
                 const ConvOptions& opts) {
    return gfd_function(req, f, opts)(x);
}

std::vector<double> linspace(double a, double b, int m) {
    if (m < 1) throw RangeError("linspace requires m >= 1");
    std::vector<double> xs(m);
    if (m == 1) {
        xs[0] = a;
        return xs;
    }
    for (int i = 0; i < m; ++i) xs[i] = a + (b - a) * i / (m - 1);
    return xs;
}

} // namespace gfc

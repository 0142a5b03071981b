#pragma once

#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "gfc/chebyshev.hpp"
#include "gfc/errors.hpp"

namespace gfc {

/// Options for spectral differentiation of interpolated factors.
struct DiffOptions {
    int degree = 48;
    double check_tol = 1e-6;  // relative cross-check at degree vs degree+16
    bool check = true;
};

/// One additive piece of a function on (0, x_max]:
///
///     coeff * h_order(x) * core(x),    h_s(x) = x^{s-1} / Gamma(s),
///
/// with core continuous on [0, x_max]. Unit cores are pure power terms and
/// all algebra on them is exact; Analytic cores are closed forms; Interp
/// cores are Chebyshev interpolants produced by quadrature.
struct Component {
    enum class Core { Unit, Analytic, Interp };

    double order = 1.0;
    double coeff = 0.0;
    Core kind = Core::Unit;
    std::function<double(double)> fn;   // Analytic core
    std::function<double(double)> dfn;  // optional closed-form core derivative
    std::shared_ptr<const Chebyshev> interp;
    // Whole-derivative-chain closed form: family(k, x) is the k-th core
    // derivative. Keeps repeated differentiation exact (no spectral noise).
    std::function<double(int, double)> family;
    int family_k = 0;

    double core(double x) const;
    double core_sup_estimate() const;   // coarse bound of |core| on the domain
    double value(double x) const;
    bool unit() const { return kind == Core::Unit; }
};

/// A member of C_{-1}(0, x_max]: f(x) = x^{p-1} g(x) with g continuous and
/// the reported exponent p in (0, 1]. Stored as a finite sum of components;
/// surplus powers beyond exponent 1 are carried by the components' orders
/// and folded into the reported regular factor.
class SingularFunction {
public:
    explicit SingularFunction(double x_max = 2.0) : x_max_(x_max) {}

    static SingularFunction zero(double x_max = 2.0);
    /// coeff * h_beta(x)
    static SingularFunction power_term(double coeff, double beta, double x_max = 2.0);
    /// sum of (coeff, beta) power terms
    static SingularFunction power_sum(const std::vector<std::pair<double, double>>& coeff_beta,
                                      double x_max = 2.0);
    /// x^{order-1} * core(x); dcore may be empty (spectral fallback)
    static SingularFunction analytic(double order, std::function<double(double)> core,
                                     std::function<double(double)> dcore, double x_max = 2.0);
    /// x^{order-1} * family(0, x) with family(k, .) the k-th core derivative
    static SingularFunction analytic_family(double order,
                                            std::function<double(int, double)> family,
                                            double x_max = 2.0);

    double x_max() const { return x_max_; }
    bool is_zero() const { return comps_.empty(); }

    /// Reported representation exponent: min(smallest component order, 1).
    double exponent() const;
    double min_order() const;

    double operator()(double x) const;
    /// Continuous factor of the representation: x^{1-exponent()} f(x).
    double regular(double x) const;

    bool in_c_minus_one() const;
    bool continuous_at_zero() const;
    /// Limit of f at 0+; throws NotContinuousAtZero when it does not exist.
    double value_at_zero() const;

    /// Termwise derivative. The result can leave C_{-1} (component orders
    /// <= 0); callers composing operators must check in_c_minus_one().
    SingularFunction derivative(const DiffOptions& opts = {}) const;

    const std::vector<Component>& components() const { return comps_; }

    /// Worst construction tolerance accumulated through quadrature,
    /// spectral differentiation and consolidation along this value's history.
    double quality() const { return quality_; }

    void add_component(Component c) { comps_.push_back(std::move(c)); }
    void merge_quality(double q);
    double scale_estimate() const;

    /// Drop negligible components, merge equal-order power terms and
    /// collapse integer-offset families of interpolated components.
    void finalize(int degree_hint = 48);

private:
    std::vector<Component> comps_;
    double x_max_;
    double quality_ = 0.0;
};

SingularFunction operator+(const SingularFunction& a, const SingularFunction& b);
SingularFunction operator*(double c, const SingularFunction& f);

} // namespace gfc

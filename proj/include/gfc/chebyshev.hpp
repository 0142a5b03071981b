#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "gfc/errors.hpp"

namespace gfc {

/// Chebyshev interpolant on [0, x_max], built at the Chebyshev-Lobatto
/// points. Stores the sampler so derivatives can be cross-checked against
/// a refit at a higher degree.
class Chebyshev {
public:
    Chebyshev() = default;
    Chebyshev(const std::function<double(double)>& fn, int degree, double x_max);

    static Chebyshev from_coefficients(std::vector<double> coeffs, double x_max);

    double operator()(double x) const;

    /// Derivative of the interpolating polynomial.
    Chebyshev derivative() const;

    /// Derivative cross-validated against a refit at degree+16 when the
    /// sampler is available. Disagreement beyond rel_tol (relative to the
    /// larger derivative scale) throws DifferentiationUnstable. The achieved
    /// disagreement is written to *achieved when given.
    Chebyshev derivative_checked(double rel_tol = 1e-6, double* achieved = nullptr) const;

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    double x_max() const { return x_max_; }
    double max_abs() const { return max_abs_; }
    bool has_source() const { return static_cast<bool>(source_); }
    const std::vector<double>& coefficients() const { return coeffs_; }

private:
    double x_max_ = 1.0;
    std::vector<double> coeffs_;   // plain-sum convention: p(u) = sum a_k T_k(u)
    double max_abs_ = 0.0;
    std::function<double(double)> source_;

    void refresh_max_abs();
};

} // namespace gfc

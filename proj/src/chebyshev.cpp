#include "gfc/chebyshev.hpp"

#include <algorithm>
#include <cmath>

namespace gfc {

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;
}

Chebyshev::Chebyshev(const std::function<double(double)>& fn, int degree, double x_max)
    : x_max_(x_max), source_(fn) {
    if (degree < 1) throw RangeError("chebyshev degree must be >= 1");
    if (!(x_max > 0.0)) throw RangeError("chebyshev domain cap must be positive");
    const int n = degree;
    std::vector<double> values(n + 1);
    for (int j = 0; j <= n; ++j) {
        double u = std::cos(kPi * j / n);
        double x = x_max_ * (u + 1.0) * 0.5;
        values[j] = fn(x);
    }
    coeffs_.assign(n + 1, 0.0);
    for (int k = 0; k <= n; ++k) {
        double s = 0.5 * (values[0] + (k % 2 == 0 ? values[n] : -values[n]));
        for (int j = 1; j < n; ++j) {
            s += values[j] * std::cos(kPi * k * j / n);
        }
        coeffs_[k] = 2.0 * s / n;
    }
    coeffs_[0] *= 0.5;
    coeffs_[n] *= 0.5;
    max_abs_ = 0.0;
    for (double v : values) max_abs_ = std::max(max_abs_, std::fabs(v));
}

Chebyshev Chebyshev::from_coefficients(std::vector<double> coeffs, double x_max) {
    Chebyshev c;
    c.x_max_ = x_max;
    c.coeffs_ = std::move(coeffs);
    if (c.coeffs_.empty()) c.coeffs_.push_back(0.0);
    c.refresh_max_abs();
    return c;
}

void Chebyshev::refresh_max_abs() {
    max_abs_ = 0.0;
    int n = degree() > 0 ? degree() : 1;
    for (int j = 0; j <= n; ++j) {
        double u = std::cos(kPi * j / n);
        max_abs_ = std::max(max_abs_, std::fabs((*this)(x_max_ * (u + 1.0) * 0.5)));
    }
}

double Chebyshev::operator()(double x) const {
    double u = 2.0 * x / x_max_ - 1.0;
    u = std::clamp(u, -1.0, 1.0);
    // Clenshaw
    double b1 = 0.0, b2 = 0.0;
    for (int k = static_cast<int>(coeffs_.size()) - 1; k >= 1; --k) {
        double b0 = 2.0 * u * b1 - b2 + coeffs_[k];
        b2 = b1;
        b1 = b0;
    }
    return u * b1 - b2 + coeffs_[0];
}

Chebyshev Chebyshev::derivative() const {
    const int n = degree();
    std::vector<double> d(std::max(n, 1), 0.0);
    if (n >= 1) {
        double dkp1 = 0.0, dkp2 = 0.0;  // d_{k+1}, d_{k+2}
        for (int k = n; k >= 1; --k) {
            double dk = dkp2 + 2.0 * k * coeffs_[k];
            if (k - 1 < static_cast<int>(d.size())) d[k - 1] = dk;
            dkp2 = dkp1;
            dkp1 = dk;
        }
        d[0] *= 0.5;
    }
    const double scale = 2.0 / x_max_;
    for (double& v : d) v *= scale;
    return from_coefficients(std::move(d), x_max_);
}

Chebyshev Chebyshev::derivative_checked(double rel_tol, double* achieved) const {
    Chebyshev der = derivative();
    if (!source_) {
        if (achieved) *achieved = 0.0;
        return der;
    }
    Chebyshev refit(source_, degree() + 16, x_max_);
    Chebyshev der2 = refit.derivative();
    double worst = 0.0, scale = 1.0;
    for (int i = 0; i <= 32; ++i) {
        double x = x_max_ * i / 32.0;
        double a = der(x), b = der2(x);
        worst = std::max(worst, std::fabs(a - b));
        scale = std::max(scale, std::fabs(b));
    }
    double rel = worst / scale;
    if (achieved) *achieved = rel;
    if (rel > rel_tol) {
        throw DifferentiationUnstable("spectral derivative disagreement " + std::to_string(rel) +
                                      " across degrees " + std::to_string(degree()) + "/" +
                                      std::to_string(degree() + 16));
    }
    return der;
}

} // namespace gfc

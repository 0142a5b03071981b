#pragma once

#include <memory>
#include <vector>

#include "gfc/errors.hpp"

namespace gfc {

/// Gauss-Jacobi quadrature for the weight (1-t)^a t^b on (0, 1).
/// An m-point rule integrates polynomials of degree <= 2m-1 against the
/// weight exactly; the weights sum to Beta(a+1, b+1).
struct JacobiRule {
    double a = 0.0;
    double b = 0.0;
    std::vector<double> nodes;    // in (0, 1)
    std::vector<double> weights;  // positive
    double weight_sum = 0.0;

    template <typename F>
    double integrate(F&& fn) const {
        double s = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * fn(nodes[i]);
        return s;
    }
};

/// Golub-Welsch construction: eigen-decomposition of the symmetric
/// tridiagonal recurrence matrix of the Jacobi polynomials.
JacobiRule jacobi_rule(double a, double b, int m);

/// Process-wide cache keyed on (a, b, m); safe for concurrent use.
std::shared_ptr<const JacobiRule> jacobi_rule_cached(double a, double b, int m);

} // namespace gfc

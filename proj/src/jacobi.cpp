#include "gfc/jacobi.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include <Eigen/Dense>

#include "gfc/specfun.hpp"

namespace gfc {

JacobiRule jacobi_rule(double a, double b, int m) {
    if (!(a > -1.0) || !(b > -1.0)) {
        throw RangeError("jacobi_rule requires a, b > -1");
    }
    if (m < 1) throw RangeError("jacobi_rule requires m >= 1");

    // Recurrence coefficients of the monic Jacobi polynomials for the
    // weight (1-x)^a (1+x)^b on [-1, 1].
    const double ab = a + b;
    Eigen::VectorXd diag(m), sub(m > 1 ? m - 1 : 1);
    diag[0] = (b - a) / (ab + 2.0);
    for (int k = 1; k < m; ++k) {
        double den = (2.0 * k + ab) * (2.0 * k + ab + 2.0);
        diag[k] = (b * b - a * a) / den;
    }
    for (int k = 1; k < m; ++k) {
        double beta_k;
        if (k == 1) {
            // (k+a+b) cancels against (2k+a+b-1); avoids 0/0 at a+b = -1.
            beta_k = 4.0 * (1.0 + a) * (1.0 + b) / ((ab + 2.0) * (ab + 2.0) * (ab + 3.0));
        } else {
            double t = 2.0 * k + ab;
            beta_k = 4.0 * k * (k + a) * (k + b) * (k + ab) / (t * t * (t + 1.0) * (t - 1.0));
        }
        sub[k - 1] = std::sqrt(beta_k);
    }

    // Zeroth moment on [-1,1]: 2^{a+b+1} B(a+1, b+1).
    const double log_beta = specfun::log_gamma(a + 1.0) + specfun::log_gamma(b + 1.0) -
                            specfun::log_gamma(ab + 2.0);
    const double mu0 = std::exp((ab + 1.0) * std::log(2.0) + log_beta);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, m > 1 ? sub.head(m - 1) : Eigen::VectorXd(),
                                  Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) {
        throw EigenFailure("jacobi_rule: tridiagonal eigensolve did not converge (a=" +
                           std::to_string(a) + ", b=" + std::to_string(b) +
                           ", m=" + std::to_string(m) + ")");
    }

    JacobiRule rule;
    rule.a = a;
    rule.b = b;
    rule.nodes.resize(m);
    rule.weights.resize(m);
    const double half_pow = std::exp(-(ab + 1.0) * std::log(2.0));
    double wsum = 0.0;
    for (int i = 0; i < m; ++i) {
        double x = solver.eigenvalues()[i];
        double v0 = solver.eigenvectors()(0, i);
        rule.nodes[i] = 0.5 * (x + 1.0);  // map [-1,1] -> (0,1); 1-x side carries weight a
        rule.weights[i] = mu0 * v0 * v0 * half_pow;
        wsum += rule.weights[i];
    }
    rule.weight_sum = wsum;
    return rule;
}

std::shared_ptr<const JacobiRule> jacobi_rule_cached(double a, double b, int m) {
    static std::mutex mu;
    static std::map<std::tuple<double, double, int>, std::shared_ptr<const JacobiRule>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(a, b, m);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto rule = std::make_shared<const JacobiRule>(jacobi_rule(a, b, m));
    cache.emplace(key, rule);
    return rule;
}

} // namespace gfc

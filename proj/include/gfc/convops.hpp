#pragma once

#include "gfc/jacobi.hpp"
#include "gfc/kernels.hpp"
#include "gfc/singular_function.hpp"

namespace gfc {

/// Knobs for the weakly singular convolution engine.
struct ConvOptions {
    int quad_order = 32;
    int degree = 48;              // Chebyshev degree of sampled regular factors
    double quad_check_tol = 1e-8; // relative doubled-order disagreement allowed
    bool check = true;
    double diff_check_tol = 1e-6; // spectral-derivative cross-check
};

/// Laplace convolution (f * g)(x) = int_0^x f(x-xi) g(xi) dxi.
///
/// Power terms combine exactly (h_a * h_b = h_{a+b}); every other component
/// pair goes through Gauss-Jacobi product quadrature with the substitution
/// xi = x t, which moves both endpoint singularities into the weight
/// (1-t)^{p-1} t^{q-1} so only continuous factors are sampled.
SingularFunction convolve(const SingularFunction& f, const SingularFunction& g,
                          const ConvOptions& opts = {});
SingularFunction convolve(const SingularFunction& f, const SingularFunction& g, int quad_order);

/// Quadrature path for every component pair, including pure powers.
/// Exists so the exact short-circuit can be validated against the rule.
SingularFunction convolve_quadrature(const SingularFunction& f, const SingularFunction& g,
                                     const ConvOptions& opts = {});

/// kappa^{<n>} as a function, n >= 1. Power-law kernels short-circuit to
/// h_{n beta}; n = 0 is the formal unit and cannot be materialized.
SingularFunction conv_power(const KernelSpec& kappa, int n, double x_max = 2.0,
                            const ConvOptions& opts = {});

enum class OperatorVariant { GFI, GFD_RL, GFD_Caputo };
enum class OperatorForm { Sequential, NFoldAlt };

struct OperatorRequest {
    KernelSpec kernel;
    int fold_n = 1;
    OperatorVariant variant = OperatorVariant::GFI;
    OperatorForm form = OperatorForm::Sequential;
};

/// n-fold general fractional integral: (kappa^{<n>} * f). The extended
/// kernels follow the unit-kernel convention: h0 is the identity and h1 is
/// the classical antiderivative.
SingularFunction gfi_function(const KernelSpec& kappa, int n, const SingularFunction& f,
                              const ConvOptions& opts = {});
double apply_gfi(const KernelSpec& kappa, int n, const SingularFunction& f, double x,
                 const ConvOptions& opts = {});

/// General fractional derivatives with kernel k:
///   Riemann-Liouville: d/dx (k * f); Caputo: (k * f').
/// Sequential form iterates the single fold; NFoldAlt computes
/// d^n/dx^n (k^{<n>} * f) or (k^{<n>} * f^{(n)}).
/// Extended kernels: D_{(h0)} f = f', D_{(h1)} f = f (RL);
/// *D_{(h0)} f = f', *D_{(h1)} f = f - f(0) (Caputo).
SingularFunction gfd_function(const OperatorRequest& req, const SingularFunction& f,
                              const ConvOptions& opts = {});
double apply_gfd(const OperatorRequest& req, const SingularFunction& f, double x,
                 const ConvOptions& opts = {});

/// Convenience for building grids.
std::vector<double> linspace(double a, double b, int m);

} // namespace gfc

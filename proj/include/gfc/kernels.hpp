#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gfc/report.hpp"
#include "gfc/singular_function.hpp"

namespace gfc {

struct PowerLawKernel {
    double beta = 0.5;  // > 0
};

struct SumTerm {
    double coeff = 1.0;
    double beta = 0.5;  // > 0
};

struct SumPowerLawKernel {
    std::vector<SumTerm> terms;  // non-empty
};

/// k(x) = x^{beta-1} E_{alpha,beta}(-x^alpha), 0 < alpha < beta < 1.
struct MLKernel {
    double alpha = 0.25;
    double beta = 0.625;
};

struct ExtendedH0 {};  // convolution unit; distributional, never materialized
struct ExtendedH1 {};  // the constant {1}

/// Symbolic kernel descriptor. Use the factory functions; they validate the
/// parameter ranges.
class KernelSpec {
public:
    using Variant = std::variant<PowerLawKernel, SumPowerLawKernel, MLKernel, ExtendedH0, ExtendedH1>;

    KernelSpec() : v_(PowerLawKernel{0.5}) {}

    static KernelSpec power_law(double beta);
    static KernelSpec sum_power_law(std::vector<SumTerm> terms);
    static KernelSpec ml(double alpha, double beta);
    static KernelSpec h0() { return KernelSpec(Variant(ExtendedH0{})); }
    static KernelSpec h1() { return KernelSpec(Variant(ExtendedH1{})); }

    const Variant& variant() const { return v_; }
    bool is_h0() const { return std::holds_alternative<ExtendedH0>(v_); }
    bool is_h1() const { return std::holds_alternative<ExtendedH1>(v_); }
    bool is_power_law() const { return std::holds_alternative<PowerLawKernel>(v_); }
    const PowerLawKernel* power_law_spec() const { return std::get_if<PowerLawKernel>(&v_); }
    const SumPowerLawKernel* sum_spec() const { return std::get_if<SumPowerLawKernel>(&v_); }
    const MLKernel* ml_spec() const { return std::get_if<MLKernel>(&v_); }

    std::string to_string() const;  // kernel mini-language spelling

private:
    explicit KernelSpec(Variant v) : v_(std::move(v)) {}
    Variant v_;
};

bool same_kernel(const KernelSpec& a, const KernelSpec& b, double tol = 1e-12);

/// Materialize a kernel as a function on (0, x_max]. The Mittag-Leffler
/// kernel expands into its power series truncated at working precision.
/// ExtendedH0 is distributional and throws.
SingularFunction resolve(const KernelSpec& spec, double x_max = 2.0);

/// When `spec` is a two-term unit-coefficient sum h_{1-beta+alpha} + h_{1-beta},
/// returns (alpha, beta).
std::optional<std::pair<double, double>> match_ml_sum_template(const KernelSpec& spec,
                                                               double tol = 1e-12);

/// Catalog lookup of the Sonine partner:
///   h_alpha <-> h_{1-alpha} for 0 < alpha < 1,
///   h_{1-beta+alpha} + h_{1-beta} <-> the Mittag-Leffler kernel,
///   h1 <-> h0.
KernelSpec associated_kernel(const KernelSpec& spec);

struct SoninePair {
    KernelSpec kappa;
    KernelSpec k;
    std::optional<double> verified_to;  // residual bound achieved by sonine_check
};

/// Pair a kernel with its catalog associate (unverified).
SoninePair make_sonine_pair(const KernelSpec& kappa);

/// Evaluates (kappa * k)(x) - 1 on a geometric grid in (0, x_max] and
/// records the max-norm residual into pair.verified_to.
ResidualReport sonine_check(SoninePair& pair, double x_max = 2.0, int n_points = 64,
                            int quad_order = 32);

} // namespace gfc

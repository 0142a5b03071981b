#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gfc/convops.hpp"
#include "gfc/kernels.hpp"
#include "gfc/report.hpp"
#include "gfc/taylor.hpp"

namespace gfc {

/// The eight fundamental-theorem identities.
enum class TheoremId {
    FT1_RL,    // D_(k) I_(kappa) f = f
    FT1_C,     // *D_(k) I_(kappa) f = f            (f = I_(k) phi)
    FT1_RL_N,  // D^{<n>} I^{<n>} f = f
    FT1_C_N,   // *D^{<n>} I^{<n>} f = f            (f = I^{<n>}_(k) phi)
    FT2_RL,    // I_(kappa) D_(k) f = f - (I_(k)f)(0) kappa
    FT2_RL_N,  // I^{<n>} D^{<n>} f = f - sum_j (I_(k) D^{<j>} f)(0) kappa^{<j+1>}
    FT2_C,     // I_(kappa) *D_(k) f = f - f(0)
    FT2_C_N,   // I^{<n>} *D^{<n>} f = f - f(0) - sum_j (*D^{<j>}f)(0) ({1}*kappa^{<j>})
};

std::string to_string(TheoremId id);
std::optional<TheoremId> theorem_from_string(std::string_view name);
const std::vector<TheoremId>& all_theorems();

struct VerifyOptions {
    ConvOptions conv = {};
    TaylorOptions taylor = {};
};

/// Evaluates both sides of the identity on the grid. Tolerance judgments are
/// the caller's; this only reports. Undecidable admissibility preconditions
/// surface as warnings on the report.
ResidualReport verify(TheoremId theorem, const SoninePair& pair, const SingularFunction& f, int n,
                      const std::vector<double>& grid, const VerifyOptions& opts = {});

/// Default verification grid: excludes x below 0.05 where residuals reflect
/// interpolant edge error rather than the identities.
std::vector<double> default_grid(double x_max = 2.0, int m = 40);

struct BatteryResult {
    std::string name;
    double residual = 0.0;
    double tol = 0.0;
    bool pass = false;
};

/// The shipping acceptance battery: every identity over the catalog pairs
/// and the standard function set (n = 1..3), plus seeded random power-kernel
/// convolution spot checks.
std::vector<BatteryResult> run_battery(double tol = 1e-5, unsigned seed = 12345,
                                       const VerifyOptions& opts = {});

} // namespace gfc

#pragma once

#include <stdexcept>
#include <string>

namespace gfc {

/// Base class for all library errors. `code()` is a stable, module-qualified
/// identifier meant for CLI output and tests; `what()` is the human message.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

// specfun
struct PoleError : Error {
    explicit PoleError(const std::string& w) : Error("specfun.pole", w) {}
};
struct NotConverged : Error {
    explicit NotConverged(const std::string& w) : Error("specfun.not_converged", w) {}
};
struct ArityMismatch : Error {
    explicit ArityMismatch(const std::string& w) : Error("specfun.arity_mismatch", w) {}
};

// kernels
struct DistributionalKernel : Error {
    explicit DistributionalKernel(const std::string& w) : Error("kernels.distributional", w) {}
};
struct NoKnownAssociate : Error {
    explicit NoKnownAssociate(const std::string& w) : Error("kernels.no_known_associate", w) {}
};

// convops
struct EigenFailure : Error {
    explicit EigenFailure(const std::string& w) : Error("convops.eigen_failure", w) {}
};
struct QuadratureNotConverged : Error {
    explicit QuadratureNotConverged(const std::string& w) : Error("convops.quadrature_not_converged", w) {}
};
struct CaputoRequiresContinuity : Error {
    explicit CaputoRequiresContinuity(const std::string& w) : Error("convops.caputo_requires_continuity", w) {}
};
struct DifferentiationUnstable : Error {
    explicit DifferentiationUnstable(const std::string& w) : Error("convops.differentiation_unstable", w) {}
};
struct NotContinuousAtZero : Error {
    explicit NotContinuousAtZero(const std::string& w) : Error("convops.not_continuous_at_zero", w) {}
};
struct OutsideFunctionSpace : Error {
    explicit OutsideFunctionSpace(const std::string& w) : Error("convops.outside_function_space", w) {}
};

// series
struct SeriesDiverged : Error {
    explicit SeriesDiverged(const std::string& w) : Error("series.diverged", w) {}
};
struct NoOracle : Error {
    explicit NoOracle(const std::string& w) : Error("series.no_oracle", w) {}
};

// taylor
struct ExtrapolationUnstable : Error {
    explicit ExtrapolationUnstable(const std::string& w) : Error("taylor.extrapolation_unstable", w) {}
};
struct UnverifiedPair : Error {
    explicit UnverifiedPair(const std::string& w) : Error("taylor.unverified_pair", w) {}
};

// cli / parsing
struct RangeError : Error {
    explicit RangeError(const std::string& w) : Error("cli.range", w) {}
};
class ParseError : public Error {
public:
    ParseError(const std::string& w, std::size_t position)
        : Error("cli.parse", w + " (at position " + std::to_string(position) + ")"),
          position_(position) {}
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

} // namespace gfc

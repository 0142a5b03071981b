#include "gfc/kernels.hpp"

#include <cmath>
#include <sstream>

#include "gfc/convops.hpp"
#include "gfc/specfun.hpp"

namespace gfc {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(15);
    os << v;
    return os.str();
}

} // namespace

KernelSpec KernelSpec::power_law(double beta) {
    if (!(beta > 0.0)) throw RangeError("power-law kernel requires beta > 0");
    return KernelSpec(Variant(PowerLawKernel{beta}));
}

KernelSpec KernelSpec::sum_power_law(std::vector<SumTerm> terms) {
    if (terms.empty()) throw RangeError("sum kernel requires at least one term");
    for (const auto& t : terms) {
        if (!(t.beta > 0.0)) throw RangeError("sum kernel term requires beta > 0");
    }
    return KernelSpec(Variant(SumPowerLawKernel{std::move(terms)}));
}

KernelSpec KernelSpec::ml(double alpha, double beta) {
    if (!(0.0 < alpha && alpha < beta && beta < 1.0)) {
        throw RangeError("ml kernel requires 0 < alpha < beta < 1, got alpha=" + fmt(alpha) +
                         ", beta=" + fmt(beta));
    }
    return KernelSpec(Variant(MLKernel{alpha, beta}));
}

std::string KernelSpec::to_string() const {
    if (is_h0()) return "h0";
    if (is_h1()) return "h1";
    if (const auto* p = power_law_spec()) return "h:" + fmt(p->beta);
    if (const auto* m = ml_spec()) return "mlk:" + fmt(m->alpha) + "," + fmt(m->beta);
    const auto* s = sum_spec();
    std::string out = "sum:";
    for (std::size_t i = 0; i < s->terms.size(); ++i) {
        if (i) out += "+";
        out += fmt(s->terms[i].coeff) + "*h:" + fmt(s->terms[i].beta);
    }
    return out;
}

bool same_kernel(const KernelSpec& a, const KernelSpec& b, double tol) {
    if (a.is_h0() || b.is_h0()) return a.is_h0() && b.is_h0();
    if (a.is_h1() || b.is_h1()) return a.is_h1() && b.is_h1();
    if (a.is_power_law() || b.is_power_law()) {
        const auto* pa = a.power_law_spec();
        const auto* pb = b.power_law_spec();
        return pa && pb && std::fabs(pa->beta - pb->beta) <= tol;
    }
    if (a.ml_spec() || b.ml_spec()) {
        const auto* ma = a.ml_spec();
        const auto* mb = b.ml_spec();
        return ma && mb && std::fabs(ma->alpha - mb->alpha) <= tol &&
               std::fabs(ma->beta - mb->beta) <= tol;
    }
    const auto* sa = a.sum_spec();
    const auto* sb = b.sum_spec();
    if (!sa || !sb || sa->terms.size() != sb->terms.size()) return false;
    for (std::size_t i = 0; i < sa->terms.size(); ++i) {
        if (std::fabs(sa->terms[i].coeff - sb->terms[i].coeff) > tol) return false;
        if (std::fabs(sa->terms[i].beta - sb->terms[i].beta) > tol) return false;
    }
    return true;
}

SingularFunction resolve(const KernelSpec& spec, double x_max) {
    if (spec.is_h0()) {
        throw DistributionalKernel("h0 acts as the convolution unit and has no pointwise values");
    }
    if (spec.is_h1()) {
        return SingularFunction::power_term(1.0, 1.0, x_max);
    }
    if (const auto* p = spec.power_law_spec()) {
        return SingularFunction::power_term(1.0, p->beta, x_max);
    }
    if (const auto* s = spec.sum_spec()) {
        std::vector<std::pair<double, double>> terms;
        terms.reserve(s->terms.size());
        for (const auto& t : s->terms) terms.emplace_back(t.coeff, t.beta);
        return SingularFunction::power_sum(terms, x_max);
    }
    const auto* m = spec.ml_spec();
    // k(x) = sum_j (-1)^j h_{alpha j + beta}(x), truncated once the trailing
    // terms drop below working precision on (0, x_max].
    std::vector<std::pair<double, double>> terms;
    double scale = std::pow(x_max, m->beta - 1.0) * specfun::rgamma(m->beta);
    scale = std::max(scale, 1.0);
    double sign = 1.0;
    for (int j = 0; j < 400; ++j) {
        double s = m->alpha * j + m->beta;
        terms.emplace_back(sign, s);
        double mag = std::pow(x_max, s - 1.0) * specfun::rgamma(s);
        if (s > 1.0 && mag < 1e-18 * scale) break;
        sign = -sign;
    }
    return SingularFunction::power_sum(terms, x_max);
}

std::optional<std::pair<double, double>> match_ml_sum_template(const KernelSpec& spec, double tol) {
    const auto* s = spec.sum_spec();
    if (!s || s->terms.size() != 2) return std::nullopt;
    if (std::fabs(s->terms[0].coeff - 1.0) > tol || std::fabs(s->terms[1].coeff - 1.0) > tol) {
        return std::nullopt;
    }
    double e1 = std::max(s->terms[0].beta, s->terms[1].beta);
    double e2 = std::min(s->terms[0].beta, s->terms[1].beta);
    double alpha = e1 - e2;
    double beta = 1.0 - e2;
    if (!(0.0 < alpha && alpha < beta && beta < 1.0)) return std::nullopt;
    return std::make_pair(alpha, beta);
}

KernelSpec associated_kernel(const KernelSpec& spec) {
    if (spec.is_h0()) return KernelSpec::h1();
    if (spec.is_h1()) return KernelSpec::h0();
    if (const auto* p = spec.power_law_spec()) {
        if (p->beta > 0.0 && p->beta < 1.0) return KernelSpec::power_law(1.0 - p->beta);
        throw NoKnownAssociate("h_beta has a catalog associate only for 0 < beta < 1");
    }
    if (const auto* m = spec.ml_spec()) {
        return KernelSpec::sum_power_law(
            {{1.0, 1.0 - m->beta + m->alpha}, {1.0, 1.0 - m->beta}});
    }
    if (auto ab = match_ml_sum_template(spec)) {
        return KernelSpec::ml(ab->first, ab->second);
    }
    throw NoKnownAssociate("no catalog associate for kernel " + spec.to_string());
}

SoninePair make_sonine_pair(const KernelSpec& kappa) {
    return SoninePair{kappa, associated_kernel(kappa), std::nullopt};
}

ResidualReport sonine_check(SoninePair& pair, double x_max, int n_points, int quad_order) {
    if (n_points < 1) throw RangeError("sonine_check requires n_points >= 1");
    ResidualReport report;
    report.label = "sonine";
    report.config = pair.kappa.to_string() + " * " + pair.k.to_string();

    // The extended pair convolves to {1} by definition of the unit kernel.
    const bool extended = pair.kappa.is_h0() || pair.k.is_h0();
    SingularFunction conv = SingularFunction::zero(x_max);
    if (extended) {
        const KernelSpec& other = pair.kappa.is_h0() ? pair.k : pair.kappa;
        conv = resolve(other, x_max);
    } else {
        ConvOptions opts;
        opts.quad_order = quad_order;
        conv = convolve(resolve(pair.kappa, x_max), resolve(pair.k, x_max), opts);
    }

    // geometric grid over three decades up to x_max
    const double lo = x_max * 1e-3;
    for (int i = 0; i < n_points; ++i) {
        double t = n_points == 1 ? 1.0 : static_cast<double>(i) / (n_points - 1);
        double x = lo * std::pow(x_max / lo, t);
        report.grid.push_back(x);
        report.lhs.push_back(conv(x));
        report.rhs.push_back(1.0);
    }
    pair.verified_to = report.residual_max();
    return report;
}

} // namespace gfc

#include "gfc/singular_function.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "gfc/specfun.hpp"

namespace gfc {

namespace {

constexpr double kOrderTol = 1e-9;   // component orders drift by float sums only
constexpr double kMergeTol = 1e-12;  // exact-template matching tolerance
constexpr double kDropRel = 1e-17;

double h_value(double order, double x) {
    double rg = specfun::rgamma(order);
    if (rg == 0.0) return 0.0;
    return std::pow(x, order - 1.0) * rg;
}

} // namespace

double Component::core(double x) const {
    switch (kind) {
        case Core::Unit: return 1.0;
        case Core::Analytic: return family ? family(family_k, x) : fn(x);
        case Core::Interp: return (*interp)(x);
    }
    return 0.0;
}

double Component::core_sup_estimate() const {
    switch (kind) {
        case Core::Unit: return 1.0;
        case Core::Analytic: return 1.0;  // probed by the owner where it matters
        case Core::Interp: return interp->max_abs();
    }
    return 0.0;
}

double Component::value(double x) const {
    double h = h_value(order, x);
    if (h == 0.0) return 0.0;
    return coeff * h * core(x);
}

SingularFunction SingularFunction::zero(double x_max) { return SingularFunction(x_max); }

SingularFunction SingularFunction::power_term(double coeff, double beta, double x_max) {
    if (!(beta > 0.0)) throw RangeError("power term requires beta > 0");
    SingularFunction f(x_max);
    if (coeff != 0.0) {
        Component c;
        c.order = beta;
        c.coeff = coeff;
        f.add_component(std::move(c));
    }
    return f;
}

SingularFunction SingularFunction::power_sum(
    const std::vector<std::pair<double, double>>& coeff_beta, double x_max) {
    SingularFunction f(x_max);
    for (const auto& [coeff, beta] : coeff_beta) {
        if (!(beta > 0.0)) throw RangeError("power term requires beta > 0");
        if (coeff == 0.0) continue;
        Component c;
        c.order = beta;
        c.coeff = coeff;
        f.add_component(std::move(c));
    }
    f.finalize();
    return f;
}

SingularFunction SingularFunction::analytic(double order, std::function<double(double)> core,
                                            std::function<double(double)> dcore, double x_max) {
    if (!(order > 0.0)) throw RangeError("analytic component requires order > 0");
    SingularFunction f(x_max);
    Component c;
    c.order = order;
    c.coeff = 1.0;
    c.kind = Component::Core::Analytic;
    c.fn = std::move(core);
    c.dfn = std::move(dcore);
    f.add_component(std::move(c));
    return f;
}

SingularFunction SingularFunction::analytic_family(double order,
                                                   std::function<double(int, double)> family,
                                                   double x_max) {
    if (!(order > 0.0)) throw RangeError("analytic component requires order > 0");
    SingularFunction f(x_max);
    Component c;
    c.order = order;
    c.coeff = 1.0;
    c.kind = Component::Core::Analytic;
    c.family = std::move(family);
    f.add_component(std::move(c));
    return f;
}

double SingularFunction::exponent() const {
    return std::min(min_order(), 1.0);
}

double SingularFunction::min_order() const {
    if (comps_.empty()) return 1.0;
    double m = comps_.front().order;
    for (const auto& c : comps_) m = std::min(m, c.order);
    return m;
}

double SingularFunction::operator()(double x) const {
    specfun::KahanSum sum;
    for (const auto& c : comps_) sum.add(c.value(x));
    return sum.value();
}

double SingularFunction::regular(double x) const {
    double p = exponent();
    specfun::KahanSum sum;
    for (const auto& c : comps_) {
        double rg = specfun::rgamma(c.order);
        if (rg == 0.0) continue;
        // x^{1-p} * x^{order-1} with the exponents combined before pow:
        sum.add(c.coeff * std::pow(x, c.order - p) * rg * c.core(x));
    }
    return sum.value();
}

bool SingularFunction::in_c_minus_one() const {
    for (const auto& c : comps_) {
        if (c.order <= kOrderTol && c.coeff != 0.0 && specfun::rgamma(c.order) != 0.0) return false;
    }
    return true;
}

bool SingularFunction::continuous_at_zero() const {
    for (const auto& c : comps_) {
        if (c.order < 1.0 - kOrderTol && c.coeff != 0.0 && specfun::rgamma(c.order) != 0.0) {
            return false;
        }
    }
    return true;
}

double SingularFunction::value_at_zero() const {
    if (!continuous_at_zero()) {
        throw NotContinuousAtZero("representation has exponent " + std::to_string(min_order()) +
                                  " < 1; no limit at 0");
    }
    specfun::KahanSum sum;
    for (const auto& c : comps_) {
        if (std::fabs(c.order - 1.0) <= kOrderTol) {
            sum.add(c.coeff * specfun::rgamma(c.order) * c.core(0.0));
        }
    }
    return sum.value();
}

SingularFunction SingularFunction::derivative(const DiffOptions& opts) const {
    SingularFunction out(x_max_);
    out.merge_quality(quality_);
    for (const auto& c : comps_) {
        // d/dx [ coeff h_s(x) g(x) ] = coeff h_{s-1}(x) g(x) + coeff h_s(x) g'(x);
        // 1/Gamma annihilates the first term at the poles s-1 = 0, -1, ...
        Component shifted = c;
        shifted.order = c.order - 1.0;
        if (specfun::rgamma(shifted.order) != 0.0) {
            out.add_component(std::move(shifted));
        }
        switch (c.kind) {
            case Component::Core::Unit:
                break;
            case Component::Core::Analytic: {
                Component dc;
                dc.order = c.order;
                dc.coeff = c.coeff;
                if (c.family) {
                    dc.kind = Component::Core::Analytic;
                    dc.family = c.family;
                    dc.family_k = c.family_k + 1;
                } else if (c.dfn) {
                    dc.kind = Component::Core::Analytic;
                    dc.fn = c.dfn;
                } else {
                    double achieved = 0.0;
                    Chebyshev fit(c.fn, opts.degree, x_max_);
                    auto der = fit.derivative_checked(opts.check ? opts.check_tol : 1.0, &achieved);
                    out.merge_quality(achieved);
                    dc.kind = Component::Core::Interp;
                    dc.interp = std::make_shared<const Chebyshev>(std::move(der));
                }
                out.add_component(std::move(dc));
                break;
            }
            case Component::Core::Interp: {
                Component dc;
                dc.order = c.order;
                dc.coeff = c.coeff;
                dc.kind = Component::Core::Interp;
                double achieved = 0.0;
                auto der = c.interp->has_source()
                               ? c.interp->derivative_checked(opts.check ? opts.check_tol : 1.0,
                                                              &achieved)
                               : c.interp->derivative();
                out.merge_quality(achieved);
                dc.interp = std::make_shared<const Chebyshev>(std::move(der));
                out.add_component(std::move(dc));
                break;
            }
        }
    }
    out.finalize(opts.degree);
    return out;
}

void SingularFunction::merge_quality(double q) { quality_ = std::max(quality_, q); }

double SingularFunction::scale_estimate() const {
    double scale = 0.0;
    for (const auto& c : comps_) {
        double rg = specfun::rgamma(c.order);
        double at_cap = std::fabs(c.coeff) * std::pow(x_max_, c.order - 1.0) * std::fabs(rg) *
                        c.core_sup_estimate();
        scale = std::max(scale, at_cap);
    }
    return scale;
}

void SingularFunction::finalize(int degree_hint) {
    // 1. snap float-drifted orders onto integers, then drop exact zeros
    //    (components annihilated by the 1/Gamma poles). Without the snap a
    //    sum like 0.3 + 0.7 lands one ulp under 1 and its derivative turns
    //    into a negative-order term with an O(1) coefficient.
    std::vector<Component> kept;
    kept.reserve(comps_.size());
    for (auto& c : comps_) {
        double rounded = std::round(c.order);
        if (std::fabs(c.order - rounded) <= 1e-12 * std::max(1.0, std::fabs(c.order))) {
            c.order = rounded;
        }
        if (c.coeff == 0.0) continue;
        if (specfun::rgamma(c.order) == 0.0) continue;  // h_order vanishes identically
        kept.push_back(std::move(c));
    }
    comps_ = std::move(kept);

    // 2. merge equal-order power terms
    std::sort(comps_.begin(), comps_.end(), [](const Component& a, const Component& b) {
        if (a.unit() != b.unit()) return a.unit() && !b.unit();
        return a.order < b.order;
    });
    std::vector<Component> merged;
    for (auto& c : comps_) {
        if (!merged.empty() && merged.back().unit() && c.unit() &&
            std::fabs(merged.back().order - c.order) <= kMergeTol) {
            merged.back().coeff += c.coeff;
        } else {
            merged.push_back(std::move(c));
        }
    }
    comps_ = std::move(merged);

    // 3. drop components that cannot contribute at the working precision
    double scale = scale_estimate();
    if (scale > 0.0) {
        std::vector<Component> live;
        for (auto& c : comps_) {
            if (c.order >= 1.0) {
                double sup = std::fabs(c.coeff) * std::pow(x_max_, c.order - 1.0) *
                             std::fabs(specfun::rgamma(c.order)) * c.core_sup_estimate();
                if (sup < kDropRel * scale) continue;
            }
            live.push_back(std::move(c));
        }
        comps_ = std::move(live);
    }

    // 3b. cancellation residue: lattice coefficients that vanish in exact
    //     arithmetic leave ulp-sized singular ghosts behind; they are
    //     value-negligible but would misclassify continuity at 0.
    {
        const double x_ref = 0.5 * x_max_;
        double scale_ref = 0.0;
        for (const auto& c : comps_) {
            scale_ref = std::max(scale_ref, std::fabs(c.coeff) * std::pow(x_ref, c.order - 1.0) *
                                                std::fabs(specfun::rgamma(c.order)) *
                                                c.core_sup_estimate());
        }
        if (scale_ref > 0.0) {
            std::vector<Component> live;
            for (auto& c : comps_) {
                if (c.order < 1.0 - 1e-9) {
                    double mag = std::fabs(c.coeff) * std::pow(x_ref, c.order - 1.0) *
                                 std::fabs(specfun::rgamma(c.order)) * c.core_sup_estimate();
                    if (mag < 1e-13 * scale_ref) continue;
                }
                live.push_back(std::move(c));
            }
            comps_ = std::move(live);
        }
    }

    // 4. collapse families of non-unit components whose orders differ by
    //    integers into a single interpolated component
    std::vector<Component> units;
    std::map<long, std::vector<Component>> families;  // key: round(order mod 1 / tol)
    for (auto& c : comps_) {
        if (c.unit()) {
            units.push_back(std::move(c));
        } else if (c.order <= kOrderTol || c.family) {
            units.push_back(std::move(c));  // raw or derivative-chain: left untouched
        } else {
            double frac = c.order - std::floor(c.order);
            if (frac > 1.0 - 16.0 * kOrderTol) frac = 0.0;  // drifted just below an integer
            long key = std::lround(frac / (16.0 * kOrderTol));
            families[key].push_back(std::move(c));
        }
    }
    comps_ = std::move(units);
    for (auto& [key, family] : families) {
        if (family.size() == 1) {
            comps_.push_back(std::move(family.front()));
            continue;
        }
        double s0 = family.front().order;
        int max_deg = degree_hint;
        for (const auto& c : family) {
            s0 = std::min(s0, c.order);
            if (c.kind == Component::Core::Interp) max_deg = std::max(max_deg, c.interp->degree());
        }
        int max_off = 0;
        bool collapsible = true;
        for (const auto& c : family) {
            double off = c.order - s0;
            long k = std::lround(off);
            if (std::fabs(off - k) > 1e-6) {
                collapsible = false;
                break;
            }
            max_off = std::max<int>(max_off, static_cast<int>(k));
        }
        if (!collapsible) {
            for (auto& c : family) comps_.push_back(std::move(c));
            continue;
        }
        int degree = std::min(96, max_deg + max_off);
        double lg0 = specfun::log_gamma(s0);
        auto members = std::make_shared<std::vector<Component>>(std::move(family));
        auto sampler = [members, s0, lg0](double x) {
            double s = 0.0;
            for (const auto& c : *members) {
                double ratio = std::exp(lg0 - specfun::log_gamma(c.order));
                s += c.coeff * std::pow(x, c.order - s0) * ratio * c.core(x);
            }
            return s;
        };
        Component collapsed;
        collapsed.order = s0;
        collapsed.coeff = 1.0;
        collapsed.kind = Component::Core::Interp;
        collapsed.interp = std::make_shared<const Chebyshev>(Chebyshev(sampler, degree, x_max_));
        // resampling validation at off-node probes
        double worst = 0.0, probe_scale = 1.0;
        for (int i = 1; i <= 16; ++i) {
            double x = x_max_ * i / 16.5;
            double direct = sampler(x);
            double fitted = (*collapsed.interp)(x);
            worst = std::max(worst, std::fabs(direct - fitted));
            probe_scale = std::max(probe_scale, std::fabs(direct));
        }
        merge_quality(worst / probe_scale);
        comps_.push_back(std::move(collapsed));
    }
}

SingularFunction operator+(const SingularFunction& a, const SingularFunction& b) {
    if (std::fabs(a.x_max() - b.x_max()) > 1e-12) {
        throw RangeError("adding functions with different domain caps");
    }
    SingularFunction out(a.x_max());
    out.merge_quality(a.quality());
    out.merge_quality(b.quality());
    for (const auto& c : a.components()) out.add_component(c);
    for (const auto& c : b.components()) out.add_component(c);
    out.finalize();
    return out;
}

SingularFunction operator*(double c, const SingularFunction& f) {
    SingularFunction out(f.x_max());
    out.merge_quality(f.quality());
    if (c != 0.0) {
        for (auto comp : f.components()) {
            comp.coeff *= c;
            out.add_component(std::move(comp));
        }
    }
    return out;
}

} // namespace gfc

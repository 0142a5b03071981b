#include "gfc/theorems.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <random>

#include "gfc/series.hpp"
#include "gfc/specfun.hpp"

namespace gfc {

namespace {

SingularFunction seq_gfd(const KernelSpec& k, OperatorVariant v, int n, const SingularFunction& f,
                         const ConvOptions& opts) {
    OperatorRequest req;
    req.kernel = k;
    req.fold_n = n;
    req.variant = v;
    req.form = OperatorForm::Sequential;
    return gfd_function(req, f, opts);
}

// (I_(k) g)(0+) through the taylor module's limit machinery.
double correction_constant(const KernelSpec& k, const SingularFunction& g,
                           const VerifyOptions& opts) {
    SingularFunction Ik = gfi_function(k, 1, g, opts.conv);
    return limit_at_zero_of(Ik, opts.taylor.x0, opts.taylor.levels).value;
}

SingularFunction one_conv_power(const KernelSpec& kappa, int j, double x_max,
                                const ConvOptions& opts) {
    SingularFunction one = SingularFunction::power_term(1.0, 1.0, x_max);
    if (j == 0 || kappa.is_h0()) return one;
    return convolve(one, conv_power(kappa, j, x_max, opts), opts);
}

} // namespace

std::string to_string(TheoremId id) {
    switch (id) {
        case TheoremId::FT1_RL: return "FT1_RL";
        case TheoremId::FT1_C: return "FT1_C";
        case TheoremId::FT1_RL_N: return "FT1_RL_N";
        case TheoremId::FT1_C_N: return "FT1_C_N";
        case TheoremId::FT2_RL: return "FT2_RL";
        case TheoremId::FT2_RL_N: return "FT2_RL_N";
        case TheoremId::FT2_C: return "FT2_C";
        case TheoremId::FT2_C_N: return "FT2_C_N";
    }
    return "?";
}

std::optional<TheoremId> theorem_from_string(std::string_view name) {
    std::string up(name);
    for (auto& c : up) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    for (TheoremId id : all_theorems()) {
        if (to_string(id) == up) return id;
    }
    return std::nullopt;
}

const std::vector<TheoremId>& all_theorems() {
    static const std::vector<TheoremId> ids = {
        TheoremId::FT1_RL,   TheoremId::FT1_C,   TheoremId::FT1_RL_N, TheoremId::FT1_C_N,
        TheoremId::FT2_RL,   TheoremId::FT2_RL_N, TheoremId::FT2_C,   TheoremId::FT2_C_N,
    };
    return ids;
}

std::vector<double> default_grid(double x_max, int m) { return linspace(0.05, x_max, m); }

ResidualReport verify(TheoremId theorem, const SoninePair& pair, const SingularFunction& f, int n,
                      const std::vector<double>& grid, const VerifyOptions& opts) {
    ResidualReport report;
    report.label = to_string(theorem);
    report.config = "pair=(" + pair.kappa.to_string() + ", " + pair.k.to_string() + ") n=" +
                    std::to_string(n);
    const double X = f.x_max();
    const bool n_fold = theorem == TheoremId::FT1_RL_N || theorem == TheoremId::FT1_C_N ||
                        theorem == TheoremId::FT2_RL_N || theorem == TheoremId::FT2_C_N;
    const int folds = n_fold ? n : 1;
    if (folds < 1) throw RangeError("verify requires n >= 1");

    SingularFunction lhs = SingularFunction::zero(X);
    std::function<double(double)> rhs;

    switch (theorem) {
        case TheoremId::FT1_RL:
        case TheoremId::FT1_RL_N: {
            lhs = seq_gfd(pair.k, OperatorVariant::GFD_RL, folds,
                          gfi_function(pair.kappa, folds, f, opts.conv), opts.conv);
            rhs = [&f](double x) { return f(x); };
            break;
        }
        case TheoremId::FT1_C:
        case TheoremId::FT1_C_N: {
            SingularFunction If = gfi_function(pair.kappa, folds, f, opts.conv);
            if (!If.continuous_at_zero()) {
                report.warnings.push_back(
                    "admissibility: I_(kappa) f is not continuous at 0; f is outside "
                    "C^n_{-1,(k)} and the Caputo identity need not hold");
            }
            lhs = seq_gfd(pair.k, OperatorVariant::GFD_Caputo, folds, If, opts.conv);
            rhs = [&f](double x) { return f(x); };
            break;
        }
        case TheoremId::FT2_RL: {
            SingularFunction df = seq_gfd(pair.k, OperatorVariant::GFD_RL, 1, f, opts.conv);
            if (!df.in_c_minus_one()) {
                report.warnings.push_back("admissibility: D_(k) f leaves C_{-1}");
            }
            lhs = gfi_function(pair.kappa, 1, df, opts.conv);
            double c0 = correction_constant(pair.k, f, opts);
            SingularFunction kap = pair.kappa.is_h0()
                                       ? SingularFunction::zero(X)
                                       : resolve(pair.kappa, X);
            rhs = [&f, c0, kap](double x) { return f(x) - c0 * kap(x); };
            break;
        }
        case TheoremId::FT2_RL_N: {
            std::vector<double> cs;
            std::vector<SingularFunction> basis;
            SingularFunction g = f;
            ConvOptions fold_opts = opts.conv;
            for (int j = 0; j < folds; ++j) {
                cs.push_back(correction_constant(pair.k, g, opts));
                basis.push_back(conv_power(pair.kappa, j + 1, X, opts.conv));
                if (j + 1 < folds) {
                    g = seq_gfd(pair.k, OperatorVariant::GFD_RL, 1, g, fold_opts);
                    fold_opts.degree = std::min(96, fold_opts.degree + 16);
                }
            }
            lhs = gfi_function(pair.kappa, folds,
                               seq_gfd(pair.k, OperatorVariant::GFD_RL, folds, f, opts.conv),
                               opts.conv);
            rhs = [&f, cs, basis](double x) {
                double s = f(x);
                for (std::size_t j = 0; j < cs.size(); ++j) s -= cs[j] * basis[j](x);
                return s;
            };
            break;
        }
        case TheoremId::FT2_C: {
            lhs = gfi_function(pair.kappa, 1,
                               seq_gfd(pair.k, OperatorVariant::GFD_Caputo, 1, f, opts.conv),
                               opts.conv);
            double f0 = f.value_at_zero();
            rhs = [&f, f0](double x) { return f(x) - f0; };
            break;
        }
        case TheoremId::FT2_C_N: {
            double f0 = f.value_at_zero();
            std::vector<double> cs;
            std::vector<SingularFunction> basis;
            SingularFunction g = f;
            ConvOptions fold_opts = opts.conv;
            for (int j = 1; j < folds; ++j) {
                g = seq_gfd(pair.k, OperatorVariant::GFD_Caputo, 1, g, fold_opts);
                fold_opts.degree = std::min(96, fold_opts.degree + 16);
                cs.push_back(g.value_at_zero());
                basis.push_back(one_conv_power(pair.kappa, j, X, opts.conv));
            }
            lhs = gfi_function(pair.kappa, folds,
                               seq_gfd(pair.k, OperatorVariant::GFD_Caputo, folds, f, opts.conv),
                               opts.conv);
            rhs = [&f, f0, cs, basis](double x) {
                double s = f(x) - f0;
                for (std::size_t j = 0; j < cs.size(); ++j) s -= cs[j] * basis[j](x);
                return s;
            };
            break;
        }
    }

    for (double x : grid) {
        report.grid.push_back(x);
        report.lhs.push_back(lhs(x));
        report.rhs.push_back(rhs(x));
    }
    return report;
}

std::vector<BatteryResult> run_battery(double tol, unsigned seed, const VerifyOptions& opts) {
    const double X = 2.0;
    std::vector<BatteryResult> results;
    auto grid = default_grid(X, 40);

    // Catalog pairs: A = (h_.5, h_.5), B = (h_.3, h_.7), M = the two-term sum
    // kernel with its Mittag-Leffler associate, E = the extended (h1, h0).
    SoninePair A = make_sonine_pair(KernelSpec::power_law(0.5));
    SoninePair B = make_sonine_pair(KernelSpec::power_law(0.3));
    SoninePair M = make_sonine_pair(KernelSpec::sum_power_law({{1.0, 0.625}, {1.0, 0.375}}));
    SoninePair E = make_sonine_pair(KernelSpec::h1());
    for (SoninePair* p : {&A, &B, &M, &E}) sonine_check(*p, X, 32, opts.conv.quad_order);

    std::map<std::string, SingularFunction> fns;
    fns.emplace("one", SingularFunction::power_term(1.0, 1.0, X));
    fns.emplace("h:0.7", SingularFunction::power_term(1.0, 0.7, X));
    fns.emplace("lin", SingularFunction::power_sum({{1.0, 1.0}, {0.5, 1.5}}, X));
    fns.emplace("poly", SingularFunction::power_sum({{1.0, 1.0}, {1.0, 2.0}, {1.0, 3.0}}, X));
    fns.emplace("exp", SingularFunction::analytic_family(
                           1.0, [](int, double x) { return std::exp(x); }, X));
    fns.emplace("geomA", geometric_function(A.kappa, 0.5, X, 1e-12, opts.conv));
    fns.emplace("geomB", geometric_function(B.kappa, 0.5, X, 1e-12, opts.conv));
    fns.emplace("geomM", geometric_function(M.kappa, 0.5, X, 1e-12, opts.conv));
    fns.emplace("h1*kapM", convolve(SingularFunction::power_term(1.0, 1.0, X),
                                    resolve(M.kappa, X), opts.conv));

    struct Row {
        TheoremId id;
        const SoninePair* pair;
        std::string pair_name;
        std::string f;
        int n;
    };
    std::vector<Row> rows;
    auto add = [&](TheoremId id, const SoninePair& p, const std::string& pn,
                   std::initializer_list<const char*> names, std::initializer_list<int> ns) {
        for (const char* f : names)
            for (int n : ns) rows.push_back({id, &p, pn, f, n});
    };

    // First fundamental theorems hold on all of C_{-1}; the Caputo variants
    // get admissible inputs built below as f = I^{<n>}_(k) phi.
    add(TheoremId::FT1_RL, A, "(h:0.5,h:0.5)", {"one", "h:0.7", "lin", "geomA", "exp"}, {1});
    add(TheoremId::FT1_RL, B, "(h:0.3,h:0.7)", {"one", "h:0.7", "lin", "geomB", "exp"}, {1});
    add(TheoremId::FT1_RL, M, "(sum,mlk)", {"one", "h:0.7", "lin", "geomM"}, {1});
    add(TheoremId::FT1_RL, E, "(h1,h0)", {"one", "h:0.7", "lin", "exp"}, {1});
    add(TheoremId::FT1_RL_N, A, "(h:0.5,h:0.5)", {"one", "h:0.7", "geomA", "exp"}, {2, 3});
    add(TheoremId::FT1_RL_N, B, "(h:0.3,h:0.7)", {"one", "h:0.7", "geomB", "exp"}, {2, 3});
    add(TheoremId::FT1_RL_N, M, "(sum,mlk)", {"one", "h:0.7", "geomM"}, {2, 3});
    add(TheoremId::FT1_RL_N, E, "(h1,h0)", {"one", "lin", "exp"}, {2, 3});
    add(TheoremId::FT1_C, A, "(h:0.5,h:0.5)", {"one", "h:0.7"}, {1});
    add(TheoremId::FT1_C, B, "(h:0.3,h:0.7)", {"one", "h:0.7"}, {1});
    add(TheoremId::FT1_C, M, "(sum,mlk)", {"one", "h:0.7"}, {1});
    add(TheoremId::FT1_C, E, "(h1,h0)", {"one", "exp"}, {1});
    add(TheoremId::FT1_C_N, A, "(h:0.5,h:0.5)", {"one", "h:0.7"}, {2, 3});
    add(TheoremId::FT1_C_N, B, "(h:0.3,h:0.7)", {"one", "h:0.7"}, {2, 3});
    add(TheoremId::FT1_C_N, M, "(sum,mlk)", {"one", "h:0.7"}, {2, 3});
    add(TheoremId::FT1_C_N, E, "(h1,h0)", {"one", "exp"}, {2, 3});

    // Second fundamental theorems: rows restricted to the admissible classes
    // (D_(k)^{<j>} f must stay in C_{-1} for RL, the Caputo folds need
    // continuity at 0; both depend on how the power fronts step down).
    add(TheoremId::FT2_RL, A, "(h:0.5,h:0.5)", {"one", "lin", "h:0.7", "geomA", "exp"}, {1});
    add(TheoremId::FT2_RL, B, "(h:0.3,h:0.7)", {"one", "lin", "h:0.7", "geomB", "exp"}, {1});
    add(TheoremId::FT2_RL, M, "(sum,mlk)", {"one", "lin", "h:0.7", "geomM"}, {1});
    add(TheoremId::FT2_RL, E, "(h1,h0)", {"one", "lin", "poly", "exp"}, {1});
    add(TheoremId::FT2_RL_N, A, "(h:0.5,h:0.5)", {"one", "lin", "geomA", "exp"}, {2, 3});
    add(TheoremId::FT2_RL_N, B, "(h:0.3,h:0.7)", {"one", "lin", "geomB", "exp"}, {2, 3});
    add(TheoremId::FT2_RL_N, B, "(h:0.3,h:0.7)", {"h:0.7"}, {2});
    add(TheoremId::FT2_RL_N, M, "(sum,mlk)", {"geomM", "h1*kapM"}, {2, 3});
    add(TheoremId::FT2_RL_N, E, "(h1,h0)", {"one", "poly", "exp"}, {2, 3});
    add(TheoremId::FT2_C, A, "(h:0.5,h:0.5)", {"one", "lin", "poly", "exp"}, {1});
    add(TheoremId::FT2_C, B, "(h:0.3,h:0.7)", {"one", "lin", "poly", "exp"}, {1});
    add(TheoremId::FT2_C, M, "(sum,mlk)", {"one", "lin", "poly"}, {1});
    add(TheoremId::FT2_C, E, "(h1,h0)", {"one", "lin", "poly", "exp"}, {1});
    add(TheoremId::FT2_C_N, A, "(h:0.5,h:0.5)", {"one", "lin", "poly", "exp"}, {2, 3});
    add(TheoremId::FT2_C_N, B, "(h:0.3,h:0.7)", {"one", "poly", "exp"}, {2, 3});
    add(TheoremId::FT2_C_N, B, "(h:0.3,h:0.7)", {"lin"}, {2});
    add(TheoremId::FT2_C_N, M, "(sum,mlk)", {"one", "poly"}, {2, 3});
    add(TheoremId::FT2_C_N, M, "(sum,mlk)", {"lin"}, {2});
    add(TheoremId::FT2_C_N, E, "(h1,h0)", {"one", "poly", "exp"}, {2, 3});

    for (const auto& row : rows) {
        const bool first_caputo = row.id == TheoremId::FT1_C || row.id == TheoremId::FT1_C_N;
        std::string name = to_string(row.id) + " " + row.pair_name + " f=" +
                           (first_caputo ? "I_(k)^" + std::to_string(row.n) + "[" + row.f + "]"
                                         : row.f) +
                           " n=" + std::to_string(row.n);
        try {
            SingularFunction f = fns.at(row.f);
            if (first_caputo) f = gfi_function(row.pair->k, row.n, f, opts.conv);
            auto rep = verify(row.id, *row.pair, f, row.n, grid, opts);
            results.push_back({name, rep.residual_max(), tol, rep.residual_max() <= tol});
        } catch (const Error& e) {
            results.push_back({name + " [" + e.code() + "]",
                               std::numeric_limits<double>::infinity(), tol, false});
        }
    }

    // Seeded convolution-algebra spot checks: (h_a * h_b)(x) = h_{a+b}(x).
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> ab(0.05, 0.95), xs(0.1, X);
    for (int i = 0; i < 10; ++i) {
        double a = ab(rng), b = ab(rng), x = xs(rng);
        auto conv = convolve(SingularFunction::power_term(1.0, a, X),
                             SingularFunction::power_term(1.0, b, X), opts.conv);
        double expect = std::pow(x, a + b - 1.0) * specfun::rgamma(a + b);
        char buf[96];
        std::snprintf(buf, sizeof(buf), "conv h:%.3f*h:%.3f @%.3f", a, b, x);
        results.push_back({buf, std::fabs(conv(x) - expect), 1e-12,
                           std::fabs(conv(x) - expect) <= 1e-12});
    }
    return results;
}

} // namespace gfc

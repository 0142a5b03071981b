// gfc: general fractional calculus with Sonine kernels.
//
// Subcommands: kernel eval|pair|check, op gfi|gfd, series geometric|eval,
// taylor coeffs|approx|series, verify [--battery].
// Exit codes: 0 success, 1 operational error, 2 tolerance failure in verify.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "gfc/convops.hpp"
#include "gfc/kernels.hpp"
#include "gfc/parse.hpp"
#include "gfc/series.hpp"
#include "gfc/taylor.hpp"
#include "gfc/theorems.hpp"

using namespace gfc;

namespace {

struct Globals {
    double xmax = 2.0;
    int quad_order = 32;
    int degree = 48;
    double tol = 1e-5;
    std::string out;
    unsigned seed = 12345;

    ConvOptions conv() const {
        ConvOptions o;
        o.quad_order = quad_order;
        o.degree = degree;
        return o;
    }
};

// Writes CSV (17 significant digits) to --out when given, otherwise an
// aligned table on stdout.
class Table {
public:
    Table(const Globals& g, std::vector<std::string> columns) : columns_(std::move(columns)) {
        if (!g.out.empty()) {
            file_.emplace(g.out);
            if (!*file_) throw RangeError("cannot open output file " + g.out);
        }
        if (file_) {
            for (std::size_t i = 0; i < columns_.size(); ++i) {
                *file_ << (i ? "," : "") << columns_[i];
            }
            *file_ << "\n";
        } else {
            for (std::size_t i = 0; i < columns_.size(); ++i) {
                std::printf("%s%-26s", i ? " " : "", columns_[i].c_str());
            }
            std::printf("\n");
        }
    }

    void row(const std::vector<double>& values) {
        char buf[64];
        if (file_) {
            for (std::size_t i = 0; i < values.size(); ++i) {
                std::snprintf(buf, sizeof(buf), "%.17g", values[i]);
                *file_ << (i ? "," : "") << buf;
            }
            *file_ << "\n";
        } else {
            for (std::size_t i = 0; i < values.size(); ++i) {
                std::snprintf(buf, sizeof(buf), "%.17g", values[i]);
                std::printf("%s%-26s", i ? " " : "", buf);
            }
            std::printf("\n");
        }
    }

private:
    std::vector<std::string> columns_;
    std::optional<std::ofstream> file_;
};

std::vector<double> points_from(const std::string& grid, double x, bool have_x) {
    if (!grid.empty()) return parse_grid(grid);
    if (have_x) return {x};
    throw RangeError("provide --x or --grid");
}

std::vector<double> parse_coeff_list(const std::string& text) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t next = text.find(',', pos);
        std::string tok = text.substr(pos, next == std::string::npos ? text.size() - pos
                                                                     : next - pos);
        try {
            out.push_back(std::stod(tok));
        } catch (const std::exception&) {
            throw ParseError("bad coefficient '" + tok + "'", pos);
        }
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    return out;
}

SoninePair checked_pair(const KernelSpec& kappa, const Globals& g) {
    auto pair = make_sonine_pair(kappa);
    sonine_check(pair, g.xmax, 32, g.quad_order);
    return pair;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"general fractional calculus with Sonine kernels"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--xmax", g.xmax, "domain cap X (default 2)");
    app.add_option("--quad-order", g.quad_order, "Gauss-Jacobi points (default 32)");
    app.add_option("--degree", g.degree, "Chebyshev degree for regular factors (default 48)");
    app.add_option("--tol", g.tol, "residual tolerance for verify (default 1e-5)");
    app.add_option("--out", g.out, "write CSV to this file instead of stdout");
    app.add_option("--seed", g.seed, "seed for the battery's randomized spot checks");

    std::string kernel_s, kappa_s, k_s, f_s, grid_s, variant_s = "rl", form_s = "seq";
    std::string theorem_s, coeffs_s;
    double x = 1.0, lambda = 1.0, z0 = 0.0, witness_m = 0.0;
    int n = 1, n_points = 64, nmax = 25;
    bool with_oracle = false, battery = false;

    // kernel eval | pair | check
    auto* kernel = app.add_subcommand("kernel", "kernel catalog operations");
    kernel->require_subcommand(1);
    auto* keval = kernel->add_subcommand("eval", "evaluate a kernel on points");
    keval->add_option("--kernel", kernel_s, "kernel spec")->required();
    keval->add_option("--x", x, "evaluation point");
    auto* keval_grid = keval->add_option("--grid", grid_s, "a:b:m grid");
    auto* kpair = kernel->add_subcommand("pair", "print the associated Sonine kernel");
    kpair->add_option("--kernel", kernel_s, "kernel spec")->required();
    auto* kcheck = kernel->add_subcommand("check", "verify the Sonine condition numerically");
    kcheck->add_option("--kappa", kappa_s, "first kernel")->required();
    kcheck->add_option("--k", k_s, "second kernel")->required();
    kcheck->add_option("--points", n_points, "grid points (default 64)");

    // op gfi | gfd
    auto* op = app.add_subcommand("op", "apply integral/derivative operators");
    op->require_subcommand(1);
    auto* gfi = op->add_subcommand("gfi", "n-fold general fractional integral");
    gfi->add_option("--kernel", kernel_s, "kernel spec")->required();
    gfi->add_option("--n", n, "fold count (default 1)");
    gfi->add_option("--f", f_s, "function spec")->required();
    gfi->add_option("--x", x, "evaluation point");
    auto* gfi_grid = gfi->add_option("--grid", grid_s, "a:b:m grid");
    auto* gfd = op->add_subcommand("gfd", "general fractional derivative");
    gfd->add_option("--kernel", kernel_s, "kernel spec")->required();
    gfd->add_option("--n", n, "fold count (default 1)");
    gfd->add_option("--variant", variant_s, "rl | caputo (default rl)");
    gfd->add_option("--form", form_s, "seq | alt (default seq)");
    gfd->add_option("--f", f_s, "function spec")->required();
    gfd->add_option("--x", x, "evaluation point");
    auto* gfd_grid = gfd->add_option("--grid", grid_s, "a:b:m grid");

    // series geometric | eval
    auto* series = app.add_subcommand("series", "convolution series");
    series->require_subcommand(1);
    auto* sgeom = series->add_subcommand("geometric", "l_{kappa,lambda}");
    sgeom->add_option("--kernel", kernel_s, "kernel spec")->required();
    sgeom->add_option("--lambda", lambda, "geometric ratio")->required();
    sgeom->add_option("--x", x, "evaluation point");
    auto* sgeom_grid = sgeom->add_option("--grid", grid_s, "a:b:m grid");
    sgeom->add_flag("--oracle", with_oracle, "attach the closed-form oracle");
    auto* seval = series->add_subcommand("eval", "explicit-coefficient series");
    seval->add_option("--kernel", kernel_s, "kernel spec")->required();
    seval->add_option("--coeffs", coeffs_s, "comma-separated a_0,a_1,...")->required();
    seval->add_option("--x", x, "evaluation point");
    auto* seval_grid = seval->add_option("--grid", grid_s, "a:b:m grid");
    seval->add_option("--z0", z0, "radius witness point (optional)");
    seval->add_option("--bigM", witness_m, "radius witness bound (optional)");

    // taylor coeffs | approx | series
    auto* taylor = app.add_subcommand("taylor", "generalized convolution Taylor machinery");
    taylor->require_subcommand(1);
    auto* tcoef = taylor->add_subcommand("coeffs", "extract series coefficients");
    tcoef->add_option("--kappa", kappa_s, "Sonine kernel")->required();
    tcoef->add_option("--f", f_s, "function spec")->required();
    tcoef->add_option("--n", n, "number of coefficients")->required();
    auto* tappr = taylor->add_subcommand("approx", "Taylor polynomial + remainder over a grid");
    tappr->add_option("--variant", variant_s, "rl | caputo (default rl)");
    tappr->add_option("--kappa", kappa_s, "Sonine kernel")->required();
    tappr->add_option("--f", f_s, "function spec")->required();
    tappr->add_option("--n", n, "polynomial length")->required();
    tappr->add_option("--grid", grid_s, "a:b:m grid")->required();
    auto* tser = taylor->add_subcommand("series", "Caputo-type Taylor series partial sums");
    tser->add_option("--kappa", kappa_s, "Sonine kernel")->required();
    tser->add_option("--f", f_s, "function spec")->required();
    tser->add_option("--x", x, "evaluation point")->required();
    tser->add_option("--nmax", nmax, "term budget (default 25)");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "fundamental-theorem verification");
    verify_cmd->add_flag("--battery", battery, "run the shipped acceptance battery");
    verify_cmd->add_option("--theorem", theorem_s, "FT1_RL|FT1_C|FT1_RL_N|FT1_C_N|FT2_RL|FT2_RL_N|FT2_C|FT2_C_N");
    verify_cmd->add_option("--kappa", kappa_s, "Sonine kernel");
    verify_cmd->add_option("--f", f_s, "function spec");
    verify_cmd->add_option("--n", n, "fold count");
    verify_cmd->add_option("--grid", grid_s, "a:b:m grid (default 0.05:xmax:40)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (keval->parsed()) {
            auto spec = parse_kernel(kernel_s);
            auto fn = resolve(spec, g.xmax);
            Table t(g, {"x", "value"});
            bool have_grid = keval_grid->count() > 0;
            for (double p : points_from(have_grid ? grid_s : "", x, true)) t.row({p, fn(p)});
            return 0;
        }
        if (kpair->parsed()) {
            auto spec = parse_kernel(kernel_s);
            std::printf("%s\n", associated_kernel(spec).to_string().c_str());
            return 0;
        }
        if (kcheck->parsed()) {
            SoninePair pair{parse_kernel(kappa_s), parse_kernel(k_s), std::nullopt};
            auto report = sonine_check(pair, g.xmax, n_points, g.quad_order);
            Table t(g, {"x", "lhs", "rhs", "residual"});
            for (std::size_t i = 0; i < report.grid.size(); ++i) {
                t.row({report.grid[i], report.lhs[i], report.rhs[i],
                       report.lhs[i] - report.rhs[i]});
            }
            std::printf("max residual %.17g over %zu points\n", report.residual_max(),
                        report.grid.size());
            return 0;
        }
        if (gfi->parsed() || gfd->parsed()) {
            auto spec = parse_kernel(kernel_s);
            auto f = parse_function(f_s, g.xmax, &spec, g.conv());
            SingularFunction result = SingularFunction::zero(g.xmax);
            if (gfi->parsed()) {
                result = gfi_function(spec, n, f, g.conv());
            } else {
                OperatorRequest req;
                req.kernel = spec;
                req.fold_n = n;
                if (variant_s == "rl") req.variant = OperatorVariant::GFD_RL;
                else if (variant_s == "caputo") req.variant = OperatorVariant::GFD_Caputo;
                else throw RangeError("variant must be rl or caputo");
                if (form_s == "seq") req.form = OperatorForm::Sequential;
                else if (form_s == "alt") req.form = OperatorForm::NFoldAlt;
                else throw RangeError("form must be seq or alt");
                result = gfd_function(req, f, g.conv());
            }
            bool have_grid = gfi->parsed() ? gfi_grid->count() > 0 : gfd_grid->count() > 0;
            Table t(g, {"x", "value"});
            for (double p : points_from(have_grid ? grid_s : "", x, true)) t.row({p, result(p)});
            return 0;
        }
        if (sgeom->parsed()) {
            auto spec = parse_kernel(kernel_s);
            bool have_grid = sgeom_grid->count() > 0;
            std::vector<std::string> cols = {"x", "value"};
            if (with_oracle) {
                cols.push_back("oracle");
                cols.push_back("abs_err");
            }
            Table t(g, cols);
            for (double p : points_from(have_grid ? grid_s : "", x, true)) {
                auto v = geometric_l(spec, lambda, p, with_oracle, g.xmax, g.conv());
                if (with_oracle) t.row({p, v.value, *v.oracle, *v.abs_err});
                else t.row({p, v.value});
            }
            return 0;
        }
        if (seval->parsed()) {
            auto spec_k = parse_kernel(kernel_s);
            auto coeffs = CoefficientSource::explicit_list(parse_coeff_list(coeffs_s));
            std::optional<RadiusWitness> witness;
            if (z0 != 0.0 && witness_m > 0.0) witness = RadiusWitness{z0, witness_m};
            auto spec = make_series(spec_k, coeffs, witness);
            SeriesEvaluator ev(spec, g.xmax, g.conv());
            bool have_grid = seval_grid->count() > 0;
            Table t(g, {"x", "value"});
            for (double p : points_from(have_grid ? grid_s : "", x, true)) {
                t.row({p, ev.eval(p, 1e-10)});
            }
            return 0;
        }
        if (tcoef->parsed()) {
            auto kappa = parse_kernel(kappa_s);
            auto pair = checked_pair(kappa, g);
            auto f = parse_function(f_s, g.xmax, &kappa, g.conv());
            TaylorOptions topts;
            topts.conv = g.conv();
            ExtractionReport report;
            auto coeffs = extract_coefficients(f, pair, n, &report, topts);
            Table t(g, {"j", "a_j", "extrapolation_residual"});
            for (std::size_t j = 0; j < coeffs.size(); ++j) {
                t.row({static_cast<double>(j), coeffs[j], report.coefficients[j].residual});
            }
            if (static_cast<int>(coeffs.size()) < n) {
                std::fprintf(stderr, "extraction stopped early at %zu of %d coefficients\n",
                             coeffs.size(), n);
                return 1;
            }
            return 0;
        }
        if (tappr->parsed()) {
            auto kappa = parse_kernel(kappa_s);
            auto pair = checked_pair(kappa, g);
            auto f = parse_function(f_s, g.xmax, &kappa, g.conv());
            TaylorOptions topts;
            topts.conv = g.conv();
            TaylorVariant variant = variant_s == "caputo" ? TaylorVariant::Caputo
                                                          : TaylorVariant::RL;
            TaylorExpansion te(f, pair, n, variant, topts);
            Table t(g, {"x", "f", "poly", "remainder", "identity_residual"});
            for (double p : parse_grid(grid_s)) {
                double fv = f(p), pv = te.poly(p), rv = te.remainder(p);
                t.row({p, fv, pv, rv, fv - pv - rv});
            }
            return 0;
        }
        if (tser->parsed()) {
            auto kappa = parse_kernel(kappa_s);
            auto pair = checked_pair(kappa, g);
            auto f = parse_function(f_s, g.xmax, &kappa, g.conv());
            TaylorOptions topts;
            topts.conv = g.conv();
            double v = caputo_taylor_series(f, pair, x, nmax, 1e-10, topts);
            Table t(g, {"x", "value"});
            t.row({x, v});
            return 0;
        }
        if (verify_cmd->parsed()) {
            VerifyOptions vopts;
            vopts.conv = g.conv();
            if (battery) {
                auto rows = run_battery(g.tol, g.seed, vopts);
                int failures = 0;
                std::printf("%-52s %-14s %-10s %s\n", "configuration", "residual", "tol",
                            "status");
                for (const auto& row : rows) {
                    if (!row.pass) ++failures;
                    std::printf("%-52s %-14.3e %-10.1e %s\n", row.name.c_str(), row.residual,
                                row.tol, row.pass ? "pass" : "FAIL");
                }
                std::printf("%zu configurations, %d failure%s\n", rows.size(), failures,
                            failures == 1 ? "" : "s");
                return failures == 0 ? 0 : 2;
            }
            auto theorem = theorem_from_string(theorem_s);
            if (!theorem) throw RangeError("unknown theorem id '" + theorem_s + "'");
            if (kappa_s.empty() || f_s.empty()) {
                throw RangeError("verify needs --kappa and --f (or --battery)");
            }
            auto kappa = parse_kernel(kappa_s);
            auto pair = checked_pair(kappa, g);
            auto f = parse_function(f_s, g.xmax, &kappa, g.conv());
            auto grid = grid_s.empty() ? default_grid(g.xmax, 40) : parse_grid(grid_s);
            auto report = verify(*theorem, pair, f, n, grid, vopts);
            Table t(g, {"x", "lhs", "rhs", "residual"});
            for (std::size_t i = 0; i < report.grid.size(); ++i) {
                t.row({report.grid[i], report.lhs[i], report.rhs[i],
                       report.lhs[i] - report.rhs[i]});
            }
            for (const auto& w : report.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
            double res = report.residual_max();
            std::printf("max residual %.17g (tol %.3g)\n", res, g.tol);
            return res <= g.tol ? 0 : 2;
        }
    } catch (const ParseError& e) {
        std::fprintf(stderr, "error [%s]: %s\n", e.code().c_str(), e.what());
        return 1;
    } catch (const Error& e) {
        std::fprintf(stderr, "error [%s]: %s\n", e.code().c_str(), e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}

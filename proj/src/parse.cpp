#include "gfc/parse.hpp"

#include <charconv>
#include <cmath>
#include <string>

#include "gfc/series.hpp"
#include "gfc/specfun.hpp"

namespace gfc {

namespace {

double parse_number(std::string_view text, std::size_t base_pos, std::string_view token) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
        throw ParseError("expected a number, got '" + std::string(token) + "'",
                         base_pos + (token.data() - text.data()));
    }
    return v;
}

// Splits "c*h:b" terms joined by '+'; a leading '-' binds to the coefficient.
std::vector<std::pair<double, double>> parse_terms(std::string_view text, std::size_t base_pos,
                                                   std::string_view body) {
    std::vector<std::pair<double, double>> terms;
    std::size_t pos = 0;
    while (pos <= body.size()) {
        std::size_t next = body.find('+', pos);
        std::string_view term = body.substr(pos, next == std::string_view::npos ? body.size() - pos
                                                                                : next - pos);
        std::size_t star = term.find("*h:");
        if (star == std::string_view::npos) {
            throw ParseError("expected '<coeff>*h:<beta>', got '" + std::string(term) + "'",
                             base_pos + pos);
        }
        double coeff = parse_number(text, base_pos, term.substr(0, star));
        double beta = parse_number(text, base_pos, term.substr(star + 3));
        if (!(beta > 0.0)) {
            throw ParseError("power-law exponent must be positive", base_pos + pos);
        }
        terms.emplace_back(coeff, beta);
        if (next == std::string_view::npos) break;
        pos = next + 1;
    }
    if (terms.empty()) throw ParseError("empty term list", base_pos);
    return terms;
}

} // namespace

KernelSpec parse_kernel(std::string_view text) {
    if (text == "h0") return KernelSpec::h0();
    if (text == "h1") return KernelSpec::h1();
    if (text.starts_with("h:")) {
        double beta = parse_number(text, 0, text.substr(2));
        if (!(beta > 0.0)) throw RangeError("h:<beta> requires beta > 0");
        return KernelSpec::power_law(beta);
    }
    if (text.starts_with("sum:")) {
        auto terms = parse_terms(text, 4, text.substr(4));
        std::vector<SumTerm> st;
        for (auto [c, b] : terms) st.push_back({c, b});
        return KernelSpec::sum_power_law(std::move(st));
    }
    if (text.starts_with("mlk:")) {
        std::string_view body = text.substr(4);
        std::size_t comma = body.find(',');
        if (comma == std::string_view::npos) {
            throw ParseError("mlk takes two parameters 'mlk:<alpha>,<beta>'", 4);
        }
        double alpha = parse_number(text, 4, body.substr(0, comma));
        double beta = parse_number(text, 4, body.substr(comma + 1));
        return KernelSpec::ml(alpha, beta);  // range-checked by the factory
    }
    throw ParseError("unknown kernel '" + std::string(text) + "'", 0);
}

SingularFunction parse_function(std::string_view text, double x_max,
                                const KernelSpec* session_kernel, const ConvOptions& opts) {
    if (text == "one") return SingularFunction::power_term(1.0, 1.0, x_max);
    if (text.starts_with("h:")) {
        double beta = parse_number(text, 0, text.substr(2));
        if (!(beta > 0.0)) throw RangeError("h:<beta> requires beta > 0");
        return SingularFunction::power_term(1.0, beta, x_max);
    }
    if (text.starts_with("lin:")) {
        return SingularFunction::power_sum(parse_terms(text, 4, text.substr(4)), x_max);
    }
    if (text.starts_with("exp:")) {
        double lambda = parse_number(text, 4, text.substr(4));
        return SingularFunction::analytic_family(
            1.0,
            [lambda](int k, double x) { return std::pow(lambda, k) * std::exp(lambda * x); },
            x_max);
    }
    if (text.starts_with("mlfun:")) {
        std::string_view body = text.substr(6);
        std::size_t comma = body.find(',');
        if (comma == std::string_view::npos) {
            throw ParseError("mlfun takes 'mlfun:<alpha>,<lambda>'", 6);
        }
        double alpha = parse_number(text, 6, body.substr(0, comma));
        double lambda = parse_number(text, 6, body.substr(comma + 1));
        if (!(alpha > 0.0)) throw RangeError("mlfun requires alpha > 0");
        // x^{alpha-1} E_{alpha,alpha}(lambda x^alpha) is the geometric series
        // over the h_alpha kernel.
        return geometric_function(KernelSpec::power_law(alpha), lambda, x_max, 1e-14, opts);
    }
    if (text.starts_with("geom:")) {
        double lambda = parse_number(text, 5, text.substr(5));
        if (!session_kernel) {
            throw ParseError("geom:<lambda> needs a session kernel (--kappa/--kernel)", 0);
        }
        return geometric_function(*session_kernel, lambda, x_max, 1e-12, opts);
    }
    throw ParseError("unknown function '" + std::string(text) + "'", 0);
}

std::vector<double> parse_grid(std::string_view text) {
    std::size_t c1 = text.find(':');
    std::size_t c2 = c1 == std::string_view::npos ? std::string_view::npos : text.find(':', c1 + 1);
    if (c2 == std::string_view::npos) {
        throw ParseError("grid must be '<a>:<b>:<m>'", 0);
    }
    double a = parse_number(text, 0, text.substr(0, c1));
    double b = parse_number(text, 0, text.substr(c1 + 1, c2 - c1 - 1));
    double m = parse_number(text, 0, text.substr(c2 + 1));
    int mi = static_cast<int>(m);
    if (mi < 1 || mi != m) throw RangeError("grid point count must be a positive integer");
    return linspace(a, b, mi);
}

} // namespace gfc

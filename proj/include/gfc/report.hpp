#pragma once

#include <cmath>
#include <string>
#include <vector>

namespace gfc {

/// Per-grid-point LHS/RHS/residual record with a max-norm summary.
struct ResidualReport {
    std::string label;
    std::string config;
    std::vector<double> grid;
    std::vector<double> lhs;
    std::vector<double> rhs;
    std::vector<std::string> warnings;

    double residual_max() const {
        double r = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            r = std::max(r, std::fabs(lhs[i] - rhs[i]));
        }
        return r;
    }
};

} // namespace gfc

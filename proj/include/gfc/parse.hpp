#pragma once

#include <string_view>
#include <vector>

#include "gfc/convops.hpp"
#include "gfc/kernels.hpp"

namespace gfc {

/// Kernel mini-language:
///   h:<beta>                        power law
///   sum:<c1>*h:<b1>+<c2>*h:<b2>...  finite sum of power laws
///   mlk:<alpha>,<beta>              Mittag-Leffler kernel, 0 < alpha < beta < 1
///   h0, h1                          extended kernels
KernelSpec parse_kernel(std::string_view text);

/// Function mini-language:
///   one                             f == 1
///   h:<beta>                        h_beta
///   lin:<c0>*h:<b0>+<c1>*h:<b1>...  linear combination of power terms
///   exp:<lambda>                    e^{lambda x}
///   mlfun:<alpha>,<lambda>          x^{alpha-1} E_{alpha,alpha}(lambda x^alpha)
///   geom:<lambda>                   l_{kappa,lambda} for the session kernel
SingularFunction parse_function(std::string_view text, double x_max,
                                const KernelSpec* session_kernel = nullptr,
                                const ConvOptions& opts = {});

/// "a:b:m" -> m equally spaced points from a to b.
std::vector<double> parse_grid(std::string_view text);

} // namespace gfc

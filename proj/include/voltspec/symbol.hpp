#pragma once

#include <vector>

#include "voltspec/kernel.hpp"

namespace voltspec {

/// One mode of the operator: eigenvalue a_n >= 1 and coupling exponent
/// theta in [0, 1].
struct Mode {
    double eigenvalue = 1.0;
    double theta = 0.0;
};

void validate_mode(const Mode& mode);

/// Monic polynomial p(lambda) = (lambda^2 + a^2) prod(lambda + gamma_k)
/// - a^{2 theta} sum_k c_k prod_{j != k}(lambda + gamma_j), degree N + 2.
/// coeffs[0] = 1 down to coeffs[N+2] = constant term.
struct SymbolPolynomial {
    std::vector<double> coeffs;

    [[nodiscard]] int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

/// Per-mode symbol value lambda^2 + a^2 (1 - a^{-2(1-theta)} K^(lambda)).
/// The quadratic part is evaluated as (lambda - ia)(lambda + ia), which is
/// exact algebraically and keeps full relative accuracy near +-ia.
Complex eval_ell(const Mode& mode, const ExponentialKernel& kernel, Complex lambda,
                 double pole_guard_rel = 1e-12);

/// d/dlambda of the symbol: 2 lambda + a^{2 theta} sum c_k/(lambda+gamma_k)^2.
Complex eval_ell_deriv(const Mode& mode, const ExponentialKernel& kernel, Complex lambda,
                       double pole_guard_rel = 1e-12);

/// Cap on the kernel size admitted to the polynomial route; reads
/// VOLTSPEC_MAX_N once (default 64).
int poly_route_cap();

SymbolPolynomial poly_coeffs(const Mode& mode, const ExponentialKernel& kernel);

Complex eval_poly(const SymbolPolynomial& poly, Complex lambda);

}  // namespace voltspec

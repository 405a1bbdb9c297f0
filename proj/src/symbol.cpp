#include "voltspec/symbol.hpp"

#include <cmath>
#include <cstdlib>

namespace voltspec {

void validate_mode(const Mode& mode) {
    if (!(mode.eigenvalue >= 1.0)) throw ValidationError("mode eigenvalue must be >= 1");
    if (!(mode.theta >= 0.0 && mode.theta <= 1.0))
        throw ValidationError("theta must lie in [0, 1]");
}

Complex eval_ell(const Mode& mode, const ExponentialKernel& kernel, Complex lambda,
                 double pole_guard_rel) {
    validate_mode(mode);
    const double a = mode.eigenvalue;
    const Complex ia{0.0, a};
    const double coupling = std::pow(a, 2.0 * mode.theta);
    return (lambda - ia) * (lambda + ia) - coupling * laplace(kernel, lambda, pole_guard_rel);
}

Complex eval_ell_deriv(const Mode& mode, const ExponentialKernel& kernel, Complex lambda,
                       double pole_guard_rel) {
    validate_mode(mode);
    const double coupling = std::pow(mode.eigenvalue, 2.0 * mode.theta);
    return 2.0 * lambda - coupling * laplace_deriv(kernel, lambda, pole_guard_rel);
}

int poly_route_cap() {
    static const int cap = [] {
        if (const char* env = std::getenv("VOLTSPEC_MAX_N")) {
            const int v = std::atoi(env);
            if (v >= 1) return v;
        }
        return 64;
    }();
    return cap;
}

SymbolPolynomial poly_coeffs(const Mode& mode, const ExponentialKernel& kernel) {
    validate_mode(mode);
    const int n = static_cast<int>(kernel.size());
    if (n > poly_route_cap())
        throw ValidationError("kernel size exceeds the polynomial-route cap");

    const double a = mode.eigenvalue;
    const double coupling = std::pow(a, 2.0 * mode.theta);

    // prod(lambda + gamma_k), built by incremental convolution in ascending
    // gamma order.
    std::vector<double> prod{1.0};
    prod.reserve(n + 1);
    for (const auto& t : kernel.terms) {
        std::vector<double> next(prod.size() + 1, 0.0);
        for (std::size_t i = 0; i < prod.size(); ++i) {
            next[i] += prod[i];
            next[i + 1] += prod[i] * t.rate;
        }
        prod = std::move(next);
    }

    // (lambda^2 + a^2) * prod
    std::vector<double> coeffs(prod.size() + 2, 0.0);
    for (std::size_t i = 0; i < prod.size(); ++i) {
        coeffs[i] += prod[i];
        coeffs[i + 2] += prod[i] * a * a;
    }

    // minus a^{2 theta} sum_k c_k prod_{j != k}(lambda + gamma_j)
    for (int k = 0; k < n; ++k) {
        std::vector<double> part{1.0};
        part.reserve(n);
        for (int j = 0; j < n; ++j) {
            if (j == k) continue;
            std::vector<double> next(part.size() + 1, 0.0);
            for (std::size_t i = 0; i < part.size(); ++i) {
                next[i] += part[i];
                next[i + 1] += part[i] * kernel.terms[j].rate;
            }
            part = std::move(next);
        }
        const double c = coupling * kernel.terms[k].amplitude;
        const std::size_t offset = coeffs.size() - part.size();
        for (std::size_t i = 0; i < part.size(); ++i) coeffs[offset + i] -= c * part[i];
    }

    for (double c : coeffs) {
        if (!std::isfinite(c) || std::abs(c) > 1e300)
            throw ValidationError("polynomial coefficients overflow the safe range");
    }
    return SymbolPolynomial{std::move(coeffs)};
}

Complex eval_poly(const SymbolPolynomial& poly, Complex lambda) {
    Complex acc{0.0, 0.0};
    for (double c : poly.coeffs) acc = acc * lambda + c;
    return acc;
}

}  // namespace voltspec

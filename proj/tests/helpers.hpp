#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "voltspec/numerics.hpp"

namespace voltspec::testing {

inline bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

inline bool close_rel(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

inline bool close_c(Complex a, Complex b, double tol) { return std::abs(a - b) <= tol; }

/// Independent cubic solver (trigonometric/Cardano), test-side oracle for the
/// companion-matrix route. Coefficients are monic: x^3 + b x^2 + c x + d.
inline std::vector<Complex> cubic_roots(double b, double c, double d) {
    // depressed cubic t^3 + p t + q with x = t - b/3
    const double p = c - b * b / 3.0;
    const double q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
    const double shift = -b / 3.0;
    const double disc = q * q / 4.0 + p * p * p / 27.0;
    std::vector<Complex> roots;
    if (disc > 0.0) {
        const double s = std::sqrt(disc);
        const double u = std::cbrt(-q / 2.0 + s);
        const double v = std::cbrt(-q / 2.0 - s);
        const double t1 = u + v;
        roots.emplace_back(t1 + shift, 0.0);
        const double re = -t1 / 2.0 + shift;
        const double im = std::sqrt(3.0) / 2.0 * (u - v);
        roots.emplace_back(re, im);
        roots.emplace_back(re, -im);
    } else {
        const double m = 2.0 * std::sqrt(-p / 3.0);
        const double phi = std::acos(3.0 * q / (p * m)) / 3.0;
        for (int k = 0; k < 3; ++k)
            roots.emplace_back(m * std::cos(phi - 2.0 * kPi * k / 3.0) + shift, 0.0);
    }
    return roots;
}

}  // namespace voltspec::testing

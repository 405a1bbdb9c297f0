#pragma once

#include <complex>
#include <functional>

#include "voltspec/numerics.hpp"

namespace voltspec {

/// Adaptive Gauss-Kronrod panel integration of a complex-valued integrand on
/// a finite interval. Thin wrapper over a 15-point rule with bisection.
Complex integrate_panels(const std::function<Complex(double)>& f, double a, double b,
                         double rel_tol = 1e-12);

double integrate_panels_real(const std::function<double(double)>& f, double a, double b,
                             double rel_tol = 1e-12);

/// I(r, phi, t0) = int_{t0}^inf t^{-r} / (e^{i phi} + t) dt, evaluated after
/// the substitution t = e^u with an analytic series for the tail beyond
/// u = 30 (and for the head below u = -30 when t0 = 0). Requires r in (0, 1],
/// |phi| < pi.
Complex power_kernel_integral(double r, double phi, double t0);

/// J(s) = int_0^inf t^{s-1} / (1 + t^2) dt for s in (0, 2), by quadrature
/// (the closed form (pi/2)/sin(pi s/2) is reserved for tests).
double mellin_quadratic_integral(double s);

}  // namespace voltspec

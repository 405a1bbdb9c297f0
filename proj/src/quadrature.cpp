#include "voltspec/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "voltspec/errors.hpp"

namespace voltspec {

namespace {

using GK = boost::math::quadrature::gauss_kronrod<double, 15>;

constexpr int kMaxDepth = 17;
constexpr double kCut = 30.0;  // switch-over between panels and the tail series

// int_U^inf e^{(1-r)u} / (e^{i phi} + e^u) du for U > 0, as the series
// sum_m (-1)^m e^{i m phi} e^{-(r+m)U} / (r+m); exact to machine precision
// at U = 30 since the term ratio is e^{i phi - U}.
Complex upper_tail_series(double r, double phi, double upper) {
    const Complex rot = std::polar(1.0, phi);
    Complex factor{1.0, 0.0};
    Complex sum{0.0, 0.0};
    for (int m = 0; m <= 10; ++m) {
        sum += factor * std::exp(-(r + m) * upper) / (r + m);
        factor *= -rot;
    }
    return sum;
}

// int_{-inf}^L e^{(1-r)u} / (e^{i phi} + e^u) du for L < 0, expanding
// 1/(e^{i phi} + e^u) = e^{-i phi} sum_m (-e^{u - i phi})^m.
Complex lower_head_series(double r, double phi, double lower) {
    const Complex inv_rot = std::polar(1.0, -phi);
    Complex factor = inv_rot;
    Complex sum{0.0, 0.0};
    for (int m = 0; m <= 10; ++m) {
        sum += factor * std::exp((1.0 - r + m) * lower) / (1.0 - r + m);
        factor *= -inv_rot;
    }
    return sum;
}

}  // namespace

Complex integrate_panels(const std::function<Complex(double)>& f, double a, double b,
                         double rel_tol) {
    if (!(a < b)) return {0.0, 0.0};
    double err = 0.0;
    return GK::integrate(f, a, b, kMaxDepth, rel_tol, &err);
}

double integrate_panels_real(const std::function<double(double)>& f, double a, double b,
                             double rel_tol) {
    if (!(a < b)) return 0.0;
    double err = 0.0;
    return GK::integrate(f, a, b, kMaxDepth, rel_tol, &err);
}

Complex power_kernel_integral(double r, double phi, double t0) {
    if (!(r > 0.0) || !(r <= 1.0)) throw ValidationError("exponent r must lie in (0, 1]");
    if (!(std::abs(phi) < kPi)) throw SectorError("ray angle must satisfy |phi| < pi");
    if (t0 < 0.0) throw ValidationError("lower limit must be nonnegative");

    const Complex rot = std::polar(1.0, phi);
    const auto integrand = [&](double u) {
        const double eu = std::exp(u);
        return std::exp((1.0 - r) * u) / (rot + eu);
    };

    if (t0 > 0.0) {
        const double lo = std::log(t0);
        if (lo >= kCut) return upper_tail_series(r, phi, lo);
        return integrate_panels(integrand, lo, kCut) + upper_tail_series(r, phi, kCut);
    }
    // t0 = 0: head series below -kCut (needs r < 1 for convergence of the
    // m = 0 head term exponent 1 - r > 0).
    if (r >= 1.0) throw ValidationError("lower limit 0 requires r < 1");
    return lower_head_series(r, phi, -kCut) + integrate_panels(integrand, -kCut, kCut) +
           upper_tail_series(r, phi, kCut);
}

double mellin_quadratic_integral(double s) {
    if (!(s > 0.0) || !(s < 2.0)) throw ValidationError("exponent s must lie in (0, 2)");
    const auto integrand = [s](double u) {
        return std::exp(s * u) / (1.0 + std::exp(2.0 * u));
    };
    // e^{su}/(1+e^{2u}) = sum (-1)^m e^{(s+2m)u} below, e^{(s-2-2m)u} above.
    double head = 0.0, tail = 0.0;
    for (int m = 0; m <= 10; ++m) {
        const double sign = (m % 2 == 0) ? 1.0 : -1.0;
        head += sign * std::exp(-(s + 2.0 * m) * kCut) / (s + 2.0 * m);
        tail += sign * std::exp((s - 2.0 - 2.0 * m) * kCut) / (2.0 + 2.0 * m - s);
    }
    return head + integrate_panels_real(integrand, -kCut, kCut) + tail;
}

}  // namespace voltspec

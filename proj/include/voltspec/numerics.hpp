#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

namespace voltspec {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Kahan-compensated accumulator. Summation order is the caller's
/// responsibility; results are reproducible across platforms.
class CompensatedSum {
public:
    void add(double x) {
        const double y = x - c_;
        const double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    [[nodiscard]] double value() const { return s_; }

private:
    double s_ = 0.0;
    double c_ = 0.0;
};

class CompensatedComplexSum {
public:
    void add(Complex z) {
        re_.add(z.real());
        im_.add(z.imag());
    }
    [[nodiscard]] Complex value() const { return {re_.value(), im_.value()}; }

private:
    CompensatedSum re_, im_;
};

/// Least-squares slope of y against x.
inline double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / static_cast<double>(n);
    const double my = sy / static_cast<double>(n);
    double num = 0, den = 0;
    for (std::size_t i = 0; i < n; ++i) {
        num += (x[i] - mx) * (y[i] - my);
        den += (x[i] - mx) * (x[i] - mx);
    }
    return num / den;
}

/// Slope of log|err| against log(a), clamping out zero errors at 1e-300.
inline double loglog_slope(const std::vector<double>& a, const std::vector<double>& err) {
    std::vector<double> lx(a.size()), ly(err.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        lx[i] = std::log(a[i]);
        ly[i] = std::log(std::max(err[i], 1e-300));
    }
    return fit_slope(lx, ly);
}

/// Deterministic RNG helpers. std::uniform_real_distribution is not pinned
/// across standard libraries, so tests and the CLI draw through these.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    std::uint64_t uniform_index(std::uint64_t n) { return next_u64() % n; }

private:
    std::uint64_t state_;
};

}  // namespace voltspec

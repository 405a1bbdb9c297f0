#pragma once

#include <optional>
#include <string>
#include <vector>

#include "voltspec/symbol.hpp"

namespace voltspec {

/// A real zero of the symbol, located inside its bracketing interval.
/// pole_gap carries lambda + gamma_k at full precision (the zero is found in
/// pole-shifted coordinates, so pole_gap does not suffer the cancellation of
/// recovering it from lambda).
struct RealZero {
    int index = 0;      // k, 1-based: zero of the interval (-gamma_k, -gamma_{k-1})
    double value = 0.0;  // lambda_{n,k}
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    double pole_gap = 0.0;  // psi_k = lambda_{n,k} + gamma_k > 0
    double residual = 0.0;
    double residual_bound = 0.0;
};

/// A zero of the reduced function 1 - a^{-2(1-theta)} sum c_k/(x + gamma_k);
/// these interlace the symbol's real zeros from above.
struct InterlaceBound {
    int index = 0;
    double value = 0.0;     // x_{n,k}
    double pole_gap = 0.0;  // x_{n,k} + gamma_k
};

enum class PairRoute { FixedPoint, Newton, CompanionOracle };

struct ComplexPair {
    Complex upper;  // the zero with positive imaginary part
    PairRoute route = PairRoute::FixedPoint;
    int iterations = 0;
    double residual = 0.0;
};

struct FixedPointResult {
    Complex tau;
    Complex lambda;  // a (tau + i)
    int iterations = 0;
};

struct SpectrumSlice {
    Mode mode;
    std::vector<RealZero> real_zeros;
    std::vector<InterlaceBound> interlace_bounds;
    std::optional<ComplexPair> pair;
    std::vector<double> unstable_real;  // positive real zeros (Figure-B case)
    double residual_max = 0.0;
    std::vector<std::string> diagnostics;

    /// total zero count, conjugate included
    [[nodiscard]] std::size_t zero_count() const {
        return real_zeros.size() + unstable_real.size() + (pair ? 2u : 0u);
    }
    /// all zeros as one list (conjugate included), for cross-route matching
    [[nodiscard]] std::vector<Complex> all_zeros() const;
};

struct PoleLimitRow {
    double eigenvalue = 0.0;        // a_n
    double zero = 0.0;              // lambda_{n,k}
    double pole_gap = 0.0;          // psi_k
    double normalized_gap = 0.0;    // psi_k a^{2(1-theta)} / c_k
};

/// Residual acceptance bound for the symbol at x: the configured tolerance
/// fused with the binary64 evaluation-noise floor of ell at that point.
double residual_bound(const Mode& mode, const ExponentialKernel& kernel, Complex x,
                      double tol = 1e-9);

std::vector<RealZero> real_zeros(const Mode& mode, const ExponentialKernel& kernel);

std::vector<InterlaceBound> interlacing_bounds(const Mode& mode,
                                               const ExponentialKernel& kernel);

/// Locates the upper complex zero by iterating tau -> K^(a tau + ia) /
/// (a^{2(1-theta)} (tau + 2i)) from tau = 0. Throws ContractionError when the
/// successive-difference ratio stays >= 0.9 or 50 iterations pass.
FixedPointResult complex_pair_fixed_point(const Mode& mode, const ExponentialKernel& kernel);

Complex newton_polish(const Mode& mode, const ExponentialKernel& kernel, Complex start,
                      int max_steps = 100);

/// Locates the complex pair through the full fallback chain: fixed point,
/// then Newton from the asymptotic guess, then the companion oracle when the
/// kernel fits the polynomial route. Throws ConvergenceError when no
/// admissible pair is found.
ComplexPair complex_pair(const Mode& mode, const ExponentialKernel& kernel);

SpectrumSlice full_slice(const Mode& mode, const ExponentialKernel& kernel);

std::vector<PoleLimitRow> pole_limit_study(const ExponentialKernel& kernel, int index,
                                           double theta, const std::vector<double>& a_grid);

}  // namespace voltspec

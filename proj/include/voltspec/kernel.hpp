#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "voltspec/errors.hpp"
#include "voltspec/numerics.hpp"

namespace voltspec {

/// One exponential term c * exp(-gamma t) of a memory kernel.
struct KernelTerm {
    double amplitude = 0.0;  // c_k > 0
    double rate = 0.0;       // gamma_k > 0, strictly increasing across terms
};

/// Whether a series bound is known finite, known divergent, or undecided.
enum class SeriesBound { Finite, Divergent, Unknown };

/// Finite sum of decaying exponentials K(t) = sum c_k exp(-gamma_k t), with
/// bounds on the omitted tail when the kernel truncates an infinite family.
struct ExponentialKernel {
    std::vector<KernelTerm> terms;
    /// Upper bound on the omitted part of sum c_k / gamma_k (0 for exact kernels).
    double tail_l1 = 0.0;
    /// Upper bound on the omitted part of sum c_k; +inf marks a divergent series.
    double tail_mass = 0.0;

    [[nodiscard]] std::size_t size() const { return terms.size(); }
    [[nodiscard]] bool mass_divergent() const {
        return tail_mass == std::numeric_limits<double>::infinity();
    }
    /// sum of stored amplitudes
    [[nodiscard]] double partial_mass() const;
    /// sum of stored c_k / gamma_k
    [[nodiscard]] double partial_l1() const;
};

/// Power-law coefficient family c_k = A/k^alpha, gamma_k = B k^beta.
struct PowerLawFamily {
    double amp = 1.0;     // A > 0
    double scale = 1.0;   // B > 0
    double alpha = 0.5;   // in (0, 1]
    double beta = 2.0;    // > 0, alpha + beta > 1
    int truncation = 64;  // N >= 1

    [[nodiscard]] double r() const { return (alpha + beta - 1.0) / beta; }
};

struct ConditionReport {
    double s_lo = 0.0;  // partial sum of c_k/gamma_k
    double s_hi = 0.0;  // partial + tail bound
    bool integrable_small = false;      // condition a): upper end < 1
    SeriesBound mass_finite = SeriesBound::Unknown;  // condition b)
    double gap_sup = 0.0;  // max_k gamma_k (gamma_{k+1} - gamma_k) over stored terms
    bool gap_unbounded_plausible = false;
};

struct ProbeRow {
    double radius = 0.0;
    double angle = 0.0;
    double transform_abs = 0.0;        // |K^(lambda)|
    double scaled_deriv_abs = 0.0;     // |lambda K^'(lambda)|
    std::optional<double> scaled_diff_abs;  // |lambda (K^ - h)| when a family is given
};

struct RayProbe {
    double angle = 0.0;
    std::vector<ProbeRow> rows;
    bool transform_monotone = true;
    bool deriv_monotone = true;
    /// max/min ratio of the last three |lambda (K^-h)| samples, when available
    std::optional<double> diff_tail_ratio;
};

ExponentialKernel make_exponential(std::vector<std::pair<double, double>> terms);

void validate_family(const PowerLawFamily& family);
ExponentialKernel from_power_law(const PowerLawFamily& family);

/// Tail bound (A/B) * N^{1-alpha-beta} / (alpha+beta-1) for truncation at N.
double power_law_tail_l1(const PowerLawFamily& family, int truncation);

double eval_time(const ExponentialKernel& kernel, double t);

/// Laplace transform sum c_k / (lambda + gamma_k). Throws PoleError when
/// lambda comes within pole_guard_rel * gamma_k of a pole.
Complex laplace(const ExponentialKernel& kernel, Complex lambda,
                double pole_guard_rel = 1e-12);

/// d/dlambda of the transform: -sum c_k / (lambda + gamma_k)^2.
Complex laplace_deriv(const ExponentialKernel& kernel, Complex lambda,
                      double pole_guard_rel = 1e-12);

/// Sum of |c_k / (lambda + gamma_k)|; the evaluation-noise scale of laplace().
double laplace_modulus_sum(const ExponentialKernel& kernel, Complex lambda);

ConditionReport check_conditions(const ExponentialKernel& kernel);

/// Integral approximant h(lambda) = int_1^inf A dx / (x^alpha (lambda + B x^beta))
/// of the family's transform, valid on |arg lambda| < pi - delta.
Complex integral_approximant(const PowerLawFamily& family, Complex lambda,
                             double delta = 1e-9);

std::vector<RayProbe> sector_decay_probe(const ExponentialKernel& kernel,
                                         const std::optional<PowerLawFamily>& family,
                                         double delta, const std::vector<double>& radii,
                                         const std::vector<double>& angles);

}  // namespace voltspec

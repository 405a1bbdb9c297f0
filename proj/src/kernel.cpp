#include "voltspec/kernel.hpp"

#include <algorithm>
#include <cmath>

#include "voltspec/quadrature.hpp"

namespace voltspec {

namespace {

void validate_terms(const std::vector<KernelTerm>& terms) {
    if (terms.empty()) throw ValidationError("kernel needs at least one term");
    double prev = 0.0;
    for (const auto& t : terms) {
        if (!(t.amplitude > 0.0)) throw ValidationError("term amplitudes must be positive");
        if (!(t.rate > prev))
            throw ValidationError("decay rates must be positive and strictly increasing");
        prev = t.rate;
    }
}

void guard_pole(const ExponentialKernel& kernel, Complex lambda, double guard_rel) {
    for (const auto& t : kernel.terms) {
        if (std::abs(lambda + t.rate) < guard_rel * t.rate)
            throw PoleError("lambda within pole guard of -" + std::to_string(t.rate));
    }
}

}  // namespace

double ExponentialKernel::partial_mass() const {
    CompensatedSum s;
    for (const auto& t : terms) s.add(t.amplitude);
    return s.value();
}

double ExponentialKernel::partial_l1() const {
    CompensatedSum s;
    for (const auto& t : terms) s.add(t.amplitude / t.rate);
    return s.value();
}

ExponentialKernel make_exponential(std::vector<std::pair<double, double>> terms) {
    std::sort(terms.begin(), terms.end(),
              [](const auto& a, const auto& b) { return a.second < b.second; });
    ExponentialKernel kernel;
    kernel.terms.reserve(terms.size());
    for (const auto& [c, g] : terms) kernel.terms.push_back({c, g});
    validate_terms(kernel.terms);
    return kernel;
}

void validate_family(const PowerLawFamily& family) {
    if (!(family.amp > 0.0) || !(family.scale > 0.0))
        throw ValidationError("family amplitude and scale must be positive");
    if (!(family.alpha > 0.0) || !(family.alpha <= 1.0))
        throw ValidationError("alpha must lie in (0, 1]");
    if (!(family.beta > 0.0)) throw ValidationError("beta must be positive");
    if (!(family.alpha + family.beta > 1.0))
        throw ValidationError("alpha + beta must exceed 1");
    if (family.truncation < 1) throw ValidationError("truncation must be >= 1");
}

double power_law_tail_l1(const PowerLawFamily& family, int truncation) {
    const double p = family.alpha + family.beta;
    return (family.amp / family.scale) * std::pow(truncation, 1.0 - p) / (p - 1.0);
}

ExponentialKernel from_power_law(const PowerLawFamily& family) {
    validate_family(family);
    ExponentialKernel kernel;
    kernel.terms.reserve(family.truncation);
    for (int k = 1; k <= family.truncation; ++k) {
        const double kk = static_cast<double>(k);
        kernel.terms.push_back(
            {family.amp / std::pow(kk, family.alpha), family.scale * std::pow(kk, family.beta)});
    }
    validate_terms(kernel.terms);
    kernel.tail_l1 = power_law_tail_l1(family, family.truncation);
    // alpha <= 1 makes sum c_k diverge (harmonic or slower).
    kernel.tail_mass = std::numeric_limits<double>::infinity();
    return kernel;
}

double eval_time(const ExponentialKernel& kernel, double t) {
    if (t < 0.0) throw ValidationError("time must be nonnegative");
    CompensatedSum s;
    for (const auto& term : kernel.terms) s.add(term.amplitude * std::exp(-term.rate * t));
    return s.value();
}

Complex laplace(const ExponentialKernel& kernel, Complex lambda, double pole_guard_rel) {
    guard_pole(kernel, lambda, pole_guard_rel);
    if (lambda.imag() == 0.0) {
        // real path; shares its arithmetic with check_conditions at lambda = 0
        const double x = lambda.real();
        CompensatedSum s;
        for (const auto& t : kernel.terms) s.add(t.amplitude / (x + t.rate));
        return {s.value(), 0.0};
    }
    CompensatedComplexSum s;
    for (const auto& t : kernel.terms) s.add(t.amplitude / (lambda + t.rate));
    return s.value();
}

Complex laplace_deriv(const ExponentialKernel& kernel, Complex lambda, double pole_guard_rel) {
    guard_pole(kernel, lambda, pole_guard_rel);
    CompensatedComplexSum s;
    for (const auto& t : kernel.terms) {
        const Complex d = lambda + t.rate;
        s.add(-t.amplitude / (d * d));
    }
    return s.value();
}

double laplace_modulus_sum(const ExponentialKernel& kernel, Complex lambda) {
    CompensatedSum s;
    for (const auto& t : kernel.terms) s.add(t.amplitude / std::abs(lambda + t.rate));
    return s.value();
}

ConditionReport check_conditions(const ExponentialKernel& kernel) {
    ConditionReport report;
    report.s_lo = laplace(kernel, {0.0, 0.0}).real();
    report.s_hi = report.s_lo + kernel.tail_l1;
    report.integrable_small = report.s_hi < 1.0;
    report.mass_finite =
        kernel.mass_divergent() ? SeriesBound::Divergent : SeriesBound::Finite;

    const std::size_t n = kernel.size();
    report.gap_sup = 0.0;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const double g = kernel.terms[k].rate *
                         (kernel.terms[k + 1].rate - kernel.terms[k].rate);
        report.gap_sup = std::max(report.gap_sup, g);
    }
    // Trend heuristic only; the condition is about the infinite sequence and
    // cannot be decided from finitely many terms.
    if (n >= 6) {
        const std::size_t third = n / 3;
        double early = 0.0, late = 0.0;
        for (std::size_t k = 0; k + 1 < n; ++k) {
            const double g = kernel.terms[k].rate *
                             (kernel.terms[k + 1].rate - kernel.terms[k].rate);
            if (k < third) early = std::max(early, g);
            if (k + 1 >= n - third) late = std::max(late, g);
        }
        report.gap_unbounded_plausible = late > early;
    }
    return report;
}

Complex integral_approximant(const PowerLawFamily& family, Complex lambda, double delta) {
    validate_family(family);
    if (!(delta > 0.0)) throw ValidationError("sector margin delta must be positive");
    const double phi = std::arg(lambda);
    if (!(std::abs(phi) < kPi - delta))
        throw SectorError("arg lambda outside the sector (-pi+delta, pi-delta)");
    const double mag = std::abs(lambda);
    if (!(mag > 0.0)) throw ValidationError("lambda must be nonzero");

    // Substituting B x^beta = |lambda| t turns the integral into
    // (A B^{r-1} / (beta |lambda|^r)) int_{B/|lambda|}^inf t^{-r}/(e^{i phi}+t) dt.
    const double r = family.r();
    const Complex tail_integral = power_kernel_integral(r, phi, family.scale / mag);
    const double prefactor = family.amp * std::pow(family.scale, r - 1.0) /
                             (family.beta * std::pow(mag, r));
    return prefactor * tail_integral;
}

std::vector<RayProbe> sector_decay_probe(const ExponentialKernel& kernel,
                                         const std::optional<PowerLawFamily>& family,
                                         double delta, const std::vector<double>& radii,
                                         const std::vector<double>& angles) {
    if (radii.size() < 2) throw ValidationError("need at least two radii");
    for (std::size_t i = 0; i + 1 < radii.size(); ++i)
        if (!(radii[i] < radii[i + 1])) throw ValidationError("radii must be increasing");

    std::vector<RayProbe> probes;
    probes.reserve(angles.size());
    for (double angle : angles) {
        if (!(std::abs(angle) < kPi - delta))
            throw SectorError("probe ray outside the sector (-pi+delta, pi-delta)");
        RayProbe ray;
        ray.angle = angle;
        for (double radius : radii) {
            const Complex lambda = std::polar(radius, angle);
            ProbeRow row;
            row.radius = radius;
            row.angle = angle;
            row.transform_abs = std::abs(laplace(kernel, lambda));
            row.scaled_deriv_abs = std::abs(lambda * laplace_deriv(kernel, lambda));
            if (family) {
                row.scaled_diff_abs = std::abs(
                    lambda * (laplace(kernel, lambda) - integral_approximant(*family, lambda, delta)));
            }
            ray.rows.push_back(row);
        }
        for (std::size_t i = 0; i + 1 < ray.rows.size(); ++i) {
            if (!(ray.rows[i + 1].transform_abs < ray.rows[i].transform_abs))
                ray.transform_monotone = false;
            if (!(ray.rows[i + 1].scaled_deriv_abs < ray.rows[i].scaled_deriv_abs))
                ray.deriv_monotone = false;
        }
        if (family && ray.rows.size() >= 3) {
            double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
            for (std::size_t i = ray.rows.size() - 3; i < ray.rows.size(); ++i) {
                lo = std::min(lo, *ray.rows[i].scaled_diff_abs);
                hi = std::max(hi, *ray.rows[i].scaled_diff_abs);
            }
            ray.diff_tail_ratio = hi / lo;
        }
        probes.push_back(std::move(ray));
    }
    return probes;
}

}  // namespace voltspec

#include "voltspec/stability.hpp"

#include <cmath>

#include "voltspec/roots.hpp"

namespace voltspec {

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Stable: return "Stable";
        case Verdict::Unstable: return "Unstable";
        case Verdict::Indeterminate: return "Indeterminate";
    }
    return "Unknown";
}

StabilityReport classify(const ExponentialKernel& kernel, const std::vector<Mode>& modes) {
    if (modes.empty()) throw ValidationError("need at least one mode");
    for (std::size_t i = 0; i + 1 < modes.size(); ++i)
        if (modes[i + 1].eigenvalue < modes[i].eigenvalue)
            throw ValidationError("mode eigenvalues must be nondecreasing");

    StabilityReport report;
    report.s_lo = kernel.partial_l1();
    report.s_hi = report.s_lo + kernel.tail_l1;

    bool any_straddle = false;
    for (std::size_t i = 0; i < modes.size(); ++i) {
        validate_mode(modes[i]);
        const double threshold =
            std::pow(modes[i].eigenvalue, 2.0 * (1.0 - modes[i].theta));
        report.thresholds.push_back(threshold);
        if (report.s_lo > threshold) {
            ++report.unstable_count;
            report.unstable_roots.push_back(
                {static_cast<int>(i), unstable_root(modes[i], kernel)});
        } else if (!(report.s_hi < threshold)) {
            // tail interval straddles the threshold (or hits it exactly)
            any_straddle = true;
        }
    }
    report.verdict = report.unstable_count > 0 ? Verdict::Unstable
                     : any_straddle            ? Verdict::Indeterminate
                                               : Verdict::Stable;
    return report;
}

double unstable_root(const Mode& mode, const ExponentialKernel& kernel) {
    validate_mode(mode);
    const double threshold = std::pow(mode.eigenvalue, 2.0 * (1.0 - mode.theta));
    if (!(kernel.partial_l1() > threshold))
        throw ValidationError("mode is not unstable: S does not exceed the threshold");
    const auto zeros = real_zeros(mode, kernel);
    for (const auto& z : zeros)
        if (z.value > 0.0) return z.value;
    throw ConvergenceError("no positive real zero located for the unstable mode");
}

AxisCheck imaginary_axis_check(const Mode& mode, const ExponentialKernel& kernel,
                               const std::vector<double>& y_grid) {
    validate_mode(mode);
    if (y_grid.empty()) throw ValidationError("empty y grid");

    const double a = mode.eigenvalue;
    const double coupling = std::pow(a, 2.0 * mode.theta);

    AxisCheck check;
    check.min_abs = std::numeric_limits<double>::infinity();
    for (double y : y_grid) {
        AxisRow row;
        row.y = y;
        if (y == 0.0) {
            // Re ell(0) = a^{2 theta} (a^{2(1-theta)} - S)
            row.re_at_origin = eval_ell(mode, kernel, {0.0, 0.0}).real();
            row.abs_ell = std::abs(row.re_at_origin);
            check.rows.push_back(row);
            continue;
        }
        const Complex val = eval_ell(mode, kernel, {0.0, y});
        row.abs_ell = std::abs(val);
        row.im_direct = val.imag();
        CompensatedSum s;
        for (const auto& t : kernel.terms)
            s.add(t.amplitude / (y * y + t.rate * t.rate));
        row.im_closed = y * coupling * s.value();
        check.min_abs = std::min(check.min_abs, row.abs_ell);
        const double mismatch = std::abs(row.im_direct - row.im_closed) /
                                std::max(std::abs(row.im_closed), 1e-300);
        check.max_rel_mismatch = std::max(check.max_rel_mismatch, mismatch);
        check.rows.push_back(row);
    }
    return check;
}

}  // namespace voltspec

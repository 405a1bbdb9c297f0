#pragma once

#include <vector>

#include "voltspec/symbol.hpp"

namespace voltspec {

enum class Verdict { Stable, Unstable, Indeterminate };

const char* verdict_name(Verdict v);

struct UnstableRoot {
    int mode_index = 0;  // position in the supplied mode list
    double root = 0.0;   // positive real zero
};

struct StabilityReport {
    double s_lo = 0.0;
    double s_hi = 0.0;
    std::vector<double> thresholds;  // a_n^{2(1-theta)} per mode
    Verdict verdict = Verdict::Stable;
    int unstable_count = 0;  // N0
    std::vector<UnstableRoot> unstable_roots;
};

StabilityReport classify(const ExponentialKernel& kernel, const std::vector<Mode>& modes);

/// Positive real zero of an unstable mode (S strictly above the threshold,
/// judged at the interval's lower end). Throws ValidationError otherwise.
double unstable_root(const Mode& mode, const ExponentialKernel& kernel);

struct AxisRow {
    double y = 0.0;
    double abs_ell = 0.0;        // |ell(iy)|
    double im_direct = 0.0;      // Im ell(iy) by direct evaluation
    double im_closed = 0.0;      // y a^{2 theta} sum c_k/(y^2+gamma_k^2)
    double re_at_origin = 0.0;   // only for y = 0: Re ell(0)
};

struct AxisCheck {
    std::vector<AxisRow> rows;
    double min_abs = 0.0;           // min over nonzero grid points of |ell(iy)|
    double max_rel_mismatch = 0.0;  // worst |direct - closed| / |closed|
};

AxisCheck imaginary_axis_check(const Mode& mode, const ExponentialKernel& kernel,
                               const std::vector<double>& y_grid);

}  // namespace voltspec

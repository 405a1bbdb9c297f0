#pragma once

#include "voltspec/symbol.hpp"

namespace voltspec {

/// One randomized verification case: a finite kernel and a mode.
struct SuiteCase {
    ExponentialKernel kernel;
    Mode mode;
};

/// Draws a kernel/mode pair for the randomized verification suites:
/// N <= 12 terms, rate ratios <= 1e3, a in [1, 1e3],
/// theta in {0, 0.25, 0.5, 0.75, 1}. With `stable_only` the amplitudes are
/// scaled so S < min(1, a^{2(1-theta)}); otherwise S lands on either side of
/// the per-mode threshold, kept at least 1e-5 away from it.
SuiteCase draw_suite_case(SplitMix64& rng, bool stable_only);

/// Kernel draw for the ray-decay probes: all rates below 8 so that the
/// per-term moduli are monotone from radius 10 outward on the probed rays.
SuiteCase draw_probe_case(SplitMix64& rng);

}  // namespace voltspec

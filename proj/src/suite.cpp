#include "voltspec/suite.hpp"

#include <cmath>

namespace voltspec {

namespace {

ExponentialKernel draw_kernel(SplitMix64& rng, int max_terms, double rate_lo,
                              double rate_hi_first, double ratio_lo, double ratio_hi) {
    const int n = 1 + static_cast<int>(rng.uniform_index(max_terms));
    std::vector<std::pair<double, double>> terms;
    terms.reserve(n);
    double rate = rng.uniform(rate_lo, rate_hi_first);
    for (int j = 0; j < n; ++j) {
        terms.emplace_back(rng.uniform(0.05, 1.5), rate);
        rate *= rng.uniform(ratio_lo, ratio_hi);
    }
    return make_exponential(std::move(terms));
}

void scale_l1_to(ExponentialKernel& kernel, double target) {
    const double scale = target / kernel.partial_l1();
    for (auto& t : kernel.terms) t.amplitude *= scale;
}

}  // namespace

SuiteCase draw_suite_case(SplitMix64& rng, bool stable_only) {
    // ratio cap 1.7^11 ~ 342 keeps gamma_N / gamma_1 <= 1e3
    ExponentialKernel kernel = draw_kernel(rng, 12, 0.5, 3.0, 1.2, 1.7);
    const double theta = 0.25 * static_cast<double>(rng.uniform_index(5));
    const double a = std::exp(rng.uniform(0.0, std::log(1000.0)));
    const double threshold = std::pow(a, 2.0 * (1.0 - theta));

    double target;
    if (stable_only) {
        target = rng.uniform(0.05, 0.85) * std::min(1.0, threshold);
    } else {
        do {
            target = rng.uniform(0.05, 1.8) * threshold;
        } while (std::abs(target - threshold) <= 1e-5 * threshold);
    }
    scale_l1_to(kernel, target);
    return {std::move(kernel), Mode{a, theta}};
}

SuiteCase draw_probe_case(SplitMix64& rng) {
    // 1.5^5 ~ 7.6: all rates stay below 8
    ExponentialKernel kernel = draw_kernel(rng, 6, 0.3, 1.0, 1.2, 1.5);
    const double theta = 0.25 * static_cast<double>(rng.uniform_index(5));
    const double a = std::exp(rng.uniform(0.0, std::log(100.0)));
    scale_l1_to(kernel, rng.uniform(0.05, 0.85) * std::min(1.0, std::pow(a, 2.0 * (1.0 - theta))));
    return {std::move(kernel), Mode{a, theta}};
}

}  // namespace voltspec

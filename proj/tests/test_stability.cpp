#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "voltspec/oracle.hpp"
#include "voltspec/stability.hpp"
#include "voltspec/suite.hpp"

using namespace voltspec;
using namespace voltspec::testing;

TEST_CASE("classify verdicts and unstable counts") {
    const auto small = make_exponential({{1.0, 2.0}});
    const auto rep = classify(small, {{1.0, 0.0}, {2.0, 0.0}, {3.0, 0.0}});
    CHECK(rep.verdict == Verdict::Stable);
    CHECK(rep.unstable_count == 0);
    CHECK(rep.s_lo == doctest::Approx(0.5));

    // S = 2: only a = 1 (threshold 1) is unstable at theta = 0
    const auto big = make_exponential({{4.0, 2.0}});
    const auto rep2 = classify(big, {{1.0, 0.0}, {2.0, 0.0}});
    CHECK(rep2.verdict == Verdict::Unstable);
    CHECK(rep2.unstable_count == 1);
    REQUIRE(rep2.unstable_roots.size() == 1);
    CHECK(rep2.unstable_roots[0].mode_index == 0);

    // theta = 1 makes every threshold 1 < 2: all modes unstable
    const auto rep3 = classify(big, {{1.0, 1.0}, {2.0, 1.0}});
    CHECK(rep3.unstable_count == 2);

    CHECK_THROWS_AS(classify(small, {}), ValidationError);
    CHECK_THROWS_AS(classify(small, {{2.0, 0.0}, {1.0, 0.0}}), ValidationError);
}

TEST_CASE("truncation tail straddling the threshold gives Indeterminate") {
    auto kernel = make_exponential({{0.999, 1.0}});
    kernel.tail_l1 = 0.002;  // interval [0.999, 1.001] straddles threshold 1
    const auto rep = classify(kernel, {{1.0, 0.0}});
    CHECK(rep.verdict == Verdict::Indeterminate);
    CHECK(rep.unstable_count == 0);
}

TEST_CASE("unstable root values") {
    const auto big = make_exponential({{4.0, 2.0}});
    CHECK(close(unstable_root(Mode{1.0, 0.0}, big), 0.69562076955986206, 1e-10));
    // theta = 1 at a = 1 gives the same cubic
    CHECK(close(unstable_root(Mode{1.0, 1.0}, big), 0.69562076955986206, 1e-10));

    const auto small = make_exponential({{1.0, 2.0}});
    CHECK_THROWS_AS(unstable_root(Mode{1.0, 0.0}, small), ValidationError);
}

TEST_CASE("imaginary axis exclusion") {
    const auto kernel = make_exponential({{1.0, 2.0}});
    const Mode mode{1.0, 0.0};
    const auto check = imaginary_axis_check(mode, kernel, {0.0, 1.0, 2.0, 10.0});
    REQUIRE(check.rows.size() == 4);

    CHECK(check.rows[0].re_at_origin == doctest::Approx(0.5));
    CHECK(check.rows[1].abs_ell == doctest::Approx(std::hypot(0.4, 0.2)));
    CHECK(check.rows[1].im_direct == doctest::Approx(0.2));
    CHECK(check.rows[1].im_closed == doctest::Approx(1.0 / 5.0));
    CHECK(check.max_rel_mismatch <= 1e-12);
    CHECK(check.min_abs > 0.0);

    // negative y flips the sign of Im ell
    const auto neg = imaginary_axis_check(mode, kernel, {-1.0});
    CHECK(neg.rows[0].im_direct == doctest::Approx(-0.2));
}

TEST_CASE("classifier agrees with the rightmost oracle root sign") {
    SplitMix64 rng(4242);
    int checked = 0;
    for (int i = 0; i < 100; ++i) {
        const auto c = draw_suite_case(rng, false);
        const auto rep = classify(c.kernel, {c.mode});
        const auto eigs = matrix_eigs(augmented_matrix(c.mode, c.kernel));
        double rightmost = -1e300;
        for (const auto& e : eigs) rightmost = std::max(rightmost, e.real());
        if (rep.verdict == Verdict::Stable) CHECK(rightmost < 0.0);
        if (rep.verdict == Verdict::Unstable) CHECK(rightmost > 0.0);
        CHECK(rep.verdict != Verdict::Indeterminate);
        ++checked;
    }
    CHECK(checked == 100);
}

TEST_CASE("unstable roots satisfy the defining scalar equation") {
    const auto big = make_exponential({{4.0, 2.0}});
    const Mode mode{1.0, 0.0};
    const double x = unstable_root(mode, big);
    const double lhs = x * x + 1.0;
    const double rhs = 4.0 / (x + 2.0);
    CHECK(close_rel(lhs, rhs, 1e-10));
}

#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "voltspec/asymptotics.hpp"
#include "voltspec/roots.hpp"

using namespace voltspec;
using namespace voltspec::testing;

TEST_CASE("finite-mass prediction plug-ins") {
    const auto k = make_exponential({{1.0, 2.0}, {2.0, 3.0}});
    const auto p = finite_mass_prediction(Mode{100.0, 0.0}, k);
    CHECK(p.re == doctest::Approx(-1.5e-4));
    CHECK(p.im == doctest::Approx(100.0));
    CHECK(p.order_re == doctest::Approx(4.0));
    CHECK(p.order_im == doctest::Approx(3.0));
    CHECK(p.regime.kind == Regime::FiniteSum);

    const auto single = make_exponential({{1.0, 2.0}});
    const auto p1 = finite_mass_prediction(Mode{1000.0, 1.0}, single);
    CHECK(p1.re == doctest::Approx(-0.5));
    CHECK(p1.im == doctest::Approx(1000.0));
    CHECK(p1.order_re == doctest::Approx(2.0));

    const auto divergent = from_power_law({1.0, 1.0, 1.0, 1.0, 10});
    CHECK_THROWS_AS(finite_mass_prediction(Mode{10.0, 0.0}, divergent), ValidationError);
}

TEST_CASE("residue constants: quadrature, split integrals, closed form") {
    // r = 1/2: D = (pi/4)(sqrt 2 + i sqrt 2)
    const auto rc = residue_constants(0.5);
    CHECK(close(rc.quadrature.real(), 1.1107207345395916, 1e-11));
    CHECK(close(rc.quadrature.imag(), 1.1107207345395916, 1e-11));
    CHECK(close(std::abs(rc.quadrature), kPi / 2.0, 1e-11));
    // the classical closed form lands at the opposite sign
    CHECK(close(rc.closed_form.real(), -1.1107207345395916, 1e-12));
    CHECK(close(rc.closed_form.imag(), -1.1107207345395916, 1e-12));
    CHECK(close_c(rc.quadrature, -rc.closed_form, 1e-9));

    // d1 matches (pi/4) sec(pi r / 2) across the range (analytic oracle)
    for (double r : {0.1, 0.25, 0.5, 0.75, 0.9}) {
        const auto c = residue_constants(r);
        CHECK(close_c(c.quadrature, c.split_real, 1e-9));
        CHECK(close(std::abs(c.quadrature), kPi / (2.0 * std::sin(kPi * r)), 1e-9));
        CHECK(close(c.modulus_identity(), kPi / (2.0 * std::sin(kPi * r)), 1e-14));
        CHECK(close_rel(c.d1, kPi / 4.0 / std::cos(kPi * r / 2.0), 1e-10));
        CHECK(close_rel(c.d2, -kPi / 4.0 / std::sin(kPi * r / 2.0), 1e-10));
    }
    CHECK(residue_constants(0.25).quadrature.imag() ==
          doctest::Approx(2.0523443059540618).epsilon(1e-10));

    CHECK_THROWS_AS(residue_constants(0.0), ValidationError);
    CHECK_THROWS_AS(residue_constants(1.0), ValidationError);
    CHECK_FALSE(ResidueConstants::sign_note().empty());
}

TEST_CASE("power-law prediction cases") {
    // r = 0.75, theta = 0.875: n1 = 0, Re -> -D1/2
    const PowerLawFamily family{1.0, 1.0, 0.5, 2.0, 64};
    CHECK(family.r() == doctest::Approx(0.75));
    const auto p = power_law_prediction(Mode{100.0, 0.875}, family);
    CHECK(p.re == doctest::Approx(-1.0261721529770309).epsilon(1e-9));
    CHECK(*p.n1 == doctest::Approx(0.0));
    CHECK(p.regime.kind == Regime::ConstantAbscissa);
    CHECK(*p.regime.theta_constant == doctest::Approx(-1.0261721529770309).epsilon(1e-9));

    // r = 1 log case
    const PowerLawFamily log_family{1.0, 1.0, 1.0, 1.0, 64};
    const double a = std::exp(10.0);
    const auto pl = power_law_prediction(Mode{a, 0.5}, log_family);
    CHECK(pl.re == doctest::Approx(-0.5 * 10.0 / a).epsilon(1e-12));
    CHECK(pl.im == doctest::Approx(a));
    CHECK(pl.order_re == doctest::Approx(1.0));
    CHECK(pl.regime.log_case);

    // r = 0.75, theta = 0.3: n1 = 1.15 > 0, axis approach
    const auto pa = power_law_prediction(Mode{50.0, 0.3}, family);
    CHECK(*pa.n1 == doctest::Approx(1.15));
    CHECK(pa.regime.kind == Regime::ApproachAxis);
    CHECK(pa.re < 0.0);
}

TEST_CASE("regime classification") {
    const PowerLawFamily family{1.0, 1.0, 0.5, 2.0, 64};  // r = 0.75
    CHECK(regime_classify(family, 0.875).kind == Regime::ConstantAbscissa);
    CHECK(*regime_classify(family, 0.875).theta_constant ==
          doctest::Approx(-1.0261721529770309).epsilon(1e-9));
    CHECK(regime_classify(family, 0.95).kind == Regime::DivergeLeft);
    CHECK(regime_classify(family, 0.3).kind == Regime::ApproachAxis);

    const PowerLawFamily log_family{1.0, 1.0, 1.0, 1.0, 64};
    const auto tag = regime_classify(log_family, 0.4);
    CHECK(tag.kind == Regime::ApproachAxis);
    CHECK(tag.log_case);

    // near-boundary annotation band
    CHECK(regime_classify(family, 0.875 + 1e-7).near_boundary);
    CHECK(regime_classify(family, 0.875 + 1e-7).kind == Regime::DivergeLeft);
    CHECK_FALSE(regime_classify(family, 0.95).near_boundary);

    // totality over a grid of (r, theta)
    for (double beta : {0.6, 1.0, 2.0, 5.0}) {
        for (double alpha : {0.1, 0.5, 1.0}) {
            if (alpha + beta <= 1.0) continue;
            const PowerLawFamily f{1.0, 1.0, alpha, beta, 16};
            for (double theta = 0.0; theta <= 1.0; theta += 0.125) {
                const auto t = regime_classify(f, theta);
                const bool one_of = t.kind == Regime::ApproachAxis ||
                                    t.kind == Regime::DivergeLeft ||
                                    t.kind == Regime::ConstantAbscissa;
                CHECK(one_of);
            }
        }
    }
}

TEST_CASE("convergence study for a finite kernel") {
    const auto kernel = make_exponential({{1.0, 2.0}});
    const std::vector<double> grid{1e2, 1e3, 1e4};

    const auto study0 = convergence_study(kernel, 0.0, grid);
    CHECK(study0.order_re == doctest::Approx(4.0));
    CHECK(study0.slope_re <= -3.7);
    CHECK(study0.slope_im <= -2.7);
    CHECK(study0.pass_re);
    CHECK(study0.pass_im);

    const auto study1 = convergence_study(kernel, 1.0, grid);
    CHECK(study1.order_re == doctest::Approx(2.0));
    CHECK(study1.slope_re <= -1.7);
    CHECK(study1.pass_re);

    CHECK_THROWS_AS(convergence_study(kernel, 0.0, {1e2, 1e3}), ValidationError);
    CHECK_THROWS_AS(convergence_study(kernel, 0.0, {10.0, 50.0, 100.0}), ValidationError);
}

TEST_CASE("study truncation grows with the eigenvalue") {
    const PowerLawFamily family{1.0, 1.0, 0.5, 2.0, 64};
    const int n2 = study_truncation(family, 0.875, 1e2);
    const int n4 = study_truncation(family, 0.875, 1e4);
    CHECK(n2 >= 8);
    CHECK(n4 > n2);
    CHECK(power_law_tail_l1(family, n4) <= 1e-3 * 1e-4 * 1.0001);
}

TEST_CASE("pair converges as the family truncation grows") {
    // the infinite-family pair is approached by truncated kernels; the
    // increments shrink as N doubles

    const PowerLawFamily base{1.0, 1.0, 0.5, 2.0, 1};
    const Mode mode{50.0, 0.5};
    Complex prev{0.0, 0.0};
    double prev_step = std::numeric_limits<double>::infinity();
    for (int n : {32, 64, 128, 256, 512}) {
        PowerLawFamily f = base;
        f.truncation = n;
        const Complex upper = complex_pair(mode, from_power_law(f)).upper;
        if (prev != Complex{0.0, 0.0}) {
            const double step = std::abs(upper - prev);
            CHECK(step < prev_step);
            prev_step = step;
        }
        prev = upper;
    }
    // increments track the l1 tail ~ N^{-3/2}: ~6e-5 at N = 512
    CHECK(prev_step < 2e-4);
}

TEST_CASE("family study: constant-abscissa convergence") {
    const PowerLawFamily family{1.0, 1.0, 0.5, 2.0, 64};
    const auto study = convergence_study(
        family, 0.875, {1e2, 316.22776601683796, 1e3, 3162.2776601683795, 1e4});
    // Re converges to the limiting abscissa with order 1 - r = 0.25
    CHECK(study.order_re == doctest::Approx(0.25));
    CHECK(study.slope_re <= -0.25 + 0.3);
    CHECK(study.slope_re >= -0.25 - 0.3);
    CHECK(study.pass_re);
    // a^{-1/4} decay is slow; assert the monotone approach, not arrival
    for (std::size_t i = 0; i + 1 < study.rows.size(); ++i)
        CHECK(study.rows[i + 1].err_re < study.rows[i].err_re);
    const double target = -1.0261721529770309;
    const double last = study.rows.back().computed.real();
    CHECK(close_rel(last, target, 0.08));
}

#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "voltspec/symbol.hpp"

using namespace voltspec;
using namespace voltspec::testing;

TEST_CASE("eval_ell plug-in values") {
    // vanishing kernel contribution: ell(ia) ~ 0
    const auto tiny = make_exponential({{1e-300, 1.0}});
    const Mode m2{2.0, 0.0};
    CHECK(std::abs(eval_ell(m2, tiny, {0.0, 2.0})) < 1e-12);

    const auto k = make_exponential({{1.0, 2.0}});
    const Mode m1{1.0, 0.0};
    CHECK(eval_ell(m1, k, {0.0, 0.0}).real() == doctest::Approx(0.5));
    const Complex at_i = eval_ell(m1, k, {0.0, 1.0});
    CHECK(at_i.real() == doctest::Approx(-0.4));
    CHECK(at_i.imag() == doctest::Approx(0.2));

    CHECK_THROWS_AS(eval_ell(Mode{0.5, 0.0}, k, {0.0, 0.0}), ValidationError);
    CHECK_THROWS_AS(eval_ell(Mode{1.0, 1.5}, k, {0.0, 0.0}), ValidationError);
}

TEST_CASE("eval_ell_deriv and finite differences") {
    const auto k = make_exponential({{1.0, 2.0}});
    const Mode m{1.0, 0.0};
    CHECK(eval_ell_deriv(m, k, {0.0, 0.0}).real() == doctest::Approx(0.25));
    CHECK(eval_ell_deriv(m, k, {1.0, 0.0}).real() == doctest::Approx(2.0 + 1.0 / 9.0));

    const Complex z{0.3, 0.7};
    const double h = 1e-6;
    const Complex fd = (eval_ell(m, k, z + h) - eval_ell(m, k, z - h)) / (2.0 * h);
    CHECK(std::abs(fd - eval_ell_deriv(m, k, z)) <= 1e-6);

    // derivative matches central differences on a grid
    const auto k2 = make_exponential({{0.5, 1.0}, {1.0, 4.0}});
    const Mode m2{3.0, 0.5};
    for (double re : {-0.4, 0.2, 1.3}) {
        for (double im : {0.5, 2.0}) {
            const Complex w{re, im};
            const Complex fdw =
                (eval_ell(m2, k2, w + h) - eval_ell(m2, k2, w - h)) / (2.0 * h);
            CHECK(std::abs(fdw - eval_ell_deriv(m2, k2, w)) <= 1e-5);
        }
    }
}

TEST_CASE("conjugate symmetry of the symbol") {
    const auto k = make_exponential({{1.0, 1.0}, {2.0, 3.0}});
    const Mode m{2.0, 0.75};
    for (double re : {-0.5, 0.0, 1.0}) {
        for (double im : {0.3, 2.0, 10.0}) {
            const Complex z{re, im};
            const Complex a = eval_ell(m, k, std::conj(z));
            const Complex b = std::conj(eval_ell(m, k, z));
            CHECK(a.real() == b.real());
            CHECK(a.imag() == b.imag());
        }
    }
}

TEST_CASE("theta interpolates the coupling monotonically") {
    const auto k = make_exponential({{1.0, 2.0}});
    const double x = 0.5;
    double prev = -1e300;
    for (double theta : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        // a^{2 theta} is increasing in theta for a > 1, so ell decreases
        const double coupling = std::pow(3.0, 2.0 * theta);
        CHECK(coupling > prev);
        prev = coupling;
        const Complex v = eval_ell(Mode{3.0, theta}, k, {x, 0.0});
        const double expected = x * x + 9.0 - coupling * (1.0 / (x + 2.0));
        CHECK(v.real() == doctest::Approx(expected));
    }
}

TEST_CASE("poly_coeffs hand-expanded cubics") {
    // (l^2+1)(l+2) - 1 = l^3 + 2l^2 + l + 1
    const auto k1 = make_exponential({{1.0, 2.0}});
    const auto p1 = poly_coeffs(Mode{1.0, 0.0}, k1);
    REQUIRE(p1.coeffs.size() == 4);
    CHECK(p1.coeffs[0] == doctest::Approx(1.0));
    CHECK(p1.coeffs[1] == doctest::Approx(2.0));
    CHECK(p1.coeffs[2] == doctest::Approx(1.0));
    CHECK(p1.coeffs[3] == doctest::Approx(1.0));

    // (l^2+1)(l+2) - 4 = l^3 + 2l^2 + l - 2
    const auto k4 = make_exponential({{4.0, 2.0}});
    const auto p4 = poly_coeffs(Mode{1.0, 0.0}, k4);
    CHECK(p4.coeffs[3] == doctest::Approx(-2.0));
}

TEST_CASE("poly_coeffs structural identities") {
    const auto kernel = make_exponential({{0.4, 0.7}, {1.1, 2.0}, {0.2, 5.5}});
    const Mode mode{3.0, 0.5};
    const auto poly = poly_coeffs(mode, kernel);
    REQUIRE(poly.degree() == 5);

    // coefficient of lambda^{N+1} equals sum of rates
    double rate_sum = 0.0;
    for (const auto& t : kernel.terms) rate_sum += t.rate;
    CHECK(poly.coeffs[1] == doctest::Approx(rate_sum).epsilon(1e-14));

    // constant term equals a^2 prod(gamma) (1 - S a^{-2(1-theta)})
    double prod = 1.0, s = 0.0;
    for (const auto& t : kernel.terms) {
        prod *= t.rate;
        s += t.amplitude / t.rate;
    }
    const double a = mode.eigenvalue;
    const double expected =
        a * a * prod * (1.0 - s * std::pow(a, -2.0 * (1.0 - mode.theta)));
    CHECK(poly.coeffs.back() == doctest::Approx(expected).epsilon(1e-13));

    // p(lambda) = ell(lambda) prod(lambda + gamma_k) at off-pole samples
    SplitMix64 rng(20240717);
    for (int i = 0; i < 100; ++i) {
        const Complex z{rng.uniform(-8.0, 4.0), rng.uniform(0.05, 6.0)};
        Complex denom{1.0, 0.0};
        for (const auto& t : kernel.terms) denom *= z + t.rate;
        const Complex lhs = eval_poly(poly, z);
        const Complex rhs = eval_ell(mode, kernel, z) * denom;
        CHECK(std::abs(lhs - rhs) <= 1e-9 * std::max(1.0, std::abs(rhs)));
    }
}

TEST_CASE("poly route cap") {
    std::vector<std::pair<double, double>> terms;
    for (int k = 1; k <= 70; ++k) terms.emplace_back(0.001, double(k));
    const auto big = make_exponential(std::move(terms));
    CHECK_THROWS_AS(poly_coeffs(Mode{1.0, 0.0}, big), ValidationError);
}

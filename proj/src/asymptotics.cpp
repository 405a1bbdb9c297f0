#include "voltspec/asymptotics.hpp"

#include <algorithm>
#include <cmath>

#include "voltspec/quadrature.hpp"
#include "voltspec/roots.hpp"

namespace voltspec {

namespace {

constexpr double kBoundaryTol = 1e-12;
constexpr double kBoundaryWarnBand = 1e-6;
constexpr int kMaxStudyTruncation = 2'000'000;

bool is_log_case(double r) { return r >= 1.0 - 1e-12; }

double limiting_abscissa(const PowerLawFamily& family, double d1) {
    const double r = family.r();
    return -family.amp * d1 / (family.beta * std::pow(family.scale, 1.0 - r));
}

/// Full-family value of sum c_k/gamma_k, partial sum plus integral tail.
double family_l1(const PowerLawFamily& family) {
    const double p = family.alpha + family.beta;
    CompensatedSum s;
    int k = 1;
    for (; k <= 200000; ++k) {
        s.add(family.amp / (family.scale * std::pow(k, p)));
        if (k >= 64 && power_law_tail_l1(family, k) < 1e-9 * s.value()) break;
    }
    return s.value() + power_law_tail_l1(family, k);
}

void validate_grid(const std::vector<double>& a_grid) {
    if (a_grid.size() < 3) throw ValidationError("eigenvalue grid needs >= 3 points");
    for (std::size_t i = 0; i + 1 < a_grid.size(); ++i)
        if (!(a_grid[i] < a_grid[i + 1]))
            throw ValidationError("eigenvalue grid must be increasing");
    if (!(a_grid.back() >= 1e3))
        throw ValidationError("largest grid point must reach 1e3");
}

ConvergenceStudy finish_study(std::vector<ConvergenceRow> rows, double order_re,
                              double order_im, std::vector<std::string> annotations) {
    ConvergenceStudy study;
    study.rows = std::move(rows);
    study.order_re = order_re;
    study.order_im = order_im;
    std::vector<double> a, ere, eim;
    for (const auto& row : study.rows) {
        a.push_back(row.eigenvalue);
        ere.push_back(row.err_re);
        eim.push_back(row.err_im);
    }
    study.slope_re = loglog_slope(a, ere);
    study.slope_im = loglog_slope(a, eim);
    study.pass_re = study.slope_re <= -order_re + 0.3;
    study.pass_im = study.slope_im <= -order_im + 0.3;
    study.annotations = std::move(annotations);
    return study;
}

}  // namespace

const char* regime_name(Regime r) {
    switch (r) {
        case Regime::FiniteSum: return "FiniteSum";
        case Regime::ApproachAxis: return "ApproachAxis";
        case Regime::DivergeLeft: return "DivergeLeft";
        case Regime::ConstantAbscissa: return "ConstantAbscissa";
    }
    return "Unknown";
}

double ResidueConstants::modulus_identity() const { return kPi / (2.0 * std::sin(kPi * r)); }

std::string ResidueConstants::sign_note() {
    return "the closed-form expression (pi/(2 sin pi r)) exp(-i pi (1+r)/2) evaluates to "
           "the negative of the quadrature value of (i/2) int_0^inf dt/(t^r (i+t)); the "
           "quadrature sign is adopted (d1 = Re D, d2 = -Im D), which keeps predicted "
           "abscissas negative in stable regimes";
}

ResidueConstants residue_constants(double r) {
    if (!(r > 0.0) || !(r < 1.0)) throw ValidationError("r must lie in (0, 1)");
    ResidueConstants rc;
    rc.r = r;
    const Complex half_i{0.0, 0.5};
    rc.quadrature = half_i * power_kernel_integral(r, kPi / 2.0, 0.0);
    // the same constant from the two real sub-integrals
    rc.split_real = half_i * mellin_quadratic_integral(2.0 - r) +
                    0.5 * mellin_quadratic_integral(1.0 - r);
    rc.closed_form = kPi / (2.0 * std::sin(kPi * r)) *
                     std::polar(1.0, -kPi / 2.0 * (1.0 + r));
    rc.d1 = rc.quadrature.real();
    rc.d2 = -rc.quadrature.imag();
    // internal guard: the quadrature must reproduce |D| = pi / (2 sin pi r)
    if (std::abs(std::abs(rc.quadrature) - rc.modulus_identity()) > 1e-9)
        throw ConvergenceError("residue quadrature failed the modulus identity");
    return rc;
}

AsymptoticPrediction finite_mass_prediction(const Mode& mode, const ExponentialKernel& kernel) {
    validate_mode(mode);
    if (kernel.mass_divergent())
        throw ValidationError("finite-mass prediction needs a convergent amplitude sum");
    const double a = mode.eigenvalue;
    const double mass = kernel.partial_mass() + kernel.tail_mass;

    AsymptoticPrediction p;
    p.re = -0.5 * mass * std::pow(a, -2.0 * (1.0 - mode.theta));
    p.im = a;
    p.order_re = 4.0 - 2.0 * mode.theta;
    p.order_im = 3.0 - 2.0 * mode.theta;
    p.regime = RegimeTag{Regime::FiniteSum, std::nullopt, false, false};
    return p;
}

RegimeTag regime_classify(const PowerLawFamily& family, double theta) {
    validate_family(family);
    if (!(theta >= 0.0 && theta <= 1.0)) throw ValidationError("theta must lie in [0, 1]");
    const double r = family.r();
    RegimeTag tag;
    if (is_log_case(r)) {
        tag.kind = Regime::ApproachAxis;
        tag.log_case = true;
        return tag;
    }
    const double boundary = (r + 1.0) / 2.0;
    const double dist = theta - boundary;
    if (std::abs(dist) <= kBoundaryTol) {
        tag.kind = Regime::ConstantAbscissa;
        tag.theta_constant = limiting_abscissa(family, residue_constants(r).d1);
    } else {
        tag.kind = dist < 0.0 ? Regime::ApproachAxis : Regime::DivergeLeft;
        tag.near_boundary = std::abs(dist) <= kBoundaryWarnBand;
    }
    return tag;
}

AsymptoticPrediction power_law_prediction(const Mode& mode, const PowerLawFamily& family) {
    validate_mode(mode);
    validate_family(family);
    const double a = mode.eigenvalue;
    const double theta = mode.theta;
    const double r = family.r();

    AsymptoticPrediction p;
    p.r = r;
    p.regime = regime_classify(family, theta);

    if (is_log_case(r)) {
        p.re = -0.5 * (family.amp / family.beta) * std::log(a) /
               std::pow(a, 2.0 * (1.0 - theta));
        p.im = a;
        p.order_re = p.order_im = 2.0 * (1.0 - theta);
        return p;
    }

    const double n1 = r + 2.0 * (0.5 - theta);
    const double n2 = std::min(2.0 * (1.0 - theta), 2.0 * r + 3.0 - 4.0 * theta);
    p.n1 = n1;
    p.n2 = n2;

    const ResidueConstants rc = residue_constants(r);
    const double coeff =
        family.amp * std::pow(family.scale, r - 1.0) / (family.beta * std::pow(a, n1));
    p.re = -rc.d1 * coeff;
    p.im = a + rc.d2 * coeff;

    const bool narrow_case = r < 0.5 && theta >= 0.5 && theta < 1.0;
    const bool wide_case = r >= 0.5 || (theta > 0.0 && theta < 0.5);
    p.order_re = p.order_im = narrow_case ? n2 : 2.0 * (1.0 - theta);
    if (!narrow_case && !wide_case)
        p.annotations.push_back("(r, theta) outside the stated case split; generic error "
                                "order 2(1-theta) used");
    if (n1 <= 0.0 && p.regime.kind != Regime::ConstantAbscissa)
        p.annotations.push_back("n1 <= 0: the correction term grows with the eigenvalue");
    return p;
}

int study_truncation(const PowerLawFamily& family, double theta, double a) {
    validate_family(family);
    const double p = family.alpha + family.beta;
    const double tail_coeff = (family.amp / family.scale) / (p - 1.0);
    const auto n_for = [&](double target) {
        const double n = std::pow(tail_coeff / target, 1.0 / (p - 1.0));
        return static_cast<int>(std::ceil(std::min(n, 2.0 * kMaxStudyTruncation)));
    };

    const double s = family_l1(family);
    const double base_target = 1e-3 * std::max(std::abs(1.0 - s), 1e-9);

    // a-dependent refinement: keep the truncation contribution to Re below
    // the asymptotic term measured at this grid point.
    const double r = family.r();
    const RegimeTag tag = regime_classify(family, theta);
    const double q = tag.kind == Regime::ConstantAbscissa ? 1.0 : r;
    const double refine_target = 1e-3 * std::pow(a, -q);

    const int n = std::max({n_for(base_target), n_for(refine_target), 8});
    return std::min(n, kMaxStudyTruncation);
}

ConvergenceStudy convergence_study(const ExponentialKernel& kernel, double theta,
                                   const std::vector<double>& a_grid) {
    validate_grid(a_grid);
    std::vector<ConvergenceRow> rows;
    double order_re = 0.0, order_im = 0.0;
    for (double a : a_grid) {
        const Mode mode{a, theta};
        const AsymptoticPrediction pred = finite_mass_prediction(mode, kernel);
        order_re = pred.order_re;
        order_im = pred.order_im;
        const ComplexPair pair = complex_pair(mode, kernel);
        ConvergenceRow row;
        row.eigenvalue = a;
        row.computed = pair.upper;
        row.predicted = {pred.re, pred.im};
        row.err_re = std::abs(pair.upper.real() - pred.re);
        row.err_im = std::abs(pair.upper.imag() - pred.im);
        row.truncation = static_cast<int>(kernel.size());
        rows.push_back(row);
    }
    return finish_study(std::move(rows), order_re, order_im, {});
}

ConvergenceStudy convergence_study(const PowerLawFamily& family, double theta,
                                   const std::vector<double>& a_grid) {
    validate_grid(a_grid);
    std::vector<ConvergenceRow> rows;
    std::vector<std::string> annotations;
    double order_re = 0.0, order_im = 0.0;
    for (double a : a_grid) {
        const Mode mode{a, theta};
        const int n = study_truncation(family, theta, a);
        PowerLawFamily truncated = family;
        truncated.truncation = n;
        const ExponentialKernel kernel = from_power_law(truncated);
        const AsymptoticPrediction pred = power_law_prediction(mode, family);
        order_re = pred.order_re;
        order_im = pred.order_im;
        for (const auto& note : pred.annotations)
            if (std::find(annotations.begin(), annotations.end(), note) == annotations.end())
                annotations.push_back(note);
        const ComplexPair pair = complex_pair(mode, kernel);
        ConvergenceRow row;
        row.eigenvalue = a;
        row.computed = pair.upper;
        row.predicted = {pred.re, pred.im};
        row.err_re = std::abs(pair.upper.real() - pred.re);
        row.err_im = std::abs(pair.upper.imag() - pred.im);
        row.truncation = n;
        rows.push_back(row);
    }
    return finish_study(std::move(rows), order_re, order_im, std::move(annotations));
}

}  // namespace voltspec

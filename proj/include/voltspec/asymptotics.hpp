#pragma once

#include <optional>
#include <string>
#include <vector>

#include "voltspec/kernel.hpp"
#include "voltspec/symbol.hpp"

namespace voltspec {

enum class Regime { FiniteSum, ApproachAxis, DivergeLeft, ConstantAbscissa };

struct RegimeTag {
    Regime kind = Regime::FiniteSum;
    /// limiting abscissa -A D1 / (beta B^{1-r}) for ConstantAbscissa
    std::optional<double> theta_constant;
    bool log_case = false;       // r = 1
    bool near_boundary = false;  // |theta - (r+1)/2| <= 1e-6 but not on it
};

const char* regime_name(Regime r);

/// D = (i/2) int_0^inf dt / (t^r (i + t)) and derived real constants.
/// d1 = Re D, d2 = -Im D; this sign choice keeps predicted abscissas negative
/// in stable regimes. The classical closed form (pi / (2 sin pi r))
/// exp(-i pi (1+r)/2) evaluates to the negative of the quadrature value and
/// is carried for diagnostics only.
struct ResidueConstants {
    double r = 0.0;
    Complex quadrature;   // D by direct quadrature of the complex integrand
    Complex split_real;   // D assembled from the two real sub-integrals
    Complex closed_form;  // the classical closed-form expression
    double d1 = 0.0;
    double d2 = 0.0;

    [[nodiscard]] double modulus_identity() const;  // pi / (2 sin pi r)
    [[nodiscard]] static std::string sign_note();
};

ResidueConstants residue_constants(double r);

struct AsymptoticPrediction {
    double re = 0.0;
    double im = 0.0;
    double order_re = 0.0;  // exponent of the error term for Re
    double order_im = 0.0;
    RegimeTag regime;
    std::optional<double> r;
    std::optional<double> n1;  // r + 2(1/2 - theta)
    std::optional<double> n2;  // min(2(1-theta), 2r + 3 - 4 theta)
    std::vector<std::string> annotations;
};

/// Finite-mass prediction: re = -sum(c)/2 a^{-2(1-theta)}, im = a_n.
AsymptoticPrediction finite_mass_prediction(const Mode& mode, const ExponentialKernel& kernel);

/// Power-law prediction (three cases by r and theta).
AsymptoticPrediction power_law_prediction(const Mode& mode, const PowerLawFamily& family);

RegimeTag regime_classify(const PowerLawFamily& family, double theta);

struct ConvergenceRow {
    double eigenvalue = 0.0;
    Complex computed;
    Complex predicted;
    double err_re = 0.0;
    double err_im = 0.0;
    int truncation = 0;  // kernel size used at this grid point
};

struct ConvergenceStudy {
    std::vector<ConvergenceRow> rows;
    double slope_re = 0.0;
    double slope_im = 0.0;
    double order_re = 0.0;
    double order_im = 0.0;
    bool pass_re = false;  // slope_re <= -order_re + 0.3
    bool pass_im = false;
    std::vector<std::string> annotations;
};

ConvergenceStudy convergence_study(const ExponentialKernel& kernel, double theta,
                                   const std::vector<double>& a_grid);

ConvergenceStudy convergence_study(const PowerLawFamily& family, double theta,
                                   const std::vector<double>& a_grid);

/// Truncation for family studies at eigenvalue a: the base tail rule
/// tail < 1e-3 |1 - S| refined so the truncation error stays below the
/// asymptotic term being measured at that a.
int study_truncation(const PowerLawFamily& family, double theta, double a);

}  // namespace voltspec

#include "voltspec/oracle.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace voltspec {

namespace {

constexpr int kMaxEigenDim = 66;

/// Parlett-Reinsch balancing: scale row/column pairs by powers of two until
/// the 1-norms stop improving. Companion matrices of kernels with wide gamma
/// spreads are badly scaled without this.
void balance_in_place(Eigen::MatrixXd& m) {
    const int n = static_cast<int>(m.rows());
    Eigen::MatrixXd off = m;
    off.diagonal().setZero();
    const double gamma = 0.9;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int i = 0; i < n; ++i) {
            const double row_norm = off.row(i).lpNorm<1>();
            const double col_norm = off.col(i).lpNorm<1>();
            if (row_norm == 0.0 || col_norm == 0.0) continue;
            int exponent = 0;
            std::frexp(row_norm / col_norm, &exponent);
            exponent /= 2;
            if (exponent != 0) {
                const double scaled_col = std::ldexp(col_norm, exponent);
                const double scaled_row = std::ldexp(row_norm, -exponent);
                if (scaled_col + scaled_row < gamma * (col_norm + row_norm)) {
                    changed = true;
                    off.row(i) *= std::ldexp(1.0, -exponent);
                    off.col(i) *= std::ldexp(1.0, exponent);
                }
            }
        }
    }
    off.diagonal() = m.diagonal();
    m = off;
}

std::vector<Complex> solve_eigs(Eigen::MatrixXd m) {
    balance_in_place(m);
    Eigen::EigenSolver<Eigen::MatrixXd> solver(m, false);
    if (solver.info() != Eigen::Success)
        throw ConvergenceError("QR iteration failed to converge");
    std::vector<Complex> out;
    out.reserve(m.rows());
    for (int i = 0; i < m.rows(); ++i) out.push_back(solver.eigenvalues()(i));
    std::sort(out.begin(), out.end(), [](Complex a, Complex b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return out;
}

}  // namespace

std::vector<Complex> companion_roots(const SymbolPolynomial& poly) {
    const int degree = poly.degree();
    if (degree < 1) throw ValidationError("polynomial must have degree >= 1");
    if (degree > kMaxEigenDim)
        throw ValidationError("polynomial degree exceeds the eigensolver cap");
    if (poly.coeffs[0] != 1.0) throw ValidationError("polynomial must be monic");

    if (degree == 1) return {Complex{-poly.coeffs[1], 0.0}};

    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(degree, degree);
    companion.diagonal(-1).setOnes();
    for (int i = 0; i < degree; ++i)
        companion(i, degree - 1) = -poly.coeffs[degree - i];
    return solve_eigs(std::move(companion));
}

AugmentedMatrix augmented_matrix(const Mode& mode, const ExponentialKernel& kernel) {
    validate_mode(mode);
    const int n = static_cast<int>(kernel.size());
    const double a = mode.eigenvalue;
    const double coupling = std::pow(a, 2.0 * mode.theta);

    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n + 2, n + 2);
    m(0, 1) = 1.0;
    m(1, 0) = -a * a;
    for (int k = 0; k < n; ++k) {
        m(1, 2 + k) = coupling * kernel.terms[k].amplitude;
        m(2 + k, 0) = 1.0;
        m(2 + k, 2 + k) = -kernel.terms[k].rate;
    }
    return AugmentedMatrix{std::move(m)};
}

std::vector<Complex> matrix_eigs(const AugmentedMatrix& m) {
    if (m.dim() > kMaxEigenDim)
        throw ValidationError("matrix dimension exceeds the eigensolver cap");
    return solve_eigs(m.entries);
}

VietaResiduals vieta_check(const SymbolPolynomial& poly, const std::vector<Complex>& roots) {
    const int degree = poly.degree();
    if (static_cast<int>(roots.size()) != degree)
        throw ValidationError("root list size must match the polynomial degree");

    CompensatedComplexSum sum;
    Complex prod{1.0, 0.0};
    for (const auto& r : roots) {
        sum.add(r);
        prod *= r;
    }
    // monic: sum roots = -c1, prod roots = (-1)^d * c_d
    const double c1 = poly.coeffs[1];
    const double cd = poly.coeffs[degree];
    const double prod_sign = (degree % 2 == 0) ? 1.0 : -1.0;

    VietaResiduals res;
    res.sum_residual = std::abs(sum.value() + c1) / std::max(1.0, std::abs(c1));
    res.prod_residual = std::abs(prod - prod_sign * cd) / std::max(1.0, std::abs(cd));
    return res;
}

double match_distance(std::vector<Complex> a, std::vector<Complex> b) {
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    const auto lex = [](Complex x, Complex y) {
        return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
    };
    std::sort(a.begin(), a.end(), lex);
    std::sort(b.begin(), b.end(), lex);
    double worst = 0.0;
    std::vector<bool> used(b.size(), false);
    for (const auto& x : a) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t best_j = 0;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (used[j]) continue;
            const double d = std::abs(x - b[j]);
            if (d < best) {
                best = d;
                best_j = j;
            }
        }
        used[best_j] = true;
        worst = std::max(worst, best);
    }
    return worst;
}

CrosscheckReport crosscheck(const Mode& mode, const ExponentialKernel& kernel) {
    const auto slice = full_slice(mode, kernel);
    const auto poly = poly_coeffs(mode, kernel);
    const auto companion = companion_roots(poly);
    const auto matrix = matrix_eigs(augmented_matrix(mode, kernel));
    const auto analytic = slice.all_zeros();

    CrosscheckReport report;
    report.analytic_vs_companion = match_distance(analytic, companion);
    report.analytic_vs_matrix = match_distance(analytic, matrix);
    report.companion_vs_matrix = match_distance(companion, matrix);
    report.max_distance = std::max({report.analytic_vs_companion, report.analytic_vs_matrix,
                                    report.companion_vs_matrix});

    double max_mag = 0.0;
    for (const auto& r : companion) max_mag = std::max(max_mag, std::abs(r));
    report.tolerance = 1e-8 * (1.0 + max_mag);
    report.vieta = vieta_check(poly, companion);
    report.pass = report.max_distance <= report.tolerance;
    return report;
}

}  // namespace voltspec

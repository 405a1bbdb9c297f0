#pragma once

#include <Eigen/Dense>

#include "voltspec/roots.hpp"
#include "voltspec/symbol.hpp"

namespace voltspec {

/// Linearization of the modal convolution system: state (u, v, w_1..w_N) with
/// u' = v, v' = -a^2 u + a^{2 theta} sum c_k w_k, w_k' = u - gamma_k w_k.
/// Its eigenvalues are exactly the zeros of the symbol.
struct AugmentedMatrix {
    Eigen::MatrixXd entries;

    [[nodiscard]] int dim() const { return static_cast<int>(entries.rows()); }
};

std::vector<Complex> companion_roots(const SymbolPolynomial& poly);

AugmentedMatrix augmented_matrix(const Mode& mode, const ExponentialKernel& kernel);

std::vector<Complex> matrix_eigs(const AugmentedMatrix& m);

struct VietaResiduals {
    double sum_residual = 0.0;
    double prod_residual = 0.0;
};

VietaResiduals vieta_check(const SymbolPolynomial& poly, const std::vector<Complex>& roots);

struct CrosscheckReport {
    double max_distance = 0.0;     // worst matched-pair distance across routes
    double tolerance = 0.0;        // 1e-8 (1 + |lambda|) at the worst pair
    bool pass = false;
    double analytic_vs_companion = 0.0;
    double analytic_vs_matrix = 0.0;
    double companion_vs_matrix = 0.0;
    VietaResiduals vieta;
};

/// Greedy nearest-neighbor distance between two root lists after sorting by
/// (Re, Im); adequate because the pole structure separates the zeros.
double match_distance(std::vector<Complex> a, std::vector<Complex> b);

CrosscheckReport crosscheck(const Mode& mode, const ExponentialKernel& kernel);

}  // namespace voltspec

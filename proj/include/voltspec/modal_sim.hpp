#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "voltspec/symbol.hpp"

namespace voltspec {

/// Initial-value system for one mode: state (u, v, w_1..w_N), w_k(0) = 0.
struct ModalSystem {
    Mode mode;
    Eigen::MatrixXd matrix;   // the augmented system matrix
    Eigen::VectorXd state0;   // (u0, v0, 0, ..., 0)
    double max_rate = 0.0;    // max(a_n, gamma_N), for the step-size bound
};

struct SimTrace {
    std::vector<double> times;
    std::vector<double> u;
    std::vector<double> v;
    std::vector<double> energy;  // E(t) = a^2 u^2 + v^2
    double eigenvalue = 1.0;     // a_n, kept for energy bookkeeping
};

enum class FitKind { PeakEnvelope, MonotoneTail };

struct DecayFit {
    double rate = 0.0;  // least-squares slope of log E; ~ 2 Re(dominant zero)
    FitKind kind = FitKind::PeakEnvelope;
    int peaks = 0;
    std::string annotation;
};

struct ConsistencyReport {
    double fitted_rate = 0.0;
    double abscissa = 0.0;       // max Re over the system's eigenvalues
    double rel_mismatch = 0.0;   // |rate/2 - abscissa| / max(|abscissa|, 1e-6)
    bool pass = false;           // rel_mismatch <= 0.05
    bool pair_dominant = false;  // complex pair leads the spectrum by >= 0.05
    FitKind fit_kind = FitKind::PeakEnvelope;
    std::string annotation;
};

ModalSystem assemble(const Mode& mode, const ExponentialKernel& kernel, double u0,
                     double v0);

/// Classical fixed-step 4th-order Runge-Kutta. Rejects dt > 0.1 / max_rate.
SimTrace integrate(const ModalSystem& system, double total_time, double dt);

DecayFit decay_rate(const SimTrace& trace);

ConsistencyReport abscissa_consistency(const Mode& mode, const ExponentialKernel& kernel,
                                       double total_time, double dt);

}  // namespace voltspec

#include "voltspec/modal_sim.hpp"

#include <cmath>

#include "voltspec/oracle.hpp"

namespace voltspec {

ModalSystem assemble(const Mode& mode, const ExponentialKernel& kernel, double u0,
                     double v0) {
    validate_mode(mode);
    ModalSystem system;
    system.mode = mode;
    system.matrix = augmented_matrix(mode, kernel).entries;
    system.state0 = Eigen::VectorXd::Zero(system.matrix.rows());
    system.state0(0) = u0;
    system.state0(1) = v0;
    system.max_rate = std::max(mode.eigenvalue, kernel.terms.back().rate);
    return system;
}

SimTrace integrate(const ModalSystem& system, double total_time, double dt) {
    if (!(total_time > 0.0) || !(dt > 0.0))
        throw ValidationError("time span and step must be positive");
    if (dt > 0.1 / system.max_rate)
        throw ValidationError("step too large: dt must be <= 0.1 / max(a_n, gamma_N)");

    const auto steps = static_cast<std::size_t>(std::llround(total_time / dt));
    const double a = system.mode.eigenvalue;
    const Eigen::MatrixXd& m = system.matrix;

    SimTrace trace;
    trace.eigenvalue = a;
    trace.times.reserve(steps + 1);
    trace.u.reserve(steps + 1);
    trace.v.reserve(steps + 1);
    trace.energy.reserve(steps + 1);

    Eigen::VectorXd x = system.state0;
    Eigen::VectorXd k1(x.size()), k2(x.size()), k3(x.size()), k4(x.size());
    const auto record = [&](double t) {
        trace.times.push_back(t);
        trace.u.push_back(x(0));
        trace.v.push_back(x(1));
        trace.energy.push_back(a * a * x(0) * x(0) + x(1) * x(1));
    };

    record(0.0);
    for (std::size_t i = 1; i <= steps; ++i) {
        k1 = m * x;
        k2 = m * (x + 0.5 * dt * k1);
        k3 = m * (x + 0.5 * dt * k2);
        k4 = m * (x + dt * k3);
        x += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        record(static_cast<double>(i) * dt);
    }
    return trace;
}

DecayFit decay_rate(const SimTrace& trace) {
    const std::size_t n = trace.energy.size();
    if (n < 8) throw InsufficientDataError("trace too short for a rate fit");

    std::vector<double> peak_t, peak_log_e;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double e = trace.energy[i];
        if (e > trace.energy[i - 1] && e > trace.energy[i + 1] && e > 0.0) {
            peak_t.push_back(trace.times[i]);
            peak_log_e.push_back(std::log(e));
        }
    }

    DecayFit fit;
    fit.peaks = static_cast<int>(peak_t.size());
    if (fit.peaks >= 10) {
        fit.rate = fit_slope(peak_t, peak_log_e);
        fit.kind = FitKind::PeakEnvelope;
        return fit;
    }

    // Too few envelope peaks: accept an eventually monotone energy (pure
    // growth or decay) and fit log E on the tail half, annotated.
    const std::size_t start = n / 2;
    bool inc = true, dec = true;
    for (std::size_t i = start + 1; i < n; ++i) {
        if (trace.energy[i] < trace.energy[i - 1]) inc = false;
        if (trace.energy[i] > trace.energy[i - 1]) dec = false;
    }
    if ((inc || dec) && trace.energy[start] > 0.0) {
        std::vector<double> t, log_e;
        for (std::size_t i = start; i < n; ++i) {
            if (!(trace.energy[i] > 0.0)) throw InsufficientDataError("energy hit zero");
            t.push_back(trace.times[i]);
            log_e.push_back(std::log(trace.energy[i]));
        }
        fit.rate = fit_slope(t, log_e);
        fit.kind = FitKind::MonotoneTail;
        fit.annotation = "fewer than 10 envelope peaks; log-linear fit on the monotone tail";
        return fit;
    }
    throw InsufficientDataError("fewer than 10 envelope peaks and the tail is not monotone");
}

ConsistencyReport abscissa_consistency(const Mode& mode, const ExponentialKernel& kernel,
                                       double total_time, double dt) {
    const ModalSystem system = assemble(mode, kernel, 1.0, 0.0);
    const SimTrace trace = integrate(system, total_time, dt);
    const DecayFit fit = decay_rate(trace);

    const auto eigs = matrix_eigs(augmented_matrix(mode, kernel));
    double abscissa = -std::numeric_limits<double>::infinity();
    double pair_re = -std::numeric_limits<double>::infinity();
    double real_re = -std::numeric_limits<double>::infinity();
    for (const auto& e : eigs) {
        abscissa = std::max(abscissa, e.real());
        if (std::abs(e.imag()) > 1e-9)
            pair_re = std::max(pair_re, e.real());
        else
            real_re = std::max(real_re, e.real());
    }

    ConsistencyReport report;
    report.fitted_rate = fit.rate;
    report.abscissa = abscissa;
    report.fit_kind = fit.kind;
    report.annotation = fit.annotation;
    report.pair_dominant = pair_re > real_re + 0.05;
    report.rel_mismatch =
        std::abs(fit.rate / 2.0 - abscissa) / std::max(std::abs(abscissa), 1e-6);
    report.pass = report.rel_mismatch <= 0.05;
    return report;
}

}  // namespace voltspec

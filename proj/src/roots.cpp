#include "voltspec/roots.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "voltspec/oracle.hpp"

namespace voltspec {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

/// Evaluation of the symbol (and of the reduced function) at x = psi - gamma_m
/// for a fixed anchor pole gamma_m. Working in the pole gap psi instead of x
/// keeps full relative resolution for zeros that cluster onto the pole.
class AnchoredEval {
public:
    AnchoredEval(const Mode& mode, const ExponentialKernel& kernel, int anchor)
        : mode_(mode), kernel_(kernel), anchor_rate_(kernel.terms[anchor].rate) {
        coupling_ = std::pow(mode.eigenvalue, 2.0 * mode.theta);
        inv_coupling_ = std::pow(mode.eigenvalue, -2.0 * (1.0 - mode.theta));
        deltas_.reserve(kernel.size());
        for (const auto& t : kernel.terms) deltas_.push_back(t.rate - anchor_rate_);
    }

    [[nodiscard]] double x_of(double psi) const { return psi - anchor_rate_; }
    [[nodiscard]] double anchor_rate() const { return anchor_rate_; }

    [[nodiscard]] double sum(double psi) const {
        CompensatedSum s;
        for (std::size_t j = 0; j < deltas_.size(); ++j)
            s.add(kernel_.terms[j].amplitude / (psi + deltas_[j]));
        return s.value();
    }

    [[nodiscard]] double sum_sq(double psi) const {
        CompensatedSum s;
        for (std::size_t j = 0; j < deltas_.size(); ++j) {
            const double d = psi + deltas_[j];
            s.add(kernel_.terms[j].amplitude / (d * d));
        }
        return s.value();
    }

    [[nodiscard]] double sum_abs(double psi) const {
        CompensatedSum s;
        for (std::size_t j = 0; j < deltas_.size(); ++j)
            s.add(kernel_.terms[j].amplitude / std::abs(psi + deltas_[j]));
        return s.value();
    }

    [[nodiscard]] double ell(double psi) const {
        const double x = x_of(psi);
        const double a = mode_.eigenvalue;
        return x * x + a * a - coupling_ * sum(psi);
    }

    [[nodiscard]] double ell_deriv(double psi) const {
        return 2.0 * x_of(psi) + coupling_ * sum_sq(psi);
    }

    [[nodiscard]] double reduced(double psi) const {
        return 1.0 - inv_coupling_ * sum(psi);
    }

    [[nodiscard]] double reduced_deriv(double psi) const {
        return inv_coupling_ * sum_sq(psi);
    }

    [[nodiscard]] double ell_noise_scale(double psi) const {
        const double x = x_of(psi);
        const double a = mode_.eigenvalue;
        return x * x + a * a + coupling_ * sum_abs(psi);
    }

    [[nodiscard]] double reduced_noise_scale(double psi) const {
        return 1.0 + inv_coupling_ * sum_abs(psi);
    }

private:
    const Mode& mode_;
    const ExponentialKernel& kernel_;
    double anchor_rate_;
    double coupling_ = 1.0;
    double inv_coupling_ = 1.0;
    std::vector<double> deltas_;
};

using Fn = std::function<double(double)>;

struct Bracket {
    double lo, hi, flo, fhi;
};

/// Safeguarded secant/bisection on a sign-changing bracket. Alternates a
/// secant candidate with plain bisection so the bracket width is guaranteed
/// to halve every other step. Zeros can sit many orders of magnitude closer
/// to the pole (psi ~ c/a^2) than the configured absolute tolerance, so the
/// stop rule also demands 1% relative width; the Newton polish finishes from
/// there.
double solve_bracketed(const Fn& f, Bracket b, double xtol) {
    bool use_secant = true;
    for (int it = 0; it < 300; ++it) {
        const double width = b.hi - b.lo;
        const double mag = std::max(std::abs(b.lo), std::abs(b.hi));
        if (width <= std::max(4.0 * kEps * mag, std::min(xtol, 0.01 * mag))) break;
        double x = 0.0;
        if (use_secant && b.fhi != b.flo) {
            x = (b.lo * b.fhi - b.hi * b.flo) / (b.fhi - b.flo);
            const double margin = 0.01 * width;
            if (!std::isfinite(x) || x <= b.lo + margin || x >= b.hi - margin)
                x = 0.5 * (b.lo + b.hi);
        } else {
            x = 0.5 * (b.lo + b.hi);
        }
        use_secant = !use_secant;
        const double fx = f(x);
        if (fx == 0.0) return x;
        if ((fx < 0.0) == (b.flo < 0.0)) {
            b.lo = x;
            b.flo = fx;
        } else {
            b.hi = x;
            b.fhi = fx;
        }
    }
    return std::abs(b.flo) <= std::abs(b.fhi) ? b.lo : b.hi;
}

/// A few damped Newton steps confined to the bracket, to push the residual
/// down to the evaluation-noise floor.
double polish_in_bracket(const Fn& f, const Fn& fprime, double x, double lo, double hi) {
    double fx = f(x);
    for (int step = 0; step < 16; ++step) {
        const double d = fprime(x);
        if (d == 0.0 || !std::isfinite(d)) break;
        const double xn = x - fx / d;
        if (!(xn > lo && xn < hi)) break;
        const double fn = f(xn);
        if (!(std::abs(fn) < std::abs(fx))) break;
        x = xn;
        fx = fn;
    }
    return x;
}

struct IntervalZero {
    double psi = 0.0;       // gap to the anchor pole
    int anchor = 0;         // 0-based index of the anchor term
    bool left_anchor = true;
    double lo = 0.0, hi = 0.0;  // final bracket, anchor coordinates
    double residual = 0.0;
    double noise_scale = 0.0;
};

/// Finds the unique zero of fn inside the pole interval
/// (-gamma_k, -gamma_{k-1}), working in left-anchored coordinates
/// psi in (0, gap) and re-anchoring on the right pole when the zero falls in
/// the right part of the interval. `k` is 1-based; gap_1 reaches up to x = 0.
template <class ValueFn, class DerivFn, class NoiseFn>
IntervalZero locate_interval_zero(const ExponentialKernel& kernel, int k,
                                  const ValueFn& value_of, const DerivFn& deriv_of,
                                  const NoiseFn& noise_of,
                                  const std::vector<AnchoredEval>& anchors,
                                  double right_end_value) {
    const int left = k - 1;  // 0-based anchor of -gamma_k
    const double gap = (k >= 2)
                           ? kernel.terms[left].rate - kernel.terms[left - 1].rate
                           : kernel.terms[0].rate;
    const AnchoredEval& ae = anchors[left];
    const Fn f = [&](double psi) { return value_of(ae, psi); };
    const Fn fp = [&](double psi) { return deriv_of(ae, psi); };

    // Left endpoint: offset from the pole, shrunk geometrically until the
    // sign is right (the function blows down to -inf at the pole).
    double lo = 1e-9 * gap;
    double flo = f(lo);
    int tries = 0;
    while (!(flo < 0.0) && tries++ < 100) {
        lo /= 8.0;
        flo = f(lo);
    }
    if (!(flo < 0.0)) {
        std::ostringstream msg;
        msg << "no sign change near pole -" << kernel.terms[left].rate
            << " after offset refinement (interval " << k << ", last offset " << lo << ")";
        throw BracketError(msg.str());
    }

    double hi, fhi;
    if (k == 1) {
        hi = gap;  // x = 0, no pole there
        fhi = right_end_value;
    } else {
        double off = 1e-9 * gap;
        hi = gap - off;
        fhi = f(hi);
        tries = 0;
        while (!(fhi > 0.0) && tries++ < 100) {
            off /= 8.0;
            hi = gap - off;
            fhi = f(hi);
        }
        if (!(fhi > 0.0)) {
            std::ostringstream msg;
            msg << "no sign change near pole -" << kernel.terms[left - 1].rate
                << " after offset refinement (interval " << k << ")";
            throw BracketError(msg.str());
        }
    }

    const double xtol = 1e-13 * kernel.terms[left].rate;
    double psi = solve_bracketed(f, {lo, hi, flo, fhi}, xtol);
    psi = polish_in_bracket(f, fp, psi, lo, hi);

    IntervalZero z;
    z.anchor = left;
    z.left_anchor = true;
    z.lo = lo;
    z.hi = hi;

    if (k >= 2 && psi > 0.6 * gap) {
        // Zero sits near the right pole; redo in right-anchored coordinates
        // psi' = x + gamma_{k-1} in (-gap, 0) for full resolution there.
        const AnchoredEval& aer = anchors[left - 1];
        const Fn fr = [&](double p) { return value_of(aer, p); };
        const Fn frp = [&](double p) { return deriv_of(aer, p); };
        double rlo = lo - gap, rhi = hi - gap;
        double frlo = fr(rlo), frhi = fr(rhi);
        if (frlo < 0.0 && frhi > 0.0) {
            double p = solve_bracketed(fr, {rlo, rhi, frlo, frhi}, xtol);
            p = polish_in_bracket(fr, frp, p, rlo, rhi);
            z.psi = p;
            z.anchor = left - 1;
            z.left_anchor = false;
            z.lo = rlo;
            z.hi = rhi;
            z.residual = std::abs(fr(p));
            z.noise_scale = noise_of(aer, p);
            return z;
        }
    }

    z.psi = psi;
    z.residual = std::abs(f(psi));
    z.noise_scale = noise_of(ae, psi);
    return z;
}

double positive_zero(const Mode& mode, const ExponentialKernel& kernel, const Fn& f,
                     const Fn& fp, double f_at_zero) {
    double hi = kernel.terms.back().rate + mode.eigenvalue + kernel.partial_l1();
    double fhi = f(hi);
    int tries = 0;
    while (!(fhi > 0.0) && tries++ < 100) {
        hi *= 2.0;
        fhi = f(hi);
    }
    if (!(fhi > 0.0)) throw BracketError("no sign change on the positive axis");
    const double xtol = 1e-13 * std::max(1.0, hi);
    double x = solve_bracketed(f, {0.0, hi, f_at_zero, fhi}, xtol);
    return polish_in_bracket(f, fp, x, 0.0, hi);
}

double fixed_point_residual(const Mode& mode, const ExponentialKernel& kernel, Complex tau) {
    // ell(a(tau+i)) = a^2 [tau (tau + 2i) - K^(a(tau+i)) / a^{2(1-theta)}],
    // exactly; evaluating in tau form avoids the lambda^2 + a^2 cancellation.
    const double a = mode.eigenvalue;
    const Complex z = a * (tau + Complex{0.0, 1.0});
    const Complex defect =
        tau * (tau + Complex{0.0, 2.0}) -
        laplace(kernel, z) * std::pow(a, -2.0 * (1.0 - mode.theta));
    return a * a * std::abs(defect);
}

}  // namespace

std::vector<Complex> SpectrumSlice::all_zeros() const {
    std::vector<Complex> out;
    out.reserve(zero_count());
    for (const auto& z : real_zeros) out.emplace_back(z.value, 0.0);
    for (double x : unstable_real) out.emplace_back(x, 0.0);
    if (pair) {
        out.push_back(pair->upper);
        out.push_back(std::conj(pair->upper));
    }
    return out;
}

double residual_bound(const Mode& mode, const ExponentialKernel& kernel, Complex x,
                      double tol) {
    const double a = mode.eigenvalue;
    const double coupling = std::pow(a, 2.0 * mode.theta);
    const double noise =
        std::norm(x) + a * a + coupling * laplace_modulus_sum(kernel, x);
    return std::max(tol * std::max(1.0, a * a), 64.0 * kEps * noise);
}

std::vector<RealZero> real_zeros(const Mode& mode, const ExponentialKernel& kernel) {
    validate_mode(mode);
    const int n = static_cast<int>(kernel.size());
    const double a = mode.eigenvalue;
    const double tol = 1e-9 * std::max(1.0, a * a);

    std::vector<AnchoredEval> anchors;
    anchors.reserve(n);
    for (int m = 0; m < n; ++m) anchors.emplace_back(mode, kernel, m);

    const auto value_of = [](const AnchoredEval& ae, double psi) { return ae.ell(psi); };
    const auto deriv_of = [](const AnchoredEval& ae, double psi) { return ae.ell_deriv(psi); };
    const auto noise_of = [](const AnchoredEval& ae, double psi) {
        return ae.ell_noise_scale(psi);
    };

    // ell(0) = a^2 (1 - S_N a^{-2(1-theta)}): its sign picks the stable or
    // the positive-axis branch for the rightmost zero.
    const double ell_at_zero = anchors[0].ell(kernel.terms[0].rate);

    std::vector<RealZero> zeros;
    zeros.reserve(n);
    for (int k = 1; k <= n; ++k) {
        RealZero rec;
        rec.index = k;
        if (k == 1 && !(ell_at_zero > 0.0)) {
            const Fn f = [&](double x) { return anchors[0].ell(x + kernel.terms[0].rate); };
            const Fn fp = [&](double x) {
                return anchors[0].ell_deriv(x + kernel.terms[0].rate);
            };
            const double x = positive_zero(mode, kernel, f, fp, ell_at_zero);
            rec.value = x;
            rec.bracket_lo = 0.0;
            rec.bracket_hi = std::max(2.0 * x, kernel.terms.back().rate + a);
            rec.pole_gap = x + kernel.terms[0].rate;
            rec.residual = std::abs(f(x));
            rec.residual_bound = std::max(
                tol, 64.0 * kEps * anchors[0].ell_noise_scale(x + kernel.terms[0].rate));
        } else {
            const double right_end = (k == 1) ? ell_at_zero : 0.0;
            IntervalZero z = locate_interval_zero(kernel, k, value_of, deriv_of, noise_of,
                                                  anchors, right_end);
            const double anchor_rate = kernel.terms[z.anchor].rate;
            rec.value = z.psi - anchor_rate;
            rec.bracket_lo = z.lo - anchor_rate;
            rec.bracket_hi = z.hi - anchor_rate;
            rec.pole_gap = z.left_anchor
                               ? z.psi
                               : z.psi + (kernel.terms[k - 1].rate - anchor_rate);
            rec.residual = z.residual;
            rec.residual_bound = std::max(tol, 64.0 * kEps * z.noise_scale);
            if (rec.bracket_lo >= rec.value)
                rec.bracket_lo = std::nextafter(rec.value, -std::numeric_limits<double>::infinity());
            if (rec.bracket_hi <= rec.value)
                rec.bracket_hi = std::nextafter(rec.value, std::numeric_limits<double>::infinity());
        }
        if (rec.residual > rec.residual_bound) {
            std::ostringstream msg;
            msg << "real zero " << k << " residual " << rec.residual
                << " exceeds its acceptance bound " << rec.residual_bound;
            throw ConvergenceError(msg.str());
        }
        zeros.push_back(rec);
    }
    return zeros;
}

std::vector<InterlaceBound> interlacing_bounds(const Mode& mode,
                                               const ExponentialKernel& kernel) {
    validate_mode(mode);
    const int n = static_cast<int>(kernel.size());

    std::vector<AnchoredEval> anchors;
    anchors.reserve(n);
    for (int m = 0; m < n; ++m) anchors.emplace_back(mode, kernel, m);

    const auto value_of = [](const AnchoredEval& ae, double psi) { return ae.reduced(psi); };
    const auto deriv_of = [](const AnchoredEval& ae, double psi) {
        return ae.reduced_deriv(psi);
    };
    const auto noise_of = [](const AnchoredEval& ae, double psi) {
        return ae.reduced_noise_scale(psi);
    };

    const double g_at_zero = anchors[0].reduced(kernel.terms[0].rate);

    std::vector<InterlaceBound> bounds;
    bounds.reserve(n);
    for (int k = 1; k <= n; ++k) {
        InterlaceBound rec;
        rec.index = k;
        if (k == 1 && !(g_at_zero > 0.0)) {
            const Fn f = [&](double x) {
                return anchors[0].reduced(x + kernel.terms[0].rate);
            };
            const Fn fp = [&](double x) {
                return anchors[0].reduced_deriv(x + kernel.terms[0].rate);
            };
            const double x = positive_zero(mode, kernel, f, fp, g_at_zero);
            rec.value = x;
            rec.pole_gap = x + kernel.terms[0].rate;
        } else {
            const double right_end = (k == 1) ? g_at_zero : 0.0;
            IntervalZero z = locate_interval_zero(kernel, k, value_of, deriv_of, noise_of,
                                                  anchors, right_end);
            const double anchor_rate = kernel.terms[z.anchor].rate;
            rec.value = z.psi - anchor_rate;
            rec.pole_gap = z.left_anchor
                               ? z.psi
                               : z.psi + (kernel.terms[k - 1].rate - anchor_rate);
        }
        bounds.push_back(rec);
    }
    return bounds;
}

FixedPointResult complex_pair_fixed_point(const Mode& mode, const ExponentialKernel& kernel) {
    validate_mode(mode);
    const double a = mode.eigenvalue;
    const double inv_coupling = std::pow(a, -2.0 * (1.0 - mode.theta));
    const Complex two_i{0.0, 2.0};
    const Complex i_unit{0.0, 1.0};

    Complex tau{0.0, 0.0};
    double prev_diff = std::numeric_limits<double>::infinity();
    for (int it = 1; it <= 50; ++it) {
        const Complex z = a * (tau + i_unit);
        const Complex next = laplace(kernel, z) * inv_coupling / (tau + two_i);
        const double diff = std::abs(next - tau);
        tau = next;
        if (diff <= 1e-14 || diff <= 4.0 * kEps * std::abs(tau)) {
            if (!(tau.imag() > -1.0))
                throw ContractionError("fixed point left the upper half-plane");
            return {tau, a * (tau + i_unit), it};
        }
        if (it >= 3 && diff / prev_diff >= 0.9)
            throw ContractionError("successive-difference ratio reached 0.9");
        prev_diff = diff;
    }
    throw ContractionError("no convergence within 50 iterations");
}

Complex newton_polish(const Mode& mode, const ExponentialKernel& kernel, Complex start,
                      int max_steps) {
    validate_mode(mode);
    // on meeting the residual bound, one extra step lands on the limit point
    const auto refine = [&](Complex x, Complex fx) {
        const Complex d = eval_ell_deriv(mode, kernel, x);
        if (d == Complex{0.0, 0.0}) return x;
        const Complex xn = x - fx / d;
        return std::abs(eval_ell(mode, kernel, xn)) <= std::abs(fx) ? xn : x;
    };

    Complex x = start;
    Complex fx = eval_ell(mode, kernel, x);
    for (int it = 0; it < max_steps; ++it) {
        if (std::abs(fx) <= residual_bound(mode, kernel, x)) return refine(x, fx);
        const Complex d = eval_ell_deriv(mode, kernel, x);
        if (d == Complex{0.0, 0.0}) throw ConvergenceError("zero derivative in Newton step");
        Complex step = fx / d;
        Complex xn = x - step;
        Complex fn = eval_ell(mode, kernel, xn);
        int halvings = 0;
        while (std::abs(fn) > std::abs(fx) && halvings++ < 20) {
            step *= 0.5;
            xn = x - step;
            fn = eval_ell(mode, kernel, xn);
        }
        if (std::abs(fn) >= std::abs(fx) && halvings > 20)
            throw ConvergenceError("Newton stalled; residual " + std::to_string(std::abs(fx)));
        x = xn;
        fx = fn;
    }
    if (std::abs(fx) <= residual_bound(mode, kernel, x)) return refine(x, fx);
    throw ConvergenceError("Newton did not reach the residual bound; last residual " +
                           std::to_string(std::abs(fx)));
}

ComplexPair complex_pair(const Mode& mode, const ExponentialKernel& kernel) {
    validate_mode(mode);
    const double a = mode.eigenvalue;
    const double pair_tol = residual_bound(mode, kernel, Complex{0.0, a});

    // a pair must be meaningfully nonreal; Newton can otherwise land on a
    // real zero with a stray imaginary part and double-count it
    auto admit = [&](Complex upper, PairRoute route, int iters) -> std::optional<ComplexPair> {
        if (!(upper.imag() > 1e-9 * (1.0 + std::abs(upper)))) return std::nullopt;
        const Complex tau = upper / a - Complex{0.0, 1.0};
        const double res = fixed_point_residual(mode, kernel, tau);
        if (res > pair_tol) return std::nullopt;
        return ComplexPair{upper, route, iters, res};
    };

    try {
        const FixedPointResult fp = complex_pair_fixed_point(mode, kernel);
        if (auto pair = admit(fp.lambda, PairRoute::FixedPoint, fp.iterations)) return *pair;
    } catch (const ContractionError&) {
    } catch (const PoleError&) {
    }

    try {
        const Complex guess{-0.5 * kernel.partial_mass() *
                                std::pow(a, -2.0 * (1.0 - mode.theta)),
                            a};
        const Complex polished = newton_polish(mode, kernel, guess);
        if (auto pair = admit(polished, PairRoute::Newton, 0)) return *pair;
    } catch (const Error&) {
    }

    if (static_cast<int>(kernel.size()) <= poly_route_cap()) {
        const auto roots = companion_roots(poly_coeffs(mode, kernel));
        Complex best{0.0, 0.0};
        for (const auto& r : roots)
            if (r.imag() > best.imag()) best = r;
        if (best.imag() > 0.0) {
            if (auto pair = admit(best, PairRoute::CompanionOracle, 0)) return *pair;
        }
    }
    throw ConvergenceError("no admissible complex pair found by any route");
}

namespace {

void recover_missed_zeros(const Mode& mode, const ExponentialKernel& kernel,
                          SpectrumSlice& slice) {
    const auto oracle = companion_roots(poly_coeffs(mode, kernel));
    auto known = slice.all_zeros();
    const auto min_dist = [&](Complex r) {
        double d = std::numeric_limits<double>::infinity();
        for (const auto& z : known) d = std::min(d, std::abs(r - z));
        return d;
    };

    for (const auto& r : oracle) {
        if (min_dist(r) <= 1e-8 * (1.0 + std::abs(r))) continue;

        if (std::abs(r.imag()) > 1e-9 * (1.0 + std::abs(r))) {
            if (slice.pair || !(r.imag() > 0.0)) continue;
            try {
                const Complex polished = newton_polish(mode, kernel, r);
                if (polished.imag() > 1e-9 * (1.0 + std::abs(polished))) {
                    const Complex tau = polished / mode.eigenvalue - Complex{0.0, 1.0};
                    slice.pair = ComplexPair{polished, PairRoute::CompanionOracle, 0,
                                             fixed_point_residual(mode, kernel, tau)};
                    slice.residual_max = std::max(slice.residual_max, slice.pair->residual);
                    slice.diagnostics.push_back("pair via companion-matrix fallback");
                    known.push_back(polished);
                    known.push_back(std::conj(polished));
                }
            } catch (const Error&) {
            }
            continue;
        }

        double x = r.real();
        try {
            x = newton_polish(mode, kernel, {x, 0.0}).real();
        } catch (const Error&) {
        }
        const double res = std::abs(eval_ell(mode, kernel, {x, 0.0}));
        const double bound = residual_bound(mode, kernel, {x, 0.0});
        if (res > bound) {
            slice.diagnostics.push_back("companion seed failed to polish to tolerance");
            continue;
        }
        known.emplace_back(x, 0.0);
        slice.residual_max = std::max(slice.residual_max, res);
        if (x > 0.0) {
            slice.unstable_real.push_back(x);
            slice.diagnostics.push_back("extra positive zero recovered from a companion seed");
            continue;
        }
        RealZero rec;
        rec.index = static_cast<int>(kernel.size());
        for (std::size_t k = 0; k < kernel.size(); ++k) {
            if (x > -kernel.terms[k].rate) {
                rec.index = static_cast<int>(k) + 1;
                break;
            }
        }
        rec.value = x;
        rec.pole_gap = x + kernel.terms[rec.index - 1].rate;
        // genuine sign-change bracket around the recovered zero when one exists
        rec.bracket_lo = std::nextafter(x, -std::numeric_limits<double>::infinity());
        rec.bracket_hi = std::nextafter(x, std::numeric_limits<double>::infinity());
        const auto ell_real = [&](double t) { return eval_ell(mode, kernel, {t, 0.0}).real(); };
        double delta = 1e-12 * std::max(1.0, std::abs(x));
        for (int i = 0; i < 40; ++i) {
            const double lo = x - delta, hi = x + delta;
            if (lo <= -kernel.terms.back().rate) break;
            const double flo = ell_real(lo), fhi = ell_real(hi);
            if ((flo < 0.0) != (fhi < 0.0)) {
                rec.bracket_lo = lo;
                rec.bracket_hi = hi;
                break;
            }
            delta *= 2.0;
        }
        rec.residual = res;
        rec.residual_bound = bound;
        slice.real_zeros.push_back(rec);
        slice.diagnostics.push_back("degenerate real zero recovered from a companion seed");
    }
}

}  // namespace

SpectrumSlice full_slice(const Mode& mode, const ExponentialKernel& kernel) {
    validate_mode(mode);
    SpectrumSlice slice;
    slice.mode = mode;

    auto zeros = real_zeros(mode, kernel);
    slice.interlace_bounds = interlacing_bounds(mode, kernel);
    for (auto& z : zeros) {
        slice.residual_max = std::max(slice.residual_max, z.residual);
        if (z.value > 0.0) {
            slice.unstable_real.push_back(z.value);
            slice.diagnostics.push_back("rightmost zero on the positive axis (unstable mode)");
        } else {
            slice.real_zeros.push_back(z);
        }
    }

    try {
        slice.pair = complex_pair(mode, kernel);
        slice.residual_max = std::max(slice.residual_max, slice.pair->residual);
        if (slice.pair->route == PairRoute::Newton)
            slice.diagnostics.push_back("pair via Newton fallback");
        else if (slice.pair->route == PairRoute::CompanionOracle)
            slice.diagnostics.push_back("pair via companion-matrix fallback");
    } catch (const ConvergenceError&) {
    }

    // At small eigenvalues the pair can degenerate onto the real axis (the
    // contraction construction only covers large a_n), leaving three zeros in
    // one pole interval. When the count falls short, recover the missed real
    // zeros from companion seeds polished on the symbol itself.
    if (slice.zero_count() < kernel.size() + 2 &&
        static_cast<int>(kernel.size()) <= poly_route_cap()) {
        recover_missed_zeros(mode, kernel, slice);
    }
    if (slice.zero_count() < kernel.size() + 2)
        slice.diagnostics.push_back("zero count below N+2");
    return slice;
}

std::vector<PoleLimitRow> pole_limit_study(const ExponentialKernel& kernel, int index,
                                           double theta, const std::vector<double>& a_grid) {
    if (index < 1 || index > static_cast<int>(kernel.size()))
        throw ValidationError("zero index out of range");
    if (a_grid.empty()) throw ValidationError("empty eigenvalue grid");
    for (std::size_t i = 0; i + 1 < a_grid.size(); ++i)
        if (!(a_grid[i] < a_grid[i + 1]))
            throw ValidationError("eigenvalue grid must be increasing");

    const double c = kernel.terms[index - 1].amplitude;
    std::vector<PoleLimitRow> rows;
    rows.reserve(a_grid.size());
    for (double a : a_grid) {
        const Mode mode{a, theta};
        const auto zeros = real_zeros(mode, kernel);
        const auto& z = zeros[index - 1];
        PoleLimitRow row;
        row.eigenvalue = a;
        row.zero = z.value;
        row.pole_gap = z.pole_gap;
        row.normalized_gap = z.pole_gap * std::pow(a, 2.0 * (1.0 - theta)) / c;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace voltspec

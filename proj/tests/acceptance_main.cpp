// Acceptance suite: runs every verification criterion at its stated
// tolerance and prints one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "voltspec/asymptotics.hpp"
#include "voltspec/modal_sim.hpp"
#include "voltspec/oracle.hpp"
#include "voltspec/roots.hpp"
#include "voltspec/stability.hpp"
#include "voltspec/suite.hpp"

namespace fs = std::filesystem;
using namespace voltspec;

namespace {

constexpr std::uint64_t kSuiteSeed = 20240101;

struct CaseArtifacts {
    SuiteCase c;
    SpectrumSlice slice;
    std::vector<InterlaceBound> bounds;
    SymbolPolynomial poly;
    std::vector<Complex> companion;
    std::vector<Complex> matrix;
};

std::vector<CaseArtifacts> build_stable_suite() {
    SplitMix64 rng(kSuiteSeed);
    std::vector<CaseArtifacts> suite;
    suite.reserve(100);
    for (int i = 0; i < 100; ++i) {
        CaseArtifacts art{draw_suite_case(rng, true), {}, {}, {}, {}, {}};
        art.slice = full_slice(art.c.mode, art.c.kernel);
        art.bounds = interlacing_bounds(art.c.mode, art.c.kernel);
        art.poly = poly_coeffs(art.c.mode, art.c.kernel);
        art.companion = companion_roots(art.poly);
        art.matrix = matrix_eigs(augmented_matrix(art.c.mode, art.c.kernel));
        suite.push_back(std::move(art));
    }
    return suite;
}

double slope_of_abs_re(const ConvergenceStudy& study) {
    std::vector<double> a, v;
    for (const auto& row : study.rows) {
        a.push_back(row.eigenvalue);
        v.push_back(std::abs(row.computed.real()));
    }
    return loglog_slope(a, v);
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(VOLTSPEC_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    return WEXITSTATUS(std::system(cmd.c_str()));
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct Outcome {
    bool pass = true;
    std::string detail;
};

}  // namespace

int main() {
    std::vector<std::pair<std::string, std::function<Outcome()>>> criteria;
    std::vector<CaseArtifacts> suite;

    // 1. analytic roots vs companion-matrix and ODE-matrix eigenvalues
    criteria.emplace_back("oracle equivalence (100 stable kernels, 1e-8 (1+|z|))", [&] {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome out;
        suite = build_stable_suite();
        double worst = 0.0;
        for (const auto& art : suite) {
            const auto analytic = art.slice.all_zeros();
            double mag = 0.0;
            for (const auto& r : art.companion) mag = std::max(mag, std::abs(r));
            const double tol = 1e-8 * (1.0 + mag);
            const double d = std::max({match_distance(analytic, art.companion),
                                       match_distance(analytic, art.matrix),
                                       match_distance(art.companion, art.matrix)});
            worst = std::max(worst, d / tol);
            if (d > tol) out.pass = false;
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs > 30.0) out.pass = false;
        std::ostringstream os;
        os << "worst distance/tol = " << worst << ", " << secs << " s";
        out.detail = os.str();
        return out;
    });

    // 2. interlacing -gamma_k < lambda_k < x_k < -gamma_{k-1}
    criteria.emplace_back("interlacing holds on every slice", [&] {
        Outcome out;
        int violations = 0;
        for (const auto& art : suite) {
            const auto& terms = art.c.kernel.terms;
            if (art.slice.real_zeros.size() != terms.size() ||
                art.bounds.size() != terms.size()) {
                ++violations;
                continue;
            }
            for (std::size_t k = 0; k < terms.size(); ++k) {
                const auto& z = art.slice.real_zeros[k];
                const auto& x = art.bounds[k];
                const double prev = k == 0 ? 0.0 : terms[k - 1].rate;
                const bool ok = z.pole_gap > 0.0 && z.pole_gap < x.pole_gap &&
                                z.value < x.value &&
                                (k == 0 ? x.value < 0.0 : x.value < -prev);
                if (!ok) ++violations;
            }
        }
        out.pass = violations == 0;
        out.detail = std::to_string(violations) + " violations";
        return out;
    });

    // 3. Vieta sum and product residuals
    criteria.emplace_back("Vieta identities (residuals <= 1e-8)", [&] {
        Outcome out;
        double worst = 0.0;
        for (const auto& art : suite) {
            const auto res = vieta_check(art.poly, art.companion);
            worst = std::max({worst, res.sum_residual, res.prod_residual});
        }
        out.pass = worst <= 1e-8;
        std::ostringstream os;
        os << "worst residual = " << worst;
        out.detail = os.str();
        return out;
    });

    // 4. at most one zero in the open upper half-plane
    criteria.emplace_back("upper half-plane count <= 1 per mode", [&] {
        Outcome out;
        int worst = 0;
        for (const auto& art : suite) {
            int count = 0;
            for (const auto& r : art.companion)
                if (r.imag() > 1e-9 * (1.0 + std::abs(r))) ++count;
            worst = std::max(worst, count);
        }
        out.pass = worst <= 1;
        out.detail = "max count = " + std::to_string(worst);
        return out;
    });

    // 5. finite-mass asymptotic error orders
    criteria.emplace_back("large-eigenvalue order check, kernel [(1,2)]", [&] {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome out;
        const auto kernel = make_exponential({{1.0, 2.0}});
        const std::vector<double> grid{1e2, 1e3, 1e4};
        std::ostringstream os;
        for (double theta : {0.0, 0.5, 1.0}) {
            const auto study = convergence_study(kernel, theta, grid);
            const double want_re = -(4.0 - 2.0 * theta) + 0.3;
            const double want_im = -(3.0 - 2.0 * theta) + 0.3;
            if (!(study.slope_re <= want_re && study.slope_im <= want_im)) out.pass = false;
            os << "theta=" << theta << ": slopes (" << study.slope_re << ", "
               << study.slope_im << "); ";
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs > 10.0) out.pass = false;
        os << secs << " s";
        out.detail = os.str();
        return out;
    });

    // 6. residue constant routes agree; the closed-form sign flip is a
    // documented diagnostic, not a failure
    criteria.emplace_back("residue constant D(r): quadrature vs split integrals", [&] {
        Outcome out;
        double worst = 0.0;
        bool sign_flip_everywhere = true;
        for (double r : {0.1, 0.25, 0.5, 0.75, 0.9}) {
            const auto rc = residue_constants(r);
            const double route_diff = std::abs(rc.quadrature - rc.split_real);
            const double mod_diff =
                std::abs(std::abs(rc.quadrature) - rc.modulus_identity());
            worst = std::max({worst, route_diff, mod_diff});
            if (route_diff > 1e-9 || mod_diff > 1e-9) out.pass = false;
            if (std::abs(rc.quadrature + rc.closed_form) > 1e-9) sign_flip_everywhere = false;
        }
        std::ostringstream os;
        os << "worst deviation = " << worst;
        if (sign_flip_everywhere)
            os << "; diagnostic: " << ResidueConstants::sign_note();
        out.detail = os.str();
        return out;
    });

    // 7. power-law regimes (i) axis approach (ii) leftward divergence
    // (iii) constant abscissa
    criteria.emplace_back("power-law regime studies, r = 0.75", [&] {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome out;
        const PowerLawFamily family{1.0, 1.0, 0.5, 2.0, 64};
        const std::vector<double> grid{1e2, 316.22776601683796, 1e3, 3162.2776601683795,
                                       1e4};
        std::ostringstream os;

        const auto axis = convergence_study(family, 0.3, grid);
        const double slope_axis = slope_of_abs_re(axis);
        if (!(std::abs(slope_axis + 1.15) <= 0.3)) out.pass = false;
        os << "Re slope at theta=0.3: " << slope_axis << " (want -1.15 +- 0.3); ";

        const auto left = convergence_study(family, 0.95, grid);
        const double slope_left = slope_of_abs_re(left);
        if (!(std::abs(slope_left - 0.15) <= 0.1)) out.pass = false;
        os << "Re slope at theta=0.95: " << slope_left << " (want 0.15 +- 0.1); ";

        const auto constant = convergence_study(family, 0.875, grid);
        if (!(constant.slope_re <= -(1.0 - 0.75) + 0.3)) out.pass = false;
        os << "error slope at theta=0.875: " << constant.slope_re << " (want <= 0.05); ";

        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs > 60.0) out.pass = false;
        os << secs << " s";
        out.detail = os.str();
        return out;
    });

    // 8. stability verdict vs the rightmost oracle root
    criteria.emplace_back("stability classifier agreement (100 mixed kernels)", [&] {
        Outcome out;
        SplitMix64 rng(kSuiteSeed + 1);
        int mismatches = 0;
        for (int i = 0; i < 99; ++i) {
            const SuiteCase c = draw_suite_case(rng, false);
            const auto rep = classify(c.kernel, {c.mode});
            const auto eigs = matrix_eigs(augmented_matrix(c.mode, c.kernel));
            double rightmost = -1e300;
            for (const auto& e : eigs) rightmost = std::max(rightmost, e.real());
            const bool oracle_unstable = rightmost > 0.0;
            if ((rep.verdict == Verdict::Unstable) != oracle_unstable) ++mismatches;
        }
        // the reference unstable kernel, root ~ 0.696
        const auto big = make_exponential({{4.0, 2.0}});
        const auto rep = classify(big, {{1.0, 0.0}});
        const bool reference_ok =
            rep.verdict == Verdict::Unstable && rep.unstable_roots.size() == 1 &&
            std::abs(rep.unstable_roots[0].root - 0.69562076955986206) < 1e-9;
        out.pass = mismatches == 0 && reference_ok;
        out.detail = std::to_string(mismatches) + " mismatches; reference root " +
                     (reference_ok ? "ok" : "wrong");
        return out;
    });

    // 9. no spectrum on the imaginary axis
    criteria.emplace_back("imaginary-axis exclusion on the stable suite", [&] {
        Outcome out;
        double worst_mismatch = 0.0;
        double min_abs = 1e300;
        for (const auto& art : suite) {
            std::vector<double> grid{0.0};
            const double top = 3.0 * art.c.mode.eigenvalue;
            for (double y = 0.01; y <= top; y *= 2.7) {
                grid.push_back(y);
                grid.push_back(-y);
            }
            const auto check = imaginary_axis_check(art.c.mode, art.c.kernel, grid);
            worst_mismatch = std::max(worst_mismatch, check.max_rel_mismatch);
            min_abs = std::min(min_abs, check.min_abs);
            for (const auto& row : check.rows)
                if (row.y == 0.0 && !(row.re_at_origin > 0.0)) out.pass = false;
        }
        if (!(min_abs > 0.0) || worst_mismatch > 1e-12) out.pass = false;
        std::ostringstream os;
        os << "min |ell(iy)| = " << min_abs << ", worst Im mismatch = " << worst_mismatch;
        out.detail = os.str();
        return out;
    });

    // 10. time-domain decay matches the spectral abscissa
    criteria.emplace_back("time-domain consistency (10 pair-dominant cases)", [&] {
        Outcome out;
        SplitMix64 rng(kSuiteSeed + 2);
        int done = 0, failed = 0;
        while (done < 10) {
            const SuiteCase c = draw_suite_case(rng, true);
            if (c.mode.eigenvalue > 5.0) continue;
            if (c.kernel.terms.back().rate > 50.0) continue;
            const auto eigs = matrix_eigs(augmented_matrix(c.mode, c.kernel));
            double pair_re = -1e300, real_re = -1e300, abscissa = -1e300;
            for (const auto& e : eigs) {
                abscissa = std::max(abscissa, e.real());
                if (std::abs(e.imag()) > 1e-9)
                    pair_re = std::max(pair_re, e.real());
                else
                    real_re = std::max(real_re, e.real());
            }
            if (!(pair_re > real_re + 0.05)) continue;
            if (!(abscissa < -0.03 && abscissa > -2.0)) continue;
            const double total = std::min(400.0, std::max(60.0, 8.0 / std::abs(abscissa)));
            const auto rep = abscissa_consistency(c.mode, c.kernel, total, 0.0499 / 50.0);
            if (!rep.pass) ++failed;
            ++done;
        }
        // conservative limit: energy drift <= 1e-8 relative
        const auto tiny = make_exponential({{1e-300, 1.0}});
        const auto trace = integrate(assemble(Mode{1.0, 0.0}, tiny, 1.0, 0.0),
                                     2.0 * kPi, 1e-3);
        double drift = 0.0;
        for (double e : trace.energy)
            drift = std::max(drift, std::abs(e - trace.energy[0]) / trace.energy[0]);
        if (drift > 1e-8) out.pass = false;
        out.pass = out.pass && failed == 0;
        std::ostringstream os;
        os << failed << "/10 rate fits outside 5%; energy drift " << drift;
        out.detail = os.str();
        return out;
    });

    // 11. transform decay along rays; |lambda (K^ - h)| bounded for families
    criteria.emplace_back("sector decay along rays arg in {0, +-3pi/4}", [&] {
        Outcome out;
        SplitMix64 rng(kSuiteSeed + 3);
        const std::vector<double> angles{0.0, 3.0 * kPi / 4.0, -3.0 * kPi / 4.0};
        std::vector<double> radii;
        for (double r = 10.0; r <= 1.0001e4; r *= std::pow(10.0, 0.25)) radii.push_back(r);
        int ray_failures = 0;
        for (int i = 0; i < 10; ++i) {
            const SuiteCase c = draw_probe_case(rng);
            const auto probes = sector_decay_probe(c.kernel, std::nullopt, 0.05, radii, angles);
            for (const auto& ray : probes)
                if (!ray.transform_monotone || !ray.deriv_monotone) ++ray_failures;
        }
        double worst_ratio = 0.0;
        for (const PowerLawFamily& family :
             {PowerLawFamily{1.0, 1.0, 0.5, 2.0, 10'000},
              PowerLawFamily{1.0, 1.0, 0.75, 1.5, 10'000},
              PowerLawFamily{2.0, 0.5, 0.4, 2.0, 10'000}}) {
            const auto kernel = from_power_law(family);
            const auto probes = sector_decay_probe(kernel, family, 0.05, radii, angles);
            for (const auto& ray : probes) {
                if (!ray.diff_tail_ratio) continue;
                worst_ratio = std::max(worst_ratio, *ray.diff_tail_ratio);
                if (*ray.diff_tail_ratio > 3.0) ++ray_failures;
            }
        }
        out.pass = ray_failures == 0;
        std::ostringstream os;
        os << ray_failures << " ray failures; worst |lambda (K^-h)| tail ratio "
           << worst_ratio;
        out.detail = os.str();
        return out;
    });

    // 12. byte-identical outputs for identical config and seed
    criteria.emplace_back("determinism of CLI outputs", [&] {
        Outcome out;
        const fs::path work = VOLTSPEC_TEST_TMPDIR;
        const fs::path da = work / "det_a";
        const fs::path db = work / "det_b";
        fs::remove_all(da);
        fs::remove_all(db);
        const std::string kernel = R"('{"type":"finite","terms":[[1.0,2.0],[0.5,5.0]]}')";
        bool ok = true;
        ok &= run_cli("spectrum --kernel " + kernel + " --theta 0.25 --a-grid 1:2:8 --out " +
                      da.string()) == 0;
        ok &= run_cli("spectrum --kernel " + kernel + " --theta 0.25 --a-grid 1:2:8 --out " +
                      db.string()) == 0;
        ok &= slurp(da / "spectrum.csv") == slurp(db / "spectrum.csv");
        ok &= run_cli("oracle-check --count 25 --seed 7 --out " + da.string()) == 0;
        ok &= run_cli("oracle-check --count 25 --seed 7 --out " + db.string()) == 0;
        ok &= slurp(da / "oracle_check.json") == slurp(db / "oracle_check.json");
        ok &= run_cli("classify --kernel " + kernel + " --theta 0.5 --modes 1,2 --out " +
                      da.string()) == 0;
        ok &= run_cli("classify --kernel " + kernel + " --theta 0.5 --modes 1,2 --out " +
                      db.string()) == 0;
        ok &= slurp(da / "classify.json") == slurp(db / "classify.json");
        out.pass = ok;
        out.detail = ok ? "all outputs byte-identical" : "outputs differ";
        return out;
    });

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome out;
        try {
            out = criteria[i].second();
        } catch (const std::exception& e) {
            out.pass = false;
            out.detail = std::string("exception: ") + e.what();
        }
        if (!out.pass) ++failures;
        std::printf("%s criterion %zu: %s -- %s\n", out.pass ? "PASS" : "FAIL", i + 1,
                    criteria[i].first.c_str(), out.detail.c_str());
    }
    std::printf("%d/%zu criteria passed\n", int(criteria.size()) - failures,
                criteria.size());
    return failures == 0 ? 0 : 1;
}

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "voltspec/asymptotics.hpp"
#include "voltspec/io.hpp"
#include "voltspec/modal_sim.hpp"
#include "voltspec/oracle.hpp"
#include "voltspec/roots.hpp"
#include "voltspec/stability.hpp"
#include "voltspec/suite.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace voltspec;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitVerification = 2;

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> values;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t next = text.find(',', pos);
        if (next == std::string::npos) next = text.size();
        const std::string item = text.substr(pos, next - pos);
        try {
            values.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw ValidationError("cannot parse number '" + item + "'");
        }
        pos = next + 1;
    }
    if (values.empty()) throw ValidationError("empty list");
    return values;
}

// "start:ratio:count" geometric grid
std::vector<double> parse_geometric(const std::string& text) {
    const auto first = text.find(':');
    const auto second = text.find(':', first + 1);
    if (first == std::string::npos || second == std::string::npos)
        throw ValidationError("grid must have the form start:ratio:count");
    double start = 0.0, ratio = 0.0;
    long count = 0;
    try {
        start = std::stod(text.substr(0, first));
        ratio = std::stod(text.substr(first + 1, second - first - 1));
        count = std::stol(text.substr(second + 1));
    } catch (const std::exception&) {
        throw ValidationError("cannot parse grid '" + text + "'");
    }
    if (count < 1) throw ValidationError("grid count must be >= 1");
    std::vector<double> grid;
    double value = start;
    for (long i = 0; i < count; ++i) {
        grid.push_back(value);
        value *= ratio;
    }
    return grid;
}

struct CommonOptions {
    std::string kernel_spec;
    double theta = 0.0;
    std::string modes_text;
    std::string a_grid_text;
    std::string out_dir = ".";
    std::uint64_t seed = 20240101;
    std::string format = "csv";
};

std::vector<double> mode_values(const CommonOptions& opt, bool required = true) {
    if (!opt.modes_text.empty()) return parse_list(opt.modes_text);
    if (!opt.a_grid_text.empty()) return parse_geometric(opt.a_grid_text);
    if (required) throw ValidationError("provide --modes or --a-grid");
    return {};
}

std::ofstream open_out(const fs::path& dir, const std::string& name) {
    fs::create_directories(dir);
    std::ofstream out(dir / name, std::ios::binary);
    if (!out) throw ValidationError("cannot open output file " + (dir / name).string());
    return out;
}

void write_json(const fs::path& dir, const std::string& name, const json& doc) {
    auto out = open_out(dir, name);
    out << doc.dump(2) << "\n";
}

bool use_json_tables(const std::string& format) {
    if (format == "json") return true;
    if (format == "csv") return false;
    throw ValidationError("format must be csv or json");
}

/// Row-oriented table emitted as CSV (fixed column order, 17-digit floats)
/// or as a JSON array of objects.
class Table {
public:
    explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

    void add_row(std::vector<json> values) { rows_.push_back(std::move(values)); }

    void write(const fs::path& dir, const std::string& stem, bool as_json) const {
        if (as_json) {
            json arr = json::array();
            for (const auto& row : rows_) {
                json obj;
                for (std::size_t i = 0; i < columns_.size(); ++i)
                    obj[columns_[i]] = i < row.size() ? row[i] : json();
                arr.push_back(std::move(obj));
            }
            write_json(dir, stem + ".json", arr);
            return;
        }
        auto out = open_out(dir, stem + ".csv");
        for (std::size_t i = 0; i < columns_.size(); ++i)
            out << columns_[i] << (i + 1 < columns_.size() ? "," : "\n");
        for (const auto& row : rows_) {
            for (std::size_t i = 0; i < columns_.size(); ++i) {
                if (i < row.size() && !row[i].is_null()) {
                    const json& v = row[i];
                    if (v.is_number_float())
                        out << format_double(v.get<double>());
                    else if (v.is_string())
                        out << v.get<std::string>();
                    else
                        out << v.dump();
                }
                out << (i + 1 < columns_.size() ? "," : "\n");
            }
        }
    }

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<json>> rows_;
};

json regime_json(const RegimeTag& tag) {
    json j;
    j["regime"] = regime_name(tag.kind);
    j["log_case"] = tag.log_case;
    j["near_boundary"] = tag.near_boundary;
    if (tag.theta_constant) j["theta_constant"] = *tag.theta_constant;
    return j;
}

int cmd_spectrum(const CommonOptions& opt, bool emit_gnuplot) {
    const KernelConfig cfg = load_kernel(opt.kernel_spec);
    const bool as_json = use_json_tables(opt.format);
    const auto modes = mode_values(opt);
    const fs::path dir(opt.out_dir);

    Table table({"mode_index", "a_n", "kind", "re", "im", "residual"});
    int failures = 0;
    for (std::size_t i = 0; i < modes.size(); ++i) {
        try {
            const Mode mode{modes[i], opt.theta};
            const auto slice = full_slice(mode, cfg.kernel);
            const auto row = [&](const char* kind, double re, double im, double res) {
                table.add_row({i, mode.eigenvalue, kind, re, im, res});
            };
            for (const auto& z : slice.real_zeros) row("real", z.value, 0.0, z.residual);
            for (double x : slice.unstable_real) {
                const double res = std::abs(eval_ell(mode, cfg.kernel, {x, 0.0}));
                row("unstable", x, 0.0, res);
            }
            if (slice.pair) {
                row("pair", slice.pair->upper.real(), slice.pair->upper.imag(),
                    slice.pair->residual);
                row("pair", slice.pair->upper.real(), -slice.pair->upper.imag(),
                    slice.pair->residual);
            }
        } catch (const Error& e) {
            ++failures;
            std::cerr << "mode " << i << " failed: " << e.what() << "\n";
        }
    }
    table.write(dir, "spectrum", as_json);
    if (emit_gnuplot) {
        auto gp = open_out(dir, "spectrum.gp");
        gp << "set datafile separator ','\n"
              "set xlabel 'Re'\nset ylabel 'Im'\nset grid\n"
              "plot 'spectrum.csv' every ::1 using 4:5 with points pt 7 title 'zeros'\n";
    }
    std::cout << "spectrum: " << modes.size() - failures << "/" << modes.size()
              << " modes -> "
              << (dir / (as_json ? "spectrum.json" : "spectrum.csv")).string() << "\n";
    return failures == 0 ? kExitOk : kExitVerification;
}

int cmd_asymptotics(const CommonOptions& opt) {
    const KernelConfig cfg = load_kernel(opt.kernel_spec);
    std::vector<double> grid = opt.a_grid_text.empty() && opt.modes_text.empty()
                                   ? parse_geometric("100:3.1622776601683795:5")
                                   : mode_values(opt);
    const ConvergenceStudy study =
        cfg.family ? convergence_study(*cfg.family, opt.theta, grid)
                   : convergence_study(cfg.kernel, opt.theta, grid);

    const fs::path dir(opt.out_dir);
    Table table({"a_n", "computed_re", "computed_im", "predicted_re", "predicted_im",
                 "err_re", "err_im", "terms"});
    for (const auto& row : study.rows) {
        table.add_row({row.eigenvalue, row.computed.real(), row.computed.imag(),
                       row.predicted.real(), row.predicted.imag(), row.err_re, row.err_im,
                       row.truncation});
    }
    table.write(dir, "convergence", use_json_tables(opt.format));

    json slopes;
    slopes["slope_re"] = study.slope_re;
    slopes["slope_im"] = study.slope_im;
    slopes["order_re"] = study.order_re;
    slopes["order_im"] = study.order_im;
    slopes["pass_re"] = study.pass_re;
    slopes["pass_im"] = study.pass_im;
    slopes["annotations"] = study.annotations;
    if (cfg.family) slopes["regime"] = regime_json(regime_classify(*cfg.family, opt.theta));
    write_json(dir, "slopes.json", slopes);

    const bool pass = study.pass_re && study.pass_im;
    std::cout << (pass ? "PASS" : "FAIL") << ": |dRe| slope " << study.slope_re
              << " (order " << study.order_re << "), |dIm| slope " << study.slope_im
              << " (order " << study.order_im << ")\n";
    return pass ? kExitOk : kExitVerification;
}

int cmd_classify(const CommonOptions& opt) {
    const KernelConfig cfg = load_kernel(opt.kernel_spec);
    std::vector<double> eigenvalues = mode_values(opt, false);
    if (eigenvalues.empty()) eigenvalues = {1.0};
    std::vector<Mode> modes;
    for (double a : eigenvalues) modes.push_back({a, opt.theta});

    const StabilityReport report = classify(cfg.kernel, modes);
    json doc;
    doc["verdict"] = verdict_name(report.verdict);
    doc["N0"] = report.unstable_count;
    doc["S"] = {{"lo", report.s_lo}, {"hi", report.s_hi}};
    doc["thresholds"] = report.thresholds;
    json roots = json::array();
    for (const auto& u : report.unstable_roots)
        roots.push_back({{"mode_index", u.mode_index}, {"root", u.root}});
    doc["unstable_roots"] = roots;
    if (cfg.family) doc["regime"] = regime_json(regime_classify(*cfg.family, opt.theta));

    write_json(fs::path(opt.out_dir), "classify.json", doc);
    std::cout << doc.dump(2) << "\n";
    return kExitOk;
}

int cmd_oracle_check(const CommonOptions& opt, int count, double inject) {
    const fs::path dir(opt.out_dir);
    json cases = json::array();
    int failures = 0;

    if (!opt.kernel_spec.empty()) {
        const KernelConfig cfg = load_kernel(opt.kernel_spec);
        if (cfg.kernel.size() > 12)
            throw ValidationError("oracle-check accepts kernels with at most 12 terms");
        for (double a : mode_values(opt)) {
            const auto rep = crosscheck(Mode{a, opt.theta}, cfg.kernel);
            failures += rep.pass ? 0 : 1;
            cases.push_back({{"a", a},
                             {"max_distance", rep.max_distance},
                             {"tolerance", rep.tolerance},
                             {"pass", rep.pass}});
        }
    } else {
        SplitMix64 rng(opt.seed);
        for (int i = 0; i < count; ++i) {
            const SuiteCase c = draw_suite_case(rng, true);
            bool pass = false;
            double distance = 0.0, tolerance = 0.0, vieta_sum = 0.0, vieta_prod = 0.0;
            if (inject != 0.0) {
                // negative-control hook: perturb the polynomial and compare
                // its roots against the unperturbed routes
                auto poly = poly_coeffs(c.mode, c.kernel);
                poly.coeffs[poly.coeffs.size() / 2] *= 1.0 + inject;
                const auto perturbed = companion_roots(poly);
                const auto honest = matrix_eigs(augmented_matrix(c.mode, c.kernel));
                distance = match_distance(perturbed, honest);
                double mag = 0.0;
                for (const auto& r : honest) mag = std::max(mag, std::abs(r));
                tolerance = 1e-8 * (1.0 + mag);
                pass = distance <= tolerance;
            } else {
                const auto rep = crosscheck(c.mode, c.kernel);
                pass = rep.pass && rep.vieta.sum_residual <= 1e-8 &&
                       rep.vieta.prod_residual <= 1e-8;
                distance = rep.max_distance;
                tolerance = rep.tolerance;
                vieta_sum = rep.vieta.sum_residual;
                vieta_prod = rep.vieta.prod_residual;
            }
            failures += pass ? 0 : 1;
            cases.push_back({{"case", i},
                             {"terms", c.kernel.size()},
                             {"a", c.mode.eigenvalue},
                             {"theta", c.mode.theta},
                             {"max_distance", distance},
                             {"tolerance", tolerance},
                             {"vieta_sum", vieta_sum},
                             {"vieta_prod", vieta_prod},
                             {"pass", pass}});
        }
    }

    json doc;
    doc["cases"] = cases;
    doc["failures"] = failures;
    doc["seed"] = opt.seed;
    write_json(dir, "oracle_check.json", doc);
    std::cout << (failures == 0 ? "PASS" : "FAIL") << ": " << cases.size() - failures
              << "/" << cases.size() << " cross-checks agreed\n";
    return failures == 0 ? kExitOk : kExitVerification;
}

int cmd_simulate(const CommonOptions& opt, double total_time, double dt, double u0,
                 double v0) {
    const KernelConfig cfg = load_kernel(opt.kernel_spec);
    const auto eigenvalues = mode_values(opt);
    const fs::path dir(opt.out_dir);

    json reports = json::array();
    bool all_pass = true;
    for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
        const Mode mode{eigenvalues[i], opt.theta};
        const ModalSystem sys = assemble(mode, cfg.kernel, u0, v0);
        const double step = dt > 0.0 ? dt : 0.05 / sys.max_rate;
        const SimTrace trace = integrate(sys, total_time, step);

        Table table({"t", "u", "v", "E"});
        for (std::size_t j = 0; j < trace.times.size(); ++j)
            table.add_row({trace.times[j], trace.u[j], trace.v[j], trace.energy[j]});
        table.write(dir, "trace_" + std::to_string(i), use_json_tables(opt.format));

        const ConsistencyReport rep = abscissa_consistency(mode, cfg.kernel, total_time, step);
        all_pass = all_pass && rep.pass;
        reports.push_back({{"mode_index", i},
                           {"a", mode.eigenvalue},
                           {"fitted_rate", rep.fitted_rate},
                           {"abscissa", rep.abscissa},
                           {"rel_mismatch", rep.rel_mismatch},
                           {"pair_dominant", rep.pair_dominant},
                           {"fit_kind", rep.fit_kind == FitKind::PeakEnvelope
                                            ? "peak_envelope"
                                            : "monotone_tail"},
                           {"annotation", rep.annotation},
                           {"pass", rep.pass}});
    }
    write_json(dir, "consistency.json", {{"modes", reports}});
    std::cout << (all_pass ? "PASS" : "FAIL") << ": decay rates vs abscissae for "
              << eigenvalues.size() << " mode(s)\n";
    return all_pass ? kExitOk : kExitVerification;
}

int cmd_probe(const CommonOptions& opt, double delta, const std::string& rays_text,
              const std::string& radii_text) {
    const KernelConfig cfg = load_kernel(opt.kernel_spec);
    const std::vector<double> angles =
        rays_text.empty() ? std::vector<double>{0.0, 3.0 * kPi / 4.0, -3.0 * kPi / 4.0}
                          : parse_list(rays_text);
    const std::vector<double> radii =
        radii_text.empty() ? parse_geometric("10:3.1622776601683795:7")
                           : parse_geometric(radii_text);

    const auto probes = sector_decay_probe(cfg.kernel, cfg.family, delta, radii, angles);

    const fs::path dir(opt.out_dir);
    Table table({"radius", "angle", "abs_transform", "abs_scaled_deriv", "abs_scaled_diff"});
    bool pass = true;
    for (const auto& ray : probes) {
        for (const auto& row : ray.rows) {
            table.add_row({row.radius, row.angle, row.transform_abs, row.scaled_deriv_abs,
                           row.scaled_diff_abs ? json(*row.scaled_diff_abs) : json()});
        }
        pass = pass && ray.transform_monotone && ray.deriv_monotone;
        if (ray.diff_tail_ratio) pass = pass && *ray.diff_tail_ratio <= 3.0;
    }
    table.write(dir, "probe", use_json_tables(opt.format));
    std::cout << (pass ? "PASS" : "FAIL") << ": sector decay over " << angles.size()
              << " ray(s)\n";
    return pass ? kExitOk : kExitVerification;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectrum computation for wave equations with exponential-sum memory "
                 "kernels"};
    app.require_subcommand(1);

    CommonOptions opt;
    bool emit_gnuplot = false;
    int check_count = 100;
    double inject = 0.0;
    double total_time = 200.0;
    double dt = 0.0;
    double u0 = 1.0, v0 = 0.0;
    double delta = 1e-3;
    std::string rays_text, radii_text;

    const auto add_common = [&](CLI::App* cmd, bool needs_kernel) {
        auto* k = cmd->add_option("--kernel", opt.kernel_spec,
                                  "kernel config: JSON file path or inline JSON");
        if (needs_kernel) k->required();
        cmd->add_option("--theta", opt.theta, "coupling exponent in [0, 1]");
        cmd->add_option("--modes", opt.modes_text, "comma-separated eigenvalues a_n");
        cmd->add_option("--a-grid", opt.a_grid_text, "geometric grid start:ratio:count");
        cmd->add_option("--out", opt.out_dir, "output directory");
        cmd->add_option("--seed", opt.seed, "seed for randomized suites");
        cmd->add_option("--format", opt.format, "csv|json");
    };

    auto* spectrum = app.add_subcommand("spectrum", "per-mode zeros of the symbol");
    add_common(spectrum, true);
    spectrum->add_flag("--gnuplot", emit_gnuplot, "also emit a gnuplot script");

    auto* asym = app.add_subcommand("asymptotics", "convergence study against the "
                                                   "large-eigenvalue formulas");
    add_common(asym, true);

    auto* cls = app.add_subcommand("classify", "stability verdict and spectral regime");
    add_common(cls, true);

    auto* oracle = app.add_subcommand("oracle-check", "cross-verify roots against the "
                                                      "companion and matrix oracles");
    add_common(oracle, false);
    oracle->add_option("--count", check_count, "number of randomized cases");
    oracle
        ->add_option("--inject-coeff-perturbation", inject,
                     "test hook: perturb a polynomial coefficient")
        ->group("");

    auto* sim = app.add_subcommand("simulate", "time-domain integration and decay-rate "
                                               "consistency");
    add_common(sim, true);
    sim->add_option("--T", total_time, "total integration time");
    sim->add_option("--dt", dt, "step size (default 0.05 / max rate)");
    sim->add_option("--u0", u0, "initial displacement");
    sim->add_option("--v0", v0, "initial velocity");

    auto* probe = app.add_subcommand("probe", "transform decay along rays in the sector");
    add_common(probe, true);
    probe->add_option("--delta", delta, "sector margin");
    probe->add_option("--rays", rays_text, "comma-separated ray angles");
    probe->add_option("--radii", radii_text, "geometric radii start:ratio:count");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (spectrum->parsed()) return cmd_spectrum(opt, emit_gnuplot);
        if (asym->parsed()) return cmd_asymptotics(opt);
        if (cls->parsed()) return cmd_classify(opt);
        if (oracle->parsed()) return cmd_oracle_check(opt, check_count, inject);
        if (sim->parsed()) return cmd_simulate(opt, total_time, dt, u0, v0);
        if (probe->parsed()) return cmd_probe(opt, delta, rays_text, radii_text);
    } catch (const ValidationError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const SectorError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const PoleError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const Error& e) {
        std::cerr << "verification error: " << e.what() << "\n";
        return kExitVerification;
    }
    return kExitConfig;
}

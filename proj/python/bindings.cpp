#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "voltspec/asymptotics.hpp"
#include "voltspec/io.hpp"
#include "voltspec/modal_sim.hpp"
#include "voltspec/oracle.hpp"
#include "voltspec/roots.hpp"
#include "voltspec/stability.hpp"

namespace py = pybind11;
using namespace voltspec;

PYBIND11_MODULE(_voltspec, m) {
    m.doc() = "spectrum of wave equations with exponential-sum memory kernels";

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<PoleError>(m, "PoleError", PyExc_ArithmeticError);
    py::register_exception<SectorError>(m, "SectorError", PyExc_ValueError);
    py::register_exception<BracketError>(m, "BracketError", PyExc_RuntimeError);
    py::register_exception<ContractionError>(m, "ContractionError", PyExc_RuntimeError);
    py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);
    py::register_exception<InsufficientDataError>(m, "InsufficientDataError",
                                                  PyExc_RuntimeError);

    py::class_<KernelTerm>(m, "KernelTerm")
        .def_readonly("amplitude", &KernelTerm::amplitude)
        .def_readonly("rate", &KernelTerm::rate)
        .def("__repr__", [](const KernelTerm& t) {
            return "KernelTerm(amplitude=" + format_double(t.amplitude) +
                   ", rate=" + format_double(t.rate) + ")";
        });

    py::class_<ExponentialKernel>(m, "ExponentialKernel")
        .def_readonly("terms", &ExponentialKernel::terms)
        .def_readonly("tail_l1", &ExponentialKernel::tail_l1)
        .def_readonly("tail_mass", &ExponentialKernel::tail_mass)
        .def("mass_divergent", &ExponentialKernel::mass_divergent)
        .def("partial_mass", &ExponentialKernel::partial_mass)
        .def("partial_l1", &ExponentialKernel::partial_l1)
        .def("__len__", &ExponentialKernel::size);

    py::class_<PowerLawFamily>(m, "PowerLawFamily")
        .def(py::init([](double amp, double scale, double alpha, double beta, int n) {
                 PowerLawFamily f{amp, scale, alpha, beta, n};
                 validate_family(f);
                 return f;
             }),
             py::arg("amp"), py::arg("scale"), py::arg("alpha"), py::arg("beta"),
             py::arg("truncation"))
        .def_readonly("amp", &PowerLawFamily::amp)
        .def_readonly("scale", &PowerLawFamily::scale)
        .def_readonly("alpha", &PowerLawFamily::alpha)
        .def_readonly("beta", &PowerLawFamily::beta)
        .def_readonly("truncation", &PowerLawFamily::truncation)
        .def_property_readonly("r", &PowerLawFamily::r);

    py::class_<Mode>(m, "Mode")
        .def(py::init([](double eigenvalue, double theta) {
                 Mode mode{eigenvalue, theta};
                 validate_mode(mode);
                 return mode;
             }),
             py::arg("eigenvalue"), py::arg("theta"))
        .def_readonly("eigenvalue", &Mode::eigenvalue)
        .def_readonly("theta", &Mode::theta);

    py::enum_<SeriesBound>(m, "SeriesBound")
        .value("Finite", SeriesBound::Finite)
        .value("Divergent", SeriesBound::Divergent)
        .value("Unknown", SeriesBound::Unknown);

    py::class_<ConditionReport>(m, "ConditionReport")
        .def_readonly("s_lo", &ConditionReport::s_lo)
        .def_readonly("s_hi", &ConditionReport::s_hi)
        .def_readonly("integrable_small", &ConditionReport::integrable_small)
        .def_readonly("mass_finite", &ConditionReport::mass_finite)
        .def_readonly("gap_sup", &ConditionReport::gap_sup)
        .def_readonly("gap_unbounded_plausible",
                      &ConditionReport::gap_unbounded_plausible);

    m.def("make_exponential", &make_exponential, py::arg("terms"));
    m.def("from_power_law", &from_power_law, py::arg("family"));
    m.def("eval_time", &eval_time, py::arg("kernel"), py::arg("t"));
    m.def("laplace", &laplace, py::arg("kernel"), py::arg("lam"),
          py::arg("pole_guard_rel") = 1e-12);
    m.def("laplace_deriv", &laplace_deriv, py::arg("kernel"), py::arg("lam"),
          py::arg("pole_guard_rel") = 1e-12);
    m.def("check_conditions", &check_conditions, py::arg("kernel"));
    m.def("integral_approximant", &integral_approximant, py::arg("family"),
          py::arg("lam"), py::arg("delta") = 1e-9);

    m.def("eval_ell", &eval_ell, py::arg("mode"), py::arg("kernel"), py::arg("lam"),
          py::arg("pole_guard_rel") = 1e-12);
    m.def("eval_ell_deriv", &eval_ell_deriv, py::arg("mode"), py::arg("kernel"),
          py::arg("lam"), py::arg("pole_guard_rel") = 1e-12);

    py::class_<SymbolPolynomial>(m, "SymbolPolynomial")
        .def_readonly("coeffs", &SymbolPolynomial::coeffs)
        .def_property_readonly("degree", &SymbolPolynomial::degree);
    m.def("poly_coeffs", &poly_coeffs, py::arg("mode"), py::arg("kernel"));

    py::class_<RealZero>(m, "RealZero")
        .def_readonly("index", &RealZero::index)
        .def_readonly("value", &RealZero::value)
        .def_readonly("bracket_lo", &RealZero::bracket_lo)
        .def_readonly("bracket_hi", &RealZero::bracket_hi)
        .def_readonly("pole_gap", &RealZero::pole_gap)
        .def_readonly("residual", &RealZero::residual)
        .def_readonly("residual_bound", &RealZero::residual_bound);

    py::class_<InterlaceBound>(m, "InterlaceBound")
        .def_readonly("index", &InterlaceBound::index)
        .def_readonly("value", &InterlaceBound::value)
        .def_readonly("pole_gap", &InterlaceBound::pole_gap);

    py::enum_<PairRoute>(m, "PairRoute")
        .value("FixedPoint", PairRoute::FixedPoint)
        .value("Newton", PairRoute::Newton)
        .value("CompanionOracle", PairRoute::CompanionOracle);

    py::class_<ComplexPair>(m, "ComplexPair")
        .def_readonly("upper", &ComplexPair::upper)
        .def_readonly("route", &ComplexPair::route)
        .def_readonly("iterations", &ComplexPair::iterations)
        .def_readonly("residual", &ComplexPair::residual);

    py::class_<SpectrumSlice>(m, "SpectrumSlice")
        .def_readonly("mode", &SpectrumSlice::mode)
        .def_readonly("real_zeros", &SpectrumSlice::real_zeros)
        .def_readonly("interlace_bounds", &SpectrumSlice::interlace_bounds)
        .def_readonly("pair", &SpectrumSlice::pair)
        .def_readonly("unstable_real", &SpectrumSlice::unstable_real)
        .def_readonly("residual_max", &SpectrumSlice::residual_max)
        .def_readonly("diagnostics", &SpectrumSlice::diagnostics)
        .def("zero_count", &SpectrumSlice::zero_count)
        .def("all_zeros", &SpectrumSlice::all_zeros);

    m.def("real_zeros", &real_zeros, py::arg("mode"), py::arg("kernel"));
    m.def("interlacing_bounds", &interlacing_bounds, py::arg("mode"), py::arg("kernel"));
    m.def("complex_pair", &complex_pair, py::arg("mode"), py::arg("kernel"));
    m.def("newton_polish", &newton_polish, py::arg("mode"), py::arg("kernel"),
          py::arg("start"), py::arg("max_steps") = 100);
    m.def("full_slice", &full_slice, py::arg("mode"), py::arg("kernel"));

    py::class_<PoleLimitRow>(m, "PoleLimitRow")
        .def_readonly("eigenvalue", &PoleLimitRow::eigenvalue)
        .def_readonly("zero", &PoleLimitRow::zero)
        .def_readonly("pole_gap", &PoleLimitRow::pole_gap)
        .def_readonly("normalized_gap", &PoleLimitRow::normalized_gap);
    m.def("pole_limit_study", &pole_limit_study, py::arg("kernel"), py::arg("index"),
          py::arg("theta"), py::arg("a_grid"));

    m.def("companion_roots", &companion_roots, py::arg("poly"));
    m.def(
        "companion_roots_of",
        [](const std::vector<double>& coeffs) {
            return companion_roots(SymbolPolynomial{coeffs});
        },
        py::arg("coeffs"));

    py::class_<VietaResiduals>(m, "VietaResiduals")
        .def_readonly("sum_residual", &VietaResiduals::sum_residual)
        .def_readonly("prod_residual", &VietaResiduals::prod_residual);
    m.def("vieta_check", &vieta_check, py::arg("poly"), py::arg("roots"));

    py::class_<CrosscheckReport>(m, "CrosscheckReport")
        .def_readonly("max_distance", &CrosscheckReport::max_distance)
        .def_readonly("tolerance", &CrosscheckReport::tolerance)
        .def_readonly("pass_", &CrosscheckReport::pass)
        .def_readonly("vieta", &CrosscheckReport::vieta);
    m.def("crosscheck", &crosscheck, py::arg("mode"), py::arg("kernel"));

    py::enum_<Regime>(m, "Regime")
        .value("FiniteSum", Regime::FiniteSum)
        .value("ApproachAxis", Regime::ApproachAxis)
        .value("DivergeLeft", Regime::DivergeLeft)
        .value("ConstantAbscissa", Regime::ConstantAbscissa);

    py::class_<RegimeTag>(m, "RegimeTag")
        .def_readonly("kind", &RegimeTag::kind)
        .def_readonly("theta_constant", &RegimeTag::theta_constant)
        .def_readonly("log_case", &RegimeTag::log_case)
        .def_readonly("near_boundary", &RegimeTag::near_boundary);

    py::class_<ResidueConstants>(m, "ResidueConstants")
        .def_readonly("r", &ResidueConstants::r)
        .def_readonly("quadrature", &ResidueConstants::quadrature)
        .def_readonly("split_real", &ResidueConstants::split_real)
        .def_readonly("closed_form", &ResidueConstants::closed_form)
        .def_readonly("d1", &ResidueConstants::d1)
        .def_readonly("d2", &ResidueConstants::d2)
        .def("modulus_identity", &ResidueConstants::modulus_identity)
        .def_static("sign_note", &ResidueConstants::sign_note);
    m.def("residue_constants", &residue_constants, py::arg("r"));

    py::class_<AsymptoticPrediction>(m, "AsymptoticPrediction")
        .def_readonly("re", &AsymptoticPrediction::re)
        .def_readonly("im", &AsymptoticPrediction::im)
        .def_readonly("order_re", &AsymptoticPrediction::order_re)
        .def_readonly("order_im", &AsymptoticPrediction::order_im)
        .def_readonly("regime", &AsymptoticPrediction::regime)
        .def_readonly("r", &AsymptoticPrediction::r)
        .def_readonly("n1", &AsymptoticPrediction::n1)
        .def_readonly("n2", &AsymptoticPrediction::n2)
        .def_readonly("annotations", &AsymptoticPrediction::annotations);
    m.def("finite_mass_prediction", &finite_mass_prediction, py::arg("mode"), py::arg("kernel"));
    m.def("power_law_prediction", &power_law_prediction, py::arg("mode"), py::arg("family"));
    m.def("regime_classify", &regime_classify, py::arg("family"), py::arg("theta"));

    py::class_<ConvergenceRow>(m, "ConvergenceRow")
        .def_readonly("eigenvalue", &ConvergenceRow::eigenvalue)
        .def_readonly("computed", &ConvergenceRow::computed)
        .def_readonly("predicted", &ConvergenceRow::predicted)
        .def_readonly("err_re", &ConvergenceRow::err_re)
        .def_readonly("err_im", &ConvergenceRow::err_im)
        .def_readonly("truncation", &ConvergenceRow::truncation);

    py::class_<ConvergenceStudy>(m, "ConvergenceStudy")
        .def_readonly("rows", &ConvergenceStudy::rows)
        .def_readonly("slope_re", &ConvergenceStudy::slope_re)
        .def_readonly("slope_im", &ConvergenceStudy::slope_im)
        .def_readonly("order_re", &ConvergenceStudy::order_re)
        .def_readonly("order_im", &ConvergenceStudy::order_im)
        .def_readonly("pass_re", &ConvergenceStudy::pass_re)
        .def_readonly("pass_im", &ConvergenceStudy::pass_im)
        .def_readonly("annotations", &ConvergenceStudy::annotations);
    m.def("convergence_study",
          py::overload_cast<const ExponentialKernel&, double, const std::vector<double>&>(
              &convergence_study),
          py::arg("kernel"), py::arg("theta"), py::arg("a_grid"));
    m.def("convergence_study",
          py::overload_cast<const PowerLawFamily&, double, const std::vector<double>&>(
              &convergence_study),
          py::arg("family"), py::arg("theta"), py::arg("a_grid"));
    m.def("study_truncation", &study_truncation, py::arg("family"), py::arg("theta"),
          py::arg("a"));

    py::enum_<Verdict>(m, "Verdict")
        .value("Stable", Verdict::Stable)
        .value("Unstable", Verdict::Unstable)
        .value("Indeterminate", Verdict::Indeterminate);

    py::class_<UnstableRoot>(m, "UnstableRoot")
        .def_readonly("mode_index", &UnstableRoot::mode_index)
        .def_readonly("root", &UnstableRoot::root);

    py::class_<StabilityReport>(m, "StabilityReport")
        .def_readonly("s_lo", &StabilityReport::s_lo)
        .def_readonly("s_hi", &StabilityReport::s_hi)
        .def_readonly("thresholds", &StabilityReport::thresholds)
        .def_readonly("verdict", &StabilityReport::verdict)
        .def_readonly("unstable_count", &StabilityReport::unstable_count)
        .def_readonly("unstable_roots", &StabilityReport::unstable_roots);
    m.def("classify", &classify, py::arg("kernel"), py::arg("modes"));
    m.def("unstable_root", &unstable_root, py::arg("mode"), py::arg("kernel"));

    py::class_<AxisRow>(m, "AxisRow")
        .def_readonly("y", &AxisRow::y)
        .def_readonly("abs_ell", &AxisRow::abs_ell)
        .def_readonly("im_direct", &AxisRow::im_direct)
        .def_readonly("im_closed", &AxisRow::im_closed)
        .def_readonly("re_at_origin", &AxisRow::re_at_origin);
    py::class_<AxisCheck>(m, "AxisCheck")
        .def_readonly("rows", &AxisCheck::rows)
        .def_readonly("min_abs", &AxisCheck::min_abs)
        .def_readonly("max_rel_mismatch", &AxisCheck::max_rel_mismatch);
    m.def("imaginary_axis_check", &imaginary_axis_check, py::arg("mode"),
          py::arg("kernel"), py::arg("y_grid"));

    py::class_<SimTrace>(m, "SimTrace")
        .def_readonly("times", &SimTrace::times)
        .def_readonly("u", &SimTrace::u)
        .def_readonly("v", &SimTrace::v)
        .def_readonly("energy", &SimTrace::energy);

    py::enum_<FitKind>(m, "FitKind")
        .value("PeakEnvelope", FitKind::PeakEnvelope)
        .value("MonotoneTail", FitKind::MonotoneTail);

    py::class_<DecayFit>(m, "DecayFit")
        .def_readonly("rate", &DecayFit::rate)
        .def_readonly("kind", &DecayFit::kind)
        .def_readonly("peaks", &DecayFit::peaks)
        .def_readonly("annotation", &DecayFit::annotation);

    py::class_<ConsistencyReport>(m, "ConsistencyReport")
        .def_readonly("fitted_rate", &ConsistencyReport::fitted_rate)
        .def_readonly("abscissa", &ConsistencyReport::abscissa)
        .def_readonly("rel_mismatch", &ConsistencyReport::rel_mismatch)
        .def_readonly("pass_", &ConsistencyReport::pass)
        .def_readonly("pair_dominant", &ConsistencyReport::pair_dominant)
        .def_readonly("fit_kind", &ConsistencyReport::fit_kind)
        .def_readonly("annotation", &ConsistencyReport::annotation);

    m.def(
        "simulate",
        [](const Mode& mode, const ExponentialKernel& kernel, double total_time,
           double dt, double u0, double v0) {
            const ModalSystem sys = assemble(mode, kernel, u0, v0);
            const double step = dt > 0.0 ? dt : 0.05 / sys.max_rate;
            return integrate(sys, total_time, step);
        },
        py::arg("mode"), py::arg("kernel"), py::arg("total_time"), py::arg("dt") = 0.0,
        py::arg("u0") = 1.0, py::arg("v0") = 0.0);
    m.def("decay_rate", &decay_rate, py::arg("trace"));
    m.def("abscissa_consistency", &abscissa_consistency, py::arg("mode"),
          py::arg("kernel"), py::arg("total_time"), py::arg("dt"));

    m.def("parse_kernel_json", [](const std::string& text) {
        const KernelConfig cfg = parse_kernel_json(text);
        return py::make_tuple(cfg.kernel, cfg.family);
    });
}

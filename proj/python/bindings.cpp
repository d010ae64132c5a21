#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "agdn/config.hpp"
#include "agdn/estimation.hpp"
#include "agdn/experiments.hpp"
#include "agdn/fading.hpp"
#include "agdn/scenarios.hpp"
#include "agdn/version.hpp"

namespace py = pybind11;
using namespace agdn;

namespace {

std::vector<IoSample> to_samples(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw std::invalid_argument("x and y must have equal length");
    std::vector<IoSample> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = {x[i], y[i]};
    return out;
}

ExperimentConfig parse_config(const std::string& text) { return config_from_json(nlohmann::json::parse(text)); }

py::dict row_dict(const SweepRow& r) {
    py::dict d;
    d["snr_db"] = r.snr_db;
    d["pe_upper_theory"] = r.pe_upper_theory;
    d["pe_lower_theory"] = r.pe_lower_theory;
    d["pe_awgn_theory"] = r.pe_awgn_theory;
    d["pe_empirical"] = r.pe_empirical;
    d["ci_half_width"] = r.ci_half_width;
    d["trials"] = r.trials;
    return d;
}

}  // namespace

PYBIND11_MODULE(_agdn, m) {
    m.doc() = "Detection over channels with uncertain noise mean and variance";
    m.attr("__version__") = kVersion;

    auto no_detector = py::register_exception<NoOptimalDetectorError>(m, "NoOptimalDetectorError", PyExc_ValueError);
    auto est_error = py::register_exception<EstimationError>(m, "EstimationError", PyExc_RuntimeError);
    (void)no_detector;
    (void)est_error;

    py::class_<SigmaBox>(m, "SigmaBox")
        .def(py::init<double, double>(), py::arg("lo"), py::arg("hi"))
        .def_property_readonly("lo", &SigmaBox::lo)
        .def_property_readonly("hi", &SigmaBox::hi)
        .def("__repr__", [](const SigmaBox& b) {
            return "SigmaBox(" + std::to_string(b.lo()) + ", " + std::to_string(b.hi()) + ")";
        });

    py::class_<UncertaintyInterval>(m, "UncertaintyInterval")
        .def(py::init<double, double>(), py::arg("lo"), py::arg("hi"))
        .def_property_readonly("lo", &UncertaintyInterval::lo)
        .def_property_readonly("hi", &UncertaintyInterval::hi)
        .def_property_readonly("width", &UncertaintyInterval::width);

    py::class_<NoiseModel>(m, "NoiseModel")
        .def(py::init([](double mu_lo, double mu_hi, double sigma_lo, double sigma_hi) {
                 return NoiseModel{UncertaintyInterval(mu_lo, mu_hi), SigmaBox(sigma_lo, sigma_hi)};
             }),
             py::arg("mu_lo"), py::arg("mu_hi"), py::arg("sigma_lo"), py::arg("sigma_hi"))
        .def_readonly("mean", &NoiseModel::mean)
        .def_readonly("sigma", &NoiseModel::sigma);

    py::class_<Constellation>(m, "Constellation")
        .def(py::init<double, double>(), py::arg("x_a"), py::arg("x_b"))
        .def_property_readonly("x_a", &Constellation::x_a)
        .def_property_readonly("x_b", &Constellation::x_b)
        .def_property_readonly("distance", &Constellation::distance);

    auto pair_of = [](auto e) { return std::make_pair(e.lower, e.upper); };

    m.def("q_function", &q_function, py::arg("v"));
    m.def("semi_g_upper_cdf", &semi_g_upper_cdf, py::arg("t"), py::arg("sigma"));
    m.def("semi_g_lower_cdf", &semi_g_lower_cdf, py::arg("t"), py::arg("sigma"));
    m.def(
        "output_cdf_envelope",
        [pair_of](const NoiseModel& n, double x, double y) { return pair_of(output_cdf_envelope(n, x, y)); },
        py::arg("noise"), py::arg("x"), py::arg("y"), "(lower, upper) of P(Y <= y | X = x)");
    m.def(
        "output_tail_envelope",
        [pair_of](const NoiseModel& n, double x, double y) { return pair_of(output_tail_envelope(n, x, y)); },
        py::arg("noise"), py::arg("x"), py::arg("y"), "(lower, upper) of P(Y > y | X = x)");
    m.def(
        "snr_bounds",
        [](const Constellation& c, const NoiseModel& n) {
            const auto s = snr_bounds(c, n);
            return py::make_tuple(s.snr_lo, s.snr_hi, s.snr);
        },
        py::arg("c"), py::arg("noise"));
    m.def(
        "optimal_threshold",
        [](const Constellation& c, const NoiseModel& n) -> std::optional<double> {
            auto r = optimal_threshold(c, n);
            if (auto* t = std::get_if<ThresholdDetector>(&r)) return t->threshold;
            return std::nullopt;
        },
        py::arg("c"), py::arg("noise"), "threshold, or None when no optimal detector exists");
    m.def(
        "error_envelope",
        [](const Constellation& c, const NoiseModel& n) {
            const auto e = error_envelope(c, n);
            return std::make_pair(e.pe_lower, e.pe_upper);
        },
        py::arg("c"), py::arg("noise"), "(pe_lower, pe_upper) of the optimal detector");
    m.def(
        "error_envelope_at_threshold",
        [](double y0, const Constellation& c, const NoiseModel& n) {
            const auto e = error_envelope_at_threshold(y0, c, n);
            return std::make_pair(e.pe_lower, e.pe_upper);
        },
        py::arg("y0"), py::arg("c"), py::arg("noise"));

    m.def(
        "generate_noise",
        [](const std::string& policy_json, const NoiseModel& n, std::uint64_t count, std::uint64_t seed,
           unsigned threads) {
            return generate_noise(policy_from_json(nlohmann::json::parse(policy_json)), n, count, RngSeed{seed},
                                  threads);
        },
        py::arg("policy_json"), py::arg("noise"), py::arg("n"), py::arg("seed"), py::arg("threads") = 1);
    m.def(
        "generate_rayleigh_gains",
        [](std::uint64_t n, std::uint64_t seed) { return generate_rayleigh_gains(n, RngSeed{seed}); }, py::arg("n"),
        py::arg("seed"));

    m.def(
        "estimate_mean_interval",
        [](const std::vector<double>& x, const std::vector<double>& y, std::size_t window) {
            const auto r = estimate_mean_interval(to_samples(x, y), window);
            return std::make_pair(r.lo(), r.hi());
        },
        py::arg("x"), py::arg("y"), py::arg("m"));
    m.def(
        "estimate_all",
        [](const std::vector<double>& x, const std::vector<double>& y, std::size_t window, const Constellation& c) {
            const auto r = estimate_all(to_samples(x, y), window, c);
            py::dict d;
            d["mean_hat"] = std::make_pair(r.mean_hat.lo(), r.mean_hat.hi());
            d["sigma_hat"] = std::make_pair(r.sigma_hat.lo(), r.sigma_hat.hi());
            d["threshold_hat"] = r.threshold_hat;
            d["error_envelope_hat"] = std::make_pair(r.error_envelope_hat.pe_lower, r.error_envelope_hat.pe_upper);
            d["residual_norm"] = r.residual_norm;
            d["solver_iterations"] = r.solver_iterations;
            return d;
        },
        py::arg("x"), py::arg("y"), py::arg("m"), py::arg("c"));
    m.def(
        "phi_max_mean_variance",
        [](const std::vector<double>& z, std::size_t window) {
            const auto b = phi_max_mean_variance(z, window);
            return std::make_pair(b.lo(), b.hi());
        },
        py::arg("noise_samples"), py::arg("m"));

    m.def(
        "conditional_error_envelope",
        [](std::complex<double> h, const Constellation& c, const SigmaBox& box) {
            const auto e = conditional_error_envelope(ComplexGain(h), c, box);
            return std::make_pair(e.pe_lower, e.pe_upper);
        },
        py::arg("h"), py::arg("c"), py::arg("box"));
    m.def(
        "averaged_error_envelope",
        [](const Constellation& c, const SigmaBox& box) {
            const auto e = averaged_error_envelope(c, box);
            return std::make_pair(e.pe_lower, e.pe_upper);
        },
        py::arg("c"), py::arg("box"));

    m.def(
        "run_trials",
        [](const std::string& config_json) {
            const auto r = run_trials(parse_config(config_json));
            return py::make_tuple(r.errors, r.trials, r.rate, r.ci_half_width);
        },
        py::arg("config_json"), "(errors, trials, rate, ci_half_width)");
    m.def(
        "sweep_error_curves",
        [](const std::string& config_json) {
            py::list out;
            for (const auto& r : sweep_error_curves(parse_config(config_json))) out.append(row_dict(r));
            return out;
        },
        py::arg("config_json"));
    m.def(
        "fading_sweep",
        [](const std::string& config_json) {
            py::list out;
            for (const auto& r : fading_sweep(parse_config(config_json))) out.append(row_dict(r));
            return out;
        },
        py::arg("config_json"));
    m.def(
        "compare_detectors",
        [](const std::string& config_json) {
            py::list out;
            for (const auto& r : compare_detectors(parse_config(config_json))) {
                py::dict d;
                d["snr_db"] = r.snr_db;
                d["pe_empirical_optimal"] = r.optimal.rate;
                d["pe_empirical_min_distance"] = r.min_distance.rate;
                d["errors_optimal"] = r.optimal.errors;
                d["errors_min_distance"] = r.min_distance.errors;
                d["trials"] = r.optimal.trials;
                out.append(d);
            }
            return out;
        },
        py::arg("config_json"));
}

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "agdn/config.hpp"
#include "agdn/csv.hpp"
#include "agdn/estimation.hpp"
#include "agdn/experiments.hpp"
#include "agdn/version.hpp"

using nlohmann::json;

namespace {

enum ExitCode : int { kOk = 0, kConfig = 2, kNoDetector = 3, kEstimation = 4 };

struct Globals {
    std::optional<std::uint64_t> seed;
    std::string out;
    std::string format = "csv";
    unsigned threads = 1;
};

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

json manifest(const std::string& sub, std::uint64_t seed, const json& config) {
    return {{"tool", "agdn"},
            {"version", agdn::kVersion},
            {"subcommand", sub},
            {"seed", seed},
            {"config_hash", hex64(agdn::fnv1a_64(config.dump()))},
            {"config", config}};
}

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) throw agdn::ConfigError("cannot open output '" + path + "'");
        }
    }
    std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

private:
    std::ofstream file_;
};

void emit_csv(const Globals& g, const json& man, const std::string& body) {
    Output out(g.out);
    out.stream() << "# " << man.dump() << '\n' << body;
}

void emit_json(const Globals& g, json doc) {
    Output out(g.out);
    out.stream() << doc.dump(2) << '\n';
}

json rows_json(const std::vector<agdn::SweepRow>& rows) {
    json a = json::array();
    for (const auto& r : rows) {
        a.push_back({{"snr_db", r.snr_db},
                     {"pe_upper_theory", r.pe_upper_theory},
                     {"pe_lower_theory", r.pe_lower_theory},
                     {"pe_awgn_theory", r.pe_awgn_theory},
                     {"pe_empirical", r.pe_empirical},
                     {"ci_half_width", r.ci_half_width},
                     {"trials", r.trials}});
    }
    return a;
}

json rows_json(const std::vector<agdn::ComparisonRow>& rows) {
    json a = json::array();
    for (const auto& r : rows) {
        a.push_back({{"snr_db", r.snr_db},
                     {"threshold_optimal", r.threshold_optimal},
                     {"threshold_min_distance", r.threshold_min_distance},
                     {"pe_upper_optimal", r.theory_optimal.pe_upper},
                     {"pe_lower_optimal", r.theory_optimal.pe_lower},
                     {"pe_upper_min_distance", r.theory_min_distance.pe_upper},
                     {"pe_lower_min_distance", r.theory_min_distance.pe_lower},
                     {"pe_empirical_optimal", r.optimal.rate},
                     {"ci_half_width_optimal", r.optimal.ci_half_width},
                     {"pe_empirical_min_distance", r.min_distance.rate},
                     {"ci_half_width_min_distance", r.min_distance.ci_half_width},
                     {"trials", r.optimal.trials}});
    }
    return a;
}

// Config file plus flag overrides.
struct ExperimentFlags {
    std::string config_path;
    std::optional<std::uint64_t> trials;
    std::vector<double> snr_db;
    std::optional<bool> simulate;
};

void add_experiment_flags(CLI::App* sub, ExperimentFlags& f) {
    sub->add_option("-c,--config", f.config_path, "experiment config (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("--trials", f.trials, "override trial count");
    sub->add_option("--snr-db", f.snr_db, "override SNR grid (dB)");
    sub->add_flag("--simulate,!--no-simulate", f.simulate, "toggle Monte Carlo columns");
}

agdn::ExperimentConfig load_experiment(const ExperimentFlags& f, const Globals& g) {
    std::ifstream in(f.config_path);
    if (!in) throw agdn::ConfigError("cannot open config '" + f.config_path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw agdn::ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    auto cfg = agdn::config_from_json(j);
    if (g.seed) cfg.seed.value = *g.seed;
    if (f.trials) cfg.trials = *f.trials;
    if (!f.snr_db.empty()) cfg.snr_db = f.snr_db;
    if (f.simulate) cfg.simulate = *f.simulate;
    cfg.threads = g.threads;
    agdn::validate(cfg);
    return cfg;
}

template <class Rows>
void emit_rows(const Globals& g, const std::string& sub, const agdn::ExperimentConfig& cfg, const Rows& rows,
               void (*writer)(std::ostream&, const Rows&)) {
    const auto man = manifest(sub, cfg.seed.value, agdn::to_json(cfg));
    if (g.format == "json") {
        emit_json(g, {{"manifest", man}, {"rows", rows_json(rows)}});
    } else {
        std::ostringstream body;
        writer(body, rows);
        emit_csv(g, man, body.str());
    }
}

struct EnvelopeFlags {
    double mu_lo = 0.0, mu_hi = 0.0, sigma_lo = 1.0, sigma_hi = 1.0;
    double x = 0.0;
    std::vector<double> y;
    double y_min = -5.0, y_max = 5.0;
    std::size_t points = 101;
};

int cmd_envelope(const EnvelopeFlags& f, const Globals& g) {
    agdn::NoiseModel noise{agdn::UncertaintyInterval(f.mu_lo, f.mu_hi), agdn::SigmaBox(f.sigma_lo, f.sigma_hi)};
    std::vector<double> grid = f.y;
    if (grid.empty()) {
        if (f.points < 1 || !(f.y_min <= f.y_max)) throw agdn::ConfigError("y grid needs points >= 1 and y-min <= y-max");
        for (std::size_t i = 0; i < f.points; ++i) {
            grid.push_back(f.points == 1 ? f.y_min
                                         : f.y_min + (f.y_max - f.y_min) * static_cast<double>(i) /
                                                         static_cast<double>(f.points - 1));
        }
    }
    const json config = {{"noise", agdn::to_json(noise)}, {"x", f.x}, {"y", grid}};
    const auto man = manifest("envelope", g.seed.value_or(0), config);

    json rows = json::array();
    std::ostringstream body;
    body << "y,cdf_lower,cdf_upper,tail_lower,tail_upper\n";
    for (double y : grid) {
        const auto cdf = agdn::output_cdf_envelope(noise, f.x, y);
        const auto tail = agdn::output_tail_envelope(noise, f.x, y);
        body << agdn::format_number(y) << ',' << agdn::format_number(cdf.lower) << ','
             << agdn::format_number(cdf.upper) << ',' << agdn::format_number(tail.lower) << ','
             << agdn::format_number(tail.upper) << '\n';
        rows.push_back({{"y", y},
                        {"cdf_lower", cdf.lower},
                        {"cdf_upper", cdf.upper},
                        {"tail_lower", tail.lower},
                        {"tail_upper", tail.upper}});
    }
    if (g.format == "json") {
        emit_json(g, {{"manifest", man}, {"rows", rows}});
    } else {
        emit_csv(g, man, body.str());
    }
    return kOk;
}

struct EstimateFlags {
    std::string samples;
    std::size_t window = 1000;
    double x_a = 1.0, x_b = -1.0;
    double tolerance = 1e-3;
    int max_iterations = 500;
};

json sigma_json(const agdn::SigmaSolution& s) {
    return {{"sigma_hat", {s.sigma.lo(), s.sigma.hi()}},
            {"residual_upper", s.residual_upper},
            {"residual_lower", s.residual_lower},
            {"residual_norm", s.residual_norm},
            {"solver_iterations", s.iterations}};
}

int cmd_estimate(const EstimateFlags& f, const Globals& g) {
    const auto samples = agdn::read_samples_file(f.samples);
    std::string digest;
    for (const auto& s : samples) digest += agdn::format_number(s.x) + ',' + agdn::format_number(s.y) + '\n';
    const json config = {{"samples_hash", hex64(agdn::fnv1a_64(digest))},
                         {"n", samples.size()},
                         {"window", f.window},
                         {"constellation", {{"x_a", f.x_a}, {"x_b", f.x_b}}},
                         {"tolerance", f.tolerance},
                         {"max_iterations", f.max_iterations}};
    const auto man = manifest("estimate", g.seed.value_or(0), config);
    const agdn::Constellation c = [&] {
        try {
            return agdn::Constellation(f.x_a, f.x_b);
        } catch (const std::domain_error& e) {
            throw agdn::ConfigError(e.what());
        }
    }();

    agdn::SolverOptions opts;
    opts.tolerance = f.tolerance;
    opts.max_iterations = f.max_iterations;
    try {
        const auto r = agdn::estimate_all(samples, f.window, c, opts);
        const json doc = {{"manifest", man},
                          {"mean_hat", {r.mean_hat.lo(), r.mean_hat.hi()}},
                          {"sigma_hat", {r.sigma_hat.lo(), r.sigma_hat.hi()}},
                          {"threshold_hat", r.threshold_hat},
                          {"error_envelope_hat", {{"pe_lower", r.error_envelope_hat.pe_lower},
                                                  {"pe_upper", r.error_envelope_hat.pe_upper}}},
                          {"residual_norm", r.residual_norm},
                          {"solver_iterations", r.solver_iterations}};
        if (g.format == "json") {
            emit_json(g, doc);
        } else {
            std::ostringstream body;
            body << "mu_lo,mu_hi,sigma_lo,sigma_hi,threshold,pe_lower,pe_upper,residual_norm,solver_iterations\n";
            for (double v : {r.mean_hat.lo(), r.mean_hat.hi(), r.sigma_hat.lo(), r.sigma_hat.hi(), r.threshold_hat,
                             r.error_envelope_hat.pe_lower, r.error_envelope_hat.pe_upper, r.residual_norm}) {
                body << agdn::format_number(v) << ',';
            }
            body << r.solver_iterations << '\n';
            emit_csv(g, man, body.str());
        }
        return kOk;
    } catch (const agdn::EstimationError& e) {
        json doc = {{"manifest", man}, {"error", e.what()}, {"best", nullptr}};
        if (e.best()) doc["best"] = sigma_json(*e.best());
        emit_json(g, doc);
        std::cerr << "agdn: " << e.what() << '\n';
        return kEstimation;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Detection over channels with uncertain noise mean and variance"};
    app.set_version_flag("--version", std::string(agdn::kVersion));
    app.require_subcommand(1);

    Globals g;
    app.add_option("--seed", g.seed, "RNG seed (overrides config)");
    app.add_option("--out", g.out, "output path (default stdout)");
    app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--threads", g.threads, "worker threads (speed only)")->check(CLI::PositiveNumber);

    EnvelopeFlags env;
    auto* envelope = app.add_subcommand("envelope", "output CDF and tail envelopes on a y grid");
    envelope->add_option("--mu-lo", env.mu_lo);
    envelope->add_option("--mu-hi", env.mu_hi);
    envelope->add_option("--sigma-lo", env.sigma_lo);
    envelope->add_option("--sigma-hi", env.sigma_hi);
    envelope->add_option("--x", env.x, "transmitted symbol");
    envelope->add_option("--y", env.y, "explicit y values (overrides the range)");
    envelope->add_option("--y-min", env.y_min);
    envelope->add_option("--y-max", env.y_max);
    envelope->add_option("--points", env.points);

    ExperimentFlags curves_f, simulate_f, fading_f;
    auto* curves = app.add_subcommand("curves", "theoretical and empirical error curves over an SNR sweep");
    add_experiment_flags(curves, curves_f);
    auto* simulate = app.add_subcommand("simulate", "optimal vs minimum-distance detector on shared noise");
    add_experiment_flags(simulate, simulate_f);
    auto* fading = app.add_subcommand("fading", "Rayleigh fading sweep");
    add_experiment_flags(fading, fading_f);

    EstimateFlags est;
    auto* estimate = app.add_subcommand("estimate", "estimate the uncertainty box from x,y samples");
    estimate->add_option("--samples", est.samples, "two-column CSV x,y")->required();
    estimate->add_option("-m,--window", est.window, "window size");
    estimate->add_option("--x-a", est.x_a);
    estimate->add_option("--x-b", est.x_b);
    estimate->add_option("--tolerance", est.tolerance);
    estimate->add_option("--max-iterations", est.max_iterations);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kConfig;
    }

    try {
        if (*envelope) return cmd_envelope(env, g);
        if (*estimate) return cmd_estimate(est, g);
        if (*curves) {
            const auto cfg = load_experiment(curves_f, g);
            emit_rows(g, "curves", cfg, agdn::sweep_error_curves(cfg), &agdn::write_sweep);
        } else if (*simulate) {
            const auto cfg = load_experiment(simulate_f, g);
            emit_rows(g, "simulate", cfg, agdn::compare_detectors(cfg), &agdn::write_comparison);
        } else if (*fading) {
            const auto cfg = load_experiment(fading_f, g);
            emit_rows(g, "fading", cfg, agdn::fading_sweep(cfg), &agdn::write_sweep);
        }
        return kOk;
    } catch (const agdn::NoOptimalDetectorError& e) {
        std::cerr << "agdn: " << e.what() << '\n';
        return kNoDetector;
    } catch (const agdn::EstimationError& e) {
        std::cerr << "agdn: " << e.what() << '\n';
        return kEstimation;
    } catch (const std::invalid_argument& e) {
        std::cerr << "agdn: " << e.what() << '\n';
        return kConfig;
    } catch (const std::domain_error& e) {
        std::cerr << "agdn: " << e.what() << '\n';
        return kConfig;
    } catch (const json::exception& e) {
        std::cerr << "agdn: " << e.what() << '\n';
        return kConfig;
    }
}

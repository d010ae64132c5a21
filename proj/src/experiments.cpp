#include "agdn/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <span>
#include <type_traits>
#include <cmath>
#include <limits>
#include <string>

#include "agdn/fading.hpp"
#include "agdn/math_kernel.hpp"

namespace agdn {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Symbol distance whose midpoint SNR equals `target` for mean width w and the
// given sigma box. The SNR is continuous and increasing in d.
double distance_for_snr(double target, double w, const SigmaBox& box) {
    const double a = 1.0 / (8.0 * box.lo() * box.lo());
    const double b = 1.0 / (8.0 * box.hi() * box.hi());
    const double floor_snr = 0.5 * a * w * w;
    if (!(target > floor_snr)) {
        throw ConfigError("target SNR " + std::to_string(to_db(target)) +
                          " dB is unreachable: the mean interval alone gives " + std::to_string(to_db(floor_snr)) +
                          " dB at zero symbol distance");
    }
    if (target <= 2.0 * a * w * w) return std::sqrt(2.0 * target / a) - w;
    // (a + b) d^2 + 2 w (a - b) d + (a + b) w^2 - 2 T = 0, larger root.
    const double s = a + b;
    const double p = w * (a - b);
    const double disc = p * p - s * (s * w * w - 2.0 * target);
    return (-p + std::sqrt(disc)) / s;
}

ScenarioPolicy scale_policy_sigma(const ScenarioPolicy& p, double k) {
    return std::visit(
        [k](const auto& v) -> ScenarioPolicy {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, policy::Fixed>) {
                return policy::Fixed{v.mu, v.sigma * k};
            } else if constexpr (std::is_same_v<T, policy::Custom>) {
                policy::Custom out = v;
                for (auto& e : out.schedule) e.sigma *= k;
                return out;
            } else {
                return v;
            }
        },
        p);
}

ErrorEnvelope theory_envelope(const ExperimentConfig& cfg) {
    return std::visit(
        [&](const auto& d) -> ErrorEnvelope {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, detector_choice::Optimal>) {
                return error_envelope(cfg.constellation, cfg.noise);
            } else if constexpr (std::is_same_v<T, detector_choice::MinDistance>) {
                return min_distance_error_envelope(cfg.constellation, cfg.noise);
            } else {
                return error_envelope_at_threshold(d.threshold, cfg.constellation, cfg.noise);
            }
        },
        cfg.detector);
}

double awgn_reference(double snr) { return q_function(std::sqrt(2.0 * snr)); }

void require_sweep(const ExperimentConfig& cfg) {
    if (cfg.snr_db.empty()) throw ConfigError("sweep grid is empty");
}

}  // namespace

void validate(const ExperimentConfig& cfg) {
    if (cfg.trials == 0) throw ConfigError("trial count must be at least 1");
    for (double s : cfg.snr_db) {
        if (!std::isfinite(s)) throw ConfigError("sweep grid contains a non-finite SNR");
    }
    if (std::adjacent_find(cfg.snr_db.begin(), cfg.snr_db.end(), std::greater_equal<>()) != cfg.snr_db.end()) {
        throw ConfigError("sweep grid must be strictly increasing");
    }
    if (cfg.window == 0) throw ConfigError("window size must be at least 1");
    if (cfg.gains) {
        if (cfg.gains->empty()) throw ConfigError("custom gain list is empty");
        if (cfg.gains->size() != 1 && cfg.gains->size() != cfg.trials) {
            throw ConfigError("custom gain list must hold 1 or `trials` entries");
        }
        for (const auto& h : *cfg.gains) {
            if (!(std::abs(h) > 0.0) || !std::isfinite(std::abs(h))) throw ConfigError("custom gains must be finite and nonzero");
        }
    }
    // Rejects out-of-box policy parameters with PolicyError.
    ScenarioSampler probe(cfg.policy, cfg.noise, cfg.seed);
    const auto need = probe.required_length();
    if (need != 0 && need != cfg.trials) {
        throw PolicyError("custom schedule has " + std::to_string(need) + " entries but " +
                          std::to_string(cfg.trials) + " trials were requested");
    }
}

ThresholdDetector resolve_detector(const ExperimentConfig& cfg) {
    return std::visit(
        [&](const auto& d) -> ThresholdDetector {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, detector_choice::Optimal>) {
                return require_optimal_threshold(cfg.constellation, cfg.noise);
            } else if constexpr (std::is_same_v<T, detector_choice::MinDistance>) {
                return min_distance_detector(cfg.constellation);
            } else {
                return ThresholdDetector{d.threshold};
            }
        },
        cfg.detector);
}

ExperimentConfig at_snr(const ExperimentConfig& cfg, double snr_db) {
    const double target = from_db(snr_db);
    ExperimentConfig out = cfg;
    if (cfg.sweep_mode == SweepMode::ScaleDistance) {
        out.constellation = cfg.constellation.with_distance(distance_for_snr(target, cfg.noise.mean.width(), cfg.noise.sigma));
    } else {
        const double base = snr_bounds(cfg.constellation, cfg.noise).snr;
        const double k = std::sqrt(base / target);
        out.noise.sigma = cfg.noise.sigma.scaled(k);
        out.policy = scale_policy_sigma(cfg.policy, k);
    }
    return out;
}

std::vector<std::uint64_t> count_errors(const ExperimentConfig& cfg, std::span<const double> thresholds) {
    validate(cfg);
    const ScenarioSampler sampler(cfg.policy, cfg.noise, cfg.seed);
    const CounterRng rng(cfg.seed.value);
    const double xa = cfg.constellation.x_a();
    const double xb = cfg.constellation.x_b();

    std::vector<std::atomic<std::uint64_t>> totals(thresholds.size());
    parallel_ranges(cfg.trials, cfg.threads, [&](std::uint64_t begin, std::uint64_t end) {
        std::vector<std::uint64_t> local(thresholds.size(), 0);
        for (std::uint64_t i = begin; i < end; ++i) {
            const bool sent_a = rng.bit(Stream::Symbol, i);
            const double y = (sent_a ? xa : xb) + sampler.sample(i);
            for (std::size_t t = 0; t < thresholds.size(); ++t) {
                if ((y > thresholds[t]) != sent_a) ++local[t];
            }
        }
        for (std::size_t t = 0; t < thresholds.size(); ++t) totals[t] += local[t];
    });

    std::vector<std::uint64_t> out(thresholds.size());
    for (std::size_t t = 0; t < thresholds.size(); ++t) out[t] = totals[t].load();
    return out;
}

BinomialEstimate run_trials(const ExperimentConfig& cfg) {
    const double t = resolve_detector(cfg).threshold;
    return binomial_estimate(count_errors(cfg, std::span(&t, 1))[0], cfg.trials);
}

std::vector<SweepRow> sweep_error_curves(const ExperimentConfig& cfg) {
    validate(cfg);
    require_sweep(cfg);
    std::vector<SweepRow> rows;
    rows.reserve(cfg.snr_db.size());
    for (double db : cfg.snr_db) {
        const auto point = at_snr(cfg, db);
        const auto env = theory_envelope(point);
        SweepRow row{db, env.pe_upper, env.pe_lower, awgn_reference(snr_bounds(point.constellation, point.noise).snr),
                     kNaN, kNaN, 0};
        if (cfg.simulate) {
            const auto est = run_trials(point);
            row.pe_empirical = est.rate;
            row.ci_half_width = est.ci_half_width;
            row.trials = est.trials;
        }
        rows.push_back(row);
    }
    return rows;
}

std::vector<ComparisonRow> compare_detectors(const ExperimentConfig& cfg) {
    validate(cfg);
    require_sweep(cfg);
    std::vector<ComparisonRow> rows;
    rows.reserve(cfg.snr_db.size());
    for (double db : cfg.snr_db) {
        const auto point = at_snr(cfg, db);
        const double thresholds[2] = {require_optimal_threshold(point.constellation, point.noise).threshold,
                                      min_distance_detector(point.constellation).threshold};
        const auto counts = count_errors(point, thresholds);
        rows.push_back({db, thresholds[0], thresholds[1], error_envelope(point.constellation, point.noise),
                        min_distance_error_envelope(point.constellation, point.noise),
                        binomial_estimate(counts[0], point.trials), binomial_estimate(counts[1], point.trials)});
    }
    return rows;
}

std::vector<SweepRow> fading_sweep(const ExperimentConfig& cfg) {
    validate(cfg);
    require_sweep(cfg);
    if (cfg.noise.mean.lo() != 0.0 || cfg.noise.mean.hi() != 0.0) {
        throw ConfigError("fading runs require a zero mean interval");
    }
    if (!cfg.independent_components) throw IndependenceNotDeclared();

    std::vector<SweepRow> rows;
    rows.reserve(cfg.snr_db.size());
    for (double db : cfg.snr_db) {
        const auto point = at_snr(cfg, db);
        const auto& c = point.constellation;
        const double snr = snr_bounds(c, point.noise).snr;

        SweepRow row{db, 0.0, 0.0, 0.0, kNaN, kNaN, 0};
        if (cfg.gains) {
            // Exact average over the supplied gain list.
            long double up = 0.0L, lo = 0.0L, ref = 0.0L;
            for (const auto& h : *cfg.gains) {
                const auto env = conditional_error_envelope(ComplexGain(h), c, point.noise.sigma);
                up += env.pe_upper;
                lo += env.pe_lower;
                ref += q_function(std::abs(h) * std::sqrt(2.0 * snr));
            }
            const auto n = static_cast<long double>(cfg.gains->size());
            row.pe_upper_theory = static_cast<double>(up / n);
            row.pe_lower_theory = static_cast<double>(lo / n);
            row.pe_awgn_theory = static_cast<double>(ref / n);
        } else {
            const auto env = averaged_error_envelope(c, point.noise.sigma);
            row.pe_upper_theory = env.pe_upper;
            row.pe_lower_theory = env.pe_lower;
            row.pe_awgn_theory = rayleigh_error_probability(snr);
        }

        if (cfg.simulate) {
            const ScenarioSampler re(point.policy, point.noise, point.seed, false);
            const ScenarioSampler im(point.policy, point.noise, point.seed, true);
            const CounterRng rng(point.seed.value);
            const double xa = c.x_a();
            const double xb = c.x_b();
            const double mid = c.midpoint();
            std::atomic<std::uint64_t> errors{0};
            parallel_ranges(point.trials, point.threads, [&](std::uint64_t begin, std::uint64_t end) {
                std::uint64_t local = 0;
                for (std::uint64_t i = begin; i < end; ++i) {
                    const bool sent_a = rng.bit(Stream::Symbol, i);
                    const std::complex<double> h =
                        cfg.gains ? (*cfg.gains)[cfg.gains->size() == 1 ? 0 : i] : rayleigh_gain(rng, i);
                    const std::complex<double> z(re.sample(i), im.sample(i));
                    const ComplexGain g(h);
                    const double s = sufficient_statistic(g, h * (sent_a ? xa : xb) + z);
                    if ((s > g.magnitude() * mid) != sent_a) ++local;
                }
                errors += local;
            });
            const auto est = binomial_estimate(errors.load(), point.trials);
            row.pe_empirical = est.rate;
            row.ci_half_width = est.ci_half_width;
            row.trials = est.trials;
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace agdn

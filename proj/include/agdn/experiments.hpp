#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "agdn/binomial.hpp"
#include "agdn/channel.hpp"
#include "agdn/detector.hpp"
#include "agdn/scenarios.hpp"

namespace agdn {

namespace detector_choice {
struct Optimal {};
struct MinDistance {};
struct Custom {
    double threshold;
};
}  // namespace detector_choice

using DetectorChoice = std::variant<detector_choice::Optimal, detector_choice::MinDistance, detector_choice::Custom>;

/// How a sweep reaches each target SNR. ScaleDistance keeps the noise box and
/// constellation midpoint fixed and moves the symbol distance; ScaleSigma keeps
/// the constellation and scales every standard deviation (box and policy).
enum class SweepMode { ScaleDistance, ScaleSigma };

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct ExperimentConfig {
    Constellation constellation{1.0, -1.0};
    NoiseModel noise{UncertaintyInterval::point(0.0), SigmaBox(1.0, 1.0)};
    ScenarioPolicy policy = policy::IidUniformBox{};
    DetectorChoice detector = detector_choice::Optimal{};
    std::uint64_t trials = 10000;
    RngSeed seed{};
    std::vector<double> snr_db;
    std::size_t window = 1000;
    SweepMode sweep_mode = SweepMode::ScaleDistance;
    bool simulate = true;
    unsigned threads = 1;  // speed only; never changes results
    // Fading runs only.
    bool independent_components = true;
    std::optional<std::vector<std::complex<double>>> gains;  // Rayleigh draws when empty
};

struct SweepRow {
    double snr_db;
    double pe_upper_theory;
    double pe_lower_theory;
    double pe_awgn_theory;
    double pe_empirical;     // NaN when not simulated
    double ci_half_width;    // NaN when not simulated
    std::uint64_t trials;    // 0 when not simulated
};

struct ComparisonRow {
    double snr_db;
    double threshold_optimal;
    double threshold_min_distance;
    ErrorEnvelope theory_optimal;
    ErrorEnvelope theory_min_distance;
    BinomialEstimate optimal;
    BinomialEstimate min_distance;
};

/// Throws ConfigError on n = 0, unsorted sweep grid, or sweep-mode preconditions.
void validate(const ExperimentConfig& cfg);

/// Threshold of the configured detector; throws NoOptimalDetectorError when
/// the optimal detector is requested outside its existence regime.
ThresholdDetector resolve_detector(const ExperimentConfig& cfg);

/// Config rescaled so the midpoint SNR equals `snr_db`.
ExperimentConfig at_snr(const ExperimentConfig& cfg, double snr_db);

/// Error counts for several thresholds over one shared noise realization.
std::vector<std::uint64_t> count_errors(const ExperimentConfig& cfg, std::span<const double> thresholds);

/// Empirical error rate of the configured detector with its 99% interval.
BinomialEstimate run_trials(const ExperimentConfig& cfg);

std::vector<SweepRow> sweep_error_curves(const ExperimentConfig& cfg);

/// Optimal and minimum-distance detectors on identical noise at each SNR.
std::vector<ComparisonRow> compare_detectors(const ExperimentConfig& cfg);

/// Rayleigh (or custom-gain) fading with sufficient-statistic detection.
/// Requires a zero mean interval.
std::vector<SweepRow> fading_sweep(const ExperimentConfig& cfg);

}  // namespace agdn

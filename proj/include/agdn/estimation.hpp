#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "agdn/channel.hpp"
#include "agdn/detector.hpp"

namespace agdn {

/// One channel use: transmitted symbol x and received value y.
struct IoSample {
    double x;
    double y;
};

struct SolverOptions {
    double tolerance = 1e-3;       // on max(|residual_upper|, |residual_lower|)
    int max_iterations = 500;      // per simplex refinement
    int grid_points = 41;          // per axis of the coarse log grid
    double grid_span = 10.0;       // grid covers [s0 / span, s0 * span]
};

struct SigmaSolution {
    SigmaBox sigma;
    double residual_upper;
    double residual_lower;
    double residual_norm;
    int iterations;
};

struct EstimationResult {
    UncertaintyInterval mean_hat;
    SigmaBox sigma_hat;
    double threshold_hat;
    ErrorEnvelope error_envelope_hat;
    double residual_norm;
    int solver_iterations;
};

/// Sigma solve did not reach the tolerance. Carries the best iterate found.
class EstimationError : public std::runtime_error {
public:
    EstimationError(const std::string& what, std::optional<SigmaSolution> best)
        : std::runtime_error(what), best_(std::move(best)) {}
    [[nodiscard]] const std::optional<SigmaSolution>& best() const noexcept { return best_; }

private:
    std::optional<SigmaSolution> best_;
};

/// Zero-variance input: no sigma box with sigma_lo > 0 can be reported.
class DegenerateInputError : public EstimationError {
public:
    explicit DegenerateInputError(const std::string& what) : EstimationError(what, std::nullopt) {}
};

struct WindowExtremes {
    double min;
    double max;
};

/// Smallest and largest mean over all windows v[k .. k+m-1], k = 0..n-m.
/// Throws std::invalid_argument unless 1 <= m <= n.
WindowExtremes window_mean_extremes(std::span<const double> values, std::size_t m);

/// [min, max] over sliding windows of the mean of y - x.
UncertaintyInterval estimate_mean_interval(std::span<const IoSample> samples, std::size_t m);

/// max over windows of mean[ 1{y <= y0} - upper_cdf(y0 - x - mu_lo) ].
double residual_upper(const SigmaBox& sigma, const UncertaintyInterval& mean_hat, double y0,
                      std::span<const IoSample> samples, std::size_t m);

/// min over windows of mean[ 1{y <= y0} - lower_cdf(y0 - x - mu_hi) ].
double residual_lower(const SigmaBox& sigma, const UncertaintyInterval& mean_hat, double y0,
                      std::span<const IoSample> samples, std::size_t m);

/// Precomputed window counts for repeated residual evaluation at fixed
/// (samples, m, mean_hat, y0). Each evaluation is O(windows x symbols).
class ResidualSystem {
public:
    ResidualSystem(std::span<const IoSample> samples, std::size_t m, UncertaintyInterval mean_hat, double y0);

    [[nodiscard]] double upper(const SigmaBox& sigma) const;
    [[nodiscard]] double lower(const SigmaBox& sigma) const;

    [[nodiscard]] std::size_t windows() const noexcept { return windows_; }

private:
    template <class Kernel, class Pick>
    double scan(Kernel kernel, double shift, Pick pick) const;

    std::size_t m_;
    std::size_t windows_;
    UncertaintyInterval mean_hat_;
    double y0_;
    std::vector<double> symbols_;                  // distinct x values
    std::vector<std::uint32_t> below_;             // per window: count of y <= y0
    std::vector<std::vector<std::uint32_t>> hits_; // per symbol, per window: count of x == symbol
};

/// Solves residual_upper = residual_lower = 0 for 0 < sigma_lo <= sigma_hi.
/// Simplex refinement starts at sigma_lo = sigma_hi = std(y - x - midpoint);
/// a coarse log grid seeds a second refinement when the first stalls.
SigmaSolution estimate_sigma_interval(std::span<const IoSample> samples, std::size_t m,
                                      const UncertaintyInterval& mean_hat, double y0,
                                      const SolverOptions& options = {});

/// Full pipeline: mean interval, threshold, sigma box, error envelope.
EstimationResult estimate_all(std::span<const IoSample> samples, std::size_t m, const Constellation& c,
                              const SolverOptions& options = {});

/// sigma_hi^2 = max window mean of z^2, sigma_lo^2 = min window mean of z^2.
SigmaBox phi_max_mean_variance(std::span<const double> noise_samples, std::size_t m);

}  // namespace agdn

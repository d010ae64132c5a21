#pragma once

#include <stdexcept>
#include <variant>

#include "agdn/channel.hpp"

namespace agdn {

/// Decides x_a iff the received value is strictly above `threshold`.
struct ThresholdDetector {
    double threshold;
};

/// Returned when the mean width is not below the symbol distance. Equality
/// is reported here too, although the boundary case is not covered by the
/// existence proof.
struct NoOptimalDetector {
    double mean_width;
    double symbol_distance;

    [[nodiscard]] bool at_boundary() const noexcept { return mean_width == symbol_distance; }
};

class NoOptimalDetectorError : public std::runtime_error {
public:
    explicit NoOptimalDetectorError(NoOptimalDetector info);
    [[nodiscard]] const NoOptimalDetector& info() const noexcept { return info_; }

private:
    NoOptimalDetector info_;
};

struct ErrorEnvelope {
    double pe_lower;
    double pe_upper;
};

/// Optimal threshold (x_a + x_b + mu_hi + mu_lo) / 2 when mu_hi - mu_lo < x_a - x_b.
std::variant<ThresholdDetector, NoOptimalDetector> optimal_threshold(const Constellation& c,
                                                                     const NoiseModel& noise);

/// Same as optimal_threshold but throws NoOptimalDetectorError.
ThresholdDetector require_optimal_threshold(const Constellation& c, const NoiseModel& noise);

/// Minimum-distance rule: threshold at the constellation midpoint.
inline ThresholdDetector min_distance_detector(const Constellation& c) { return {c.midpoint()}; }

/// x_a iff y > threshold; ties go to x_b.
double decide(const ThresholdDetector& d, const Constellation& c, double y);

/// Error envelope of the rule "x_a iff Y > y0" with equiprobable symbols.
ErrorEnvelope error_envelope_at_threshold(double y0, const Constellation& c, const NoiseModel& noise);

/// Closed-form envelope of the optimal detector; throws NoOptimalDetectorError
/// outside the existence regime.
ErrorEnvelope error_envelope(const Constellation& c, const NoiseModel& noise);

/// Midpoint detector evaluated under the uncertain model.
ErrorEnvelope min_distance_error_envelope(const Constellation& c, const NoiseModel& noise);

}  // namespace agdn

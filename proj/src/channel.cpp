#include "agdn/channel.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace agdn {

UncertaintyInterval::UncertaintyInterval(double lo, double hi) : lo_(lo), hi_(hi) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo <= hi)) {
        throw std::domain_error("invalid mean interval [" + std::to_string(lo) + ", " +
                                std::to_string(hi) + "]: need lo <= hi");
    }
}

Constellation::Constellation(double x_a, double x_b) : x_a_(x_a), x_b_(x_b) {
    if (!std::isfinite(x_a) || !std::isfinite(x_b) || !(x_a > x_b)) {
        throw std::domain_error("invalid constellation: need x_a > x_b");
    }
}

Constellation Constellation::with_distance(double d) const {
    const double mid = midpoint();
    return {mid + 0.5 * d, mid - 0.5 * d};
}

ProbabilityEnvelope output_cdf_envelope(const NoiseModel& noise, double x, double y) {
    return {semi_g_lower_cdf(y - x - noise.mean.hi(), noise.sigma),
            semi_g_upper_cdf(y - x - noise.mean.lo(), noise.sigma)};
}

ProbabilityEnvelope output_tail_envelope(const NoiseModel& noise, double x, double y) {
    return {1.0 - semi_g_upper_cdf(y - x - noise.mean.lo(), noise.sigma),
            1.0 - semi_g_lower_cdf(y - x - noise.mean.hi(), noise.sigma)};
}

SnrBounds snr_bounds(const Constellation& c, const NoiseModel& noise) {
    const double d = c.distance();
    const double w = noise.mean.width();
    const double s_lo = noise.sigma.lo();
    const double s_hi = noise.sigma.hi();

    const double hi = (d + w) * (d + w) / (8.0 * s_lo * s_lo);
    const double lo = w < d ? (d - w) * (d - w) / (8.0 * s_hi * s_hi) : 0.0;
    return {lo, hi, 0.5 * (lo + hi)};
}

double awgn_equivalent_sigma(const SigmaBox& box) {
    const double a = box.lo() * box.lo();
    const double b = box.hi() * box.hi();
    return std::sqrt(2.0 * a * b / (a + b));
}

double to_db(double linear) {
    if (linear < 0.0) throw std::domain_error("to_db: negative value");
    if (linear == 0.0) return -std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(linear);
}

double from_db(double db) { return std::pow(10.0, db / 10.0); }

}  // namespace agdn

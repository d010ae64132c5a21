#include "agdn/detector.hpp"

#include <sstream>

namespace agdn {

namespace {

std::string describe(const NoOptimalDetector& info) {
    std::ostringstream os;
    os.precision(17);
    os << "no optimal detector: mean width " << info.mean_width << " is not below symbol distance "
       << info.symbol_distance;
    return os.str();
}

}  // namespace

NoOptimalDetectorError::NoOptimalDetectorError(NoOptimalDetector info)
    : std::runtime_error(describe(info)), info_(info) {}

std::variant<ThresholdDetector, NoOptimalDetector> optimal_threshold(const Constellation& c,
                                                                     const NoiseModel& noise) {
    const double w = noise.mean.width();
    if (!(w < c.distance())) return NoOptimalDetector{w, c.distance()};
    return ThresholdDetector{0.5 * (c.x_a() + c.x_b() + noise.mean.hi() + noise.mean.lo())};
}

ThresholdDetector require_optimal_threshold(const Constellation& c, const NoiseModel& noise) {
    auto r = optimal_threshold(c, noise);
    if (auto* none = std::get_if<NoOptimalDetector>(&r)) throw NoOptimalDetectorError(*none);
    return std::get<ThresholdDetector>(r);
}

double decide(const ThresholdDetector& d, const Constellation& c, double y) {
    return y > d.threshold ? c.x_a() : c.x_b();
}

ErrorEnvelope error_envelope_at_threshold(double y0, const Constellation& c, const NoiseModel& noise) {
    // Error given x_a is {Y <= y0}; error given x_b is {Y > y0}.
    const auto miss_a = output_cdf_envelope(noise, c.x_a(), y0);
    const auto miss_b = output_tail_envelope(noise, c.x_b(), y0);
    return {0.5 * miss_a.lower + 0.5 * miss_b.lower, 0.5 * miss_a.upper + 0.5 * miss_b.upper};
}

ErrorEnvelope error_envelope(const Constellation& c, const NoiseModel& noise) {
    require_optimal_threshold(c, noise);
    const double s_lo = noise.sigma.lo();
    const double s_hi = noise.sigma.hi();
    const double d = c.distance();
    const double w = noise.mean.width();
    const double sum = s_lo + s_hi;
    return {(2.0 * s_lo / sum) * q_function((d + w) / (2.0 * s_lo)),
            (2.0 * s_hi / sum) * q_function((d - w) / (2.0 * s_hi))};
}

ErrorEnvelope min_distance_error_envelope(const Constellation& c, const NoiseModel& noise) {
    return error_envelope_at_threshold(c.midpoint(), c, noise);
}

}  // namespace agdn

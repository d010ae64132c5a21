#include "agdn/fading.hpp"

#include <cmath>

namespace agdn {

namespace {

double require_gain(const ComplexGain& h) {
    const double mag = h.magnitude();
    if (!(mag > 0.0) || !std::isfinite(mag)) throw std::domain_error("channel gain must be finite and nonzero");
    return mag;
}

}  // namespace

double sufficient_statistic(const ComplexGain& h, std::complex<double> y_prime) {
    const double mag = require_gain(h);
    return std::real(std::conj(h.value() / mag) * y_prime);
}

SigmaBox rotate_gnormal_box(const ComplexGain& h, const SigmaBox& box) {
    const double mag = require_gain(h);
    return {mag * box.lo(), mag * box.hi()};
}

ComplexNoiseModel rotate_gdistributed(const ComplexGain& h, const ComplexNoiseModel& z) {
    if (!z.independent_components) throw IndependenceNotDeclared();
    if (!(z.re.mean == z.im.mean) || !(z.re.sigma == z.im.sigma)) {
        throw std::invalid_argument("rotate_gdistributed: real and imaginary parts must share one box");
    }
    const double lo = z.re.mean.lo();
    const double hi = z.re.mean.hi();
    const double p1 = h.re_pos(), n1 = h.re_neg(), p2 = h.im_pos(), n2 = h.im_neg();

    // Re(hZ') = h1 Re - h2 Im, Im(hZ') = h2 Re + h1 Im.
    const UncertaintyInterval re_mean(lo * (p1 + n2) - hi * (n1 + p2), hi * (p1 + n2) - lo * (n1 + p2));
    const UncertaintyInterval im_mean(lo * (p1 + p2) - hi * (n1 + n2), hi * (p1 + p2) - lo * (n1 + n2));
    const SigmaBox sigma = rotate_gnormal_box(h, z.re.sigma);
    return {NoiseModel{re_mean, sigma}, NoiseModel{im_mean, sigma}, true};
}

ErrorEnvelope conditional_error_envelope(const ComplexGain& h, const Constellation& c, const SigmaBox& box) {
    const double mag = require_gain(h);
    const double sum = box.lo() + box.hi();
    const double d = mag * c.distance();
    return {(2.0 * box.lo() / sum) * q_function(d / (2.0 * box.lo())),
            (2.0 * box.hi() / sum) * q_function(d / (2.0 * box.hi()))};
}

ErrorEnvelope averaged_error_envelope(const Constellation& c, const SigmaBox& box) {
    const double d2 = c.distance() * c.distance();
    const double sum = box.lo() + box.hi();
    // 1 - sqrt(a) = (1 - a) / (1 + sqrt(a)) avoids cancellation for large distances.
    auto term = [&](double s) {
        const double a = d2 / (d2 + 8.0 * s * s);
        return (8.0 * s * s / (d2 + 8.0 * s * s)) / (1.0 + std::sqrt(a));
    };
    return {(box.lo() / sum) * term(box.lo()), (box.hi() / sum) * term(box.hi())};
}

double rayleigh_error_probability(double snr) {
    if (!(snr >= 0.0)) throw std::domain_error("rayleigh_error_probability: negative snr");
    return 0.5 * (1.0 - std::sqrt(snr / (1.0 + snr)));
}

}  // namespace agdn

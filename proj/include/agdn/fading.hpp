#pragma once

#include <complex>
#include <stdexcept>

#include "agdn/channel.hpp"
#include "agdn/detector.hpp"

namespace agdn {

/// Complex channel gain h = re + i im.
class ComplexGain {
public:
    ComplexGain(double re, double im) : h_(re, im) {}
    explicit ComplexGain(std::complex<double> h) : h_(h) {}

    [[nodiscard]] double re() const noexcept { return h_.real(); }
    [[nodiscard]] double im() const noexcept { return h_.imag(); }
    [[nodiscard]] double magnitude() const noexcept { return std::abs(h_); }
    [[nodiscard]] std::complex<double> value() const noexcept { return h_; }

    [[nodiscard]] double re_pos() const noexcept { return h_.real() > 0.0 ? h_.real() : 0.0; }
    [[nodiscard]] double re_neg() const noexcept { return h_.real() < 0.0 ? -h_.real() : 0.0; }
    [[nodiscard]] double im_pos() const noexcept { return h_.imag() > 0.0 ? h_.imag() : 0.0; }
    [[nodiscard]] double im_neg() const noexcept { return h_.imag() < 0.0 ? -h_.imag() : 0.0; }

private:
    std::complex<double> h_;
};

/// Noise Z' = Re + i Im. `independent_components` declares that Im is
/// independent of Re under the sublinear expectation; the rotation results
/// only hold under that hypothesis.
struct ComplexNoiseModel {
    NoiseModel re;
    NoiseModel im;
    bool independent_components = false;
};

class IndependenceNotDeclared : public std::invalid_argument {
public:
    IndependenceNotDeclared()
        : std::invalid_argument("rotation requires independent real and imaginary noise components") {}
};

/// S' = Re(conj(h/|h|) y'). Throws std::domain_error when |h| = 0.
double sufficient_statistic(const ComplexGain& h, std::complex<double> y_prime);

/// [|h| sigma_lo, |h| sigma_hi].
SigmaBox rotate_gnormal_box(const ComplexGain& h, const SigmaBox& box);

/// Law of h Z' for maximal + G-normal components. Requires identical boxes on
/// both components and declared independence.
ComplexNoiseModel rotate_gdistributed(const ComplexGain& h, const ComplexNoiseModel& z);

/// Error envelope for a known gain with no mean uncertainty.
ErrorEnvelope conditional_error_envelope(const ComplexGain& h, const Constellation& c, const SigmaBox& box);

/// Conditional envelope averaged over H ~ CN(0, 1).
ErrorEnvelope averaged_error_envelope(const Constellation& c, const SigmaBox& box);

/// Classical Rayleigh result 1/2 (1 - sqrt(snr / (1 + snr))).
double rayleigh_error_probability(double snr);

}  // namespace agdn

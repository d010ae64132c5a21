#pragma once

#include "agdn/math_kernel.hpp"

namespace agdn {

/// Closed interval [lo, hi] of possible means.
class UncertaintyInterval {
public:
    /// Throws std::domain_error unless lo <= hi (both finite).
    UncertaintyInterval(double lo, double hi);
    static UncertaintyInterval point(double v) { return {v, v}; }

    [[nodiscard]] double lo() const noexcept { return lo_; }
    [[nodiscard]] double hi() const noexcept { return hi_; }
    [[nodiscard]] double width() const noexcept { return hi_ - lo_; }
    [[nodiscard]] double midpoint() const noexcept { return 0.5 * (lo_ + hi_); }
    [[nodiscard]] bool degenerate() const noexcept { return lo_ == hi_; }
    [[nodiscard]] bool contains(double v) const noexcept { return lo_ <= v && v <= hi_; }

    friend bool operator==(const UncertaintyInterval&, const UncertaintyInterval&) = default;

private:
    double lo_;
    double hi_;
};

/// Noise Z = M + delta with M maximal on `mean` and delta G-normal with
/// standard deviations in `sigma`. A point mean interval is the channel
/// without mean uncertainty.
struct NoiseModel {
    UncertaintyInterval mean;
    SigmaBox sigma;

    [[nodiscard]] bool degenerate() const noexcept { return mean.degenerate() && sigma.degenerate(); }
};

/// Binary input alphabet {x_a, x_b} with x_a > x_b.
class Constellation {
public:
    Constellation(double x_a, double x_b);

    [[nodiscard]] double x_a() const noexcept { return x_a_; }
    [[nodiscard]] double x_b() const noexcept { return x_b_; }
    [[nodiscard]] double distance() const noexcept { return x_a_ - x_b_; }
    [[nodiscard]] double midpoint() const noexcept { return 0.5 * (x_a_ + x_b_); }

    /// Same midpoint, new symbol distance.
    [[nodiscard]] Constellation with_distance(double d) const;

    friend bool operator==(const Constellation&, const Constellation&) = default;

private:
    double x_a_;
    double x_b_;
};

struct ProbabilityEnvelope {
    double lower;
    double upper;

    [[nodiscard]] double width() const noexcept { return upper - lower; }
};

struct SnrBounds {
    double snr_lo;
    double snr_hi;
    double snr;  // midpoint of snr_lo and snr_hi
};

/// Envelope of P(Y <= y | X = x).
ProbabilityEnvelope output_cdf_envelope(const NoiseModel& noise, double x, double y);

/// Envelope of P(Y > y | X = x); exact complement of output_cdf_envelope.
ProbabilityEnvelope output_tail_envelope(const NoiseModel& noise, double x, double y);

/// snr_lo is 0 whenever the mean width reaches the symbol distance.
SnrBounds snr_bounds(const Constellation& c, const NoiseModel& noise);

/// sigma with sigma^2 = 2 s_hi^2 s_lo^2 / (s_hi^2 + s_lo^2).
double awgn_equivalent_sigma(const SigmaBox& box);

/// 10 log10(v); -inf for v == 0.
double to_db(double linear);
double from_db(double db);

}  // namespace agdn

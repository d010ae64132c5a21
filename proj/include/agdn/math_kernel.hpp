#pragma once

// Scalar kernels shared by every envelope: the Gaussian tail Q and the
// upper/lower CDFs of a G-normal variable N(0, [sigma_lo^2, sigma_hi^2]).

namespace agdn {

/// Standard-deviation interval [sigma_lo, sigma_hi] of a G-normal variable.
class SigmaBox {
public:
    /// Throws std::domain_error unless 0 < lo <= hi (both finite).
    SigmaBox(double lo, double hi);

    [[nodiscard]] double lo() const noexcept { return lo_; }
    [[nodiscard]] double hi() const noexcept { return hi_; }
    [[nodiscard]] bool degenerate() const noexcept { return lo_ == hi_; }

    /// Box with both ends multiplied by k > 0.
    [[nodiscard]] SigmaBox scaled(double k) const;

    friend bool operator==(const SigmaBox&, const SigmaBox&) = default;

private:
    double lo_;
    double hi_;
};

/// Beyond this many standard deviations the kernels return exact 0 or 1.
inline constexpr double kTailClamp = 40.0;

/// Q(v) = P(V > v) for standard normal V. Throws std::domain_error on NaN/inf.
double q_function(double v);

/// Upper envelope of P(delta <= t):
///   t <= 0 : 2 s_hi/(s_hi+s_lo) * Q(-t/s_hi)
///   t >  0 : 1 - 2 s_lo/(s_hi+s_lo) * Q(t/s_lo)
double semi_g_upper_cdf(double t, const SigmaBox& box);

/// Lower envelope of P(delta <= t):
///   t <= 0 : 2 s_lo/(s_hi+s_lo) * Q(-t/s_lo)
///   t >  0 : 1 - 2 s_hi/(s_hi+s_lo) * Q(t/s_hi)
double semi_g_lower_cdf(double t, const SigmaBox& box);

}  // namespace agdn

#include "agdn/math_kernel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace agdn {

SigmaBox::SigmaBox(double lo, double hi) : lo_(lo), hi_(hi) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo > 0.0) || !(lo <= hi)) {
        throw std::domain_error("invalid sigma box [" + std::to_string(lo) + ", " +
                                std::to_string(hi) + "]: need 0 < lo <= hi");
    }
}

SigmaBox SigmaBox::scaled(double k) const {
    if (!(k > 0.0) || !std::isfinite(k)) throw std::domain_error("sigma scale must be positive");
    return SigmaBox(lo_ * k, hi_ * k);
}

double q_function(double v) {
    if (!std::isfinite(v)) throw std::domain_error("q_function: non-finite argument");
    if (v > kTailClamp) return 0.0;
    if (v < -kTailClamp) return 1.0;
    // erfc keeps full relative precision in the upper tail; for v < 0 the
    // result is 1 - (tiny), which erfc also returns correctly rounded.
    return 0.5 * std::erfc(v / std::numbers::sqrt2);
}

namespace {

// Q(a) where a may be +-inf, NaN-free by construction.
double q_clamped(double a) {
    if (a > kTailClamp) return 0.0;
    if (a < -kTailClamp) return 1.0;
    return 0.5 * std::erfc(a / std::numbers::sqrt2);
}

void check_arg(double t) {
    if (std::isnan(t)) throw std::domain_error("semi-G kernel: NaN argument");
}

}  // namespace

double semi_g_upper_cdf(double t, const SigmaBox& box) {
    check_arg(t);
    const double sum = box.hi() + box.lo();
    if (t <= 0.0) {
        return (2.0 * box.hi() / sum) * q_clamped(-t / box.hi());
    }
    return 1.0 - (2.0 * box.lo() / sum) * q_clamped(t / box.lo());
}

double semi_g_lower_cdf(double t, const SigmaBox& box) {
    check_arg(t);
    const double sum = box.hi() + box.lo();
    if (t <= 0.0) {
        return (2.0 * box.lo() / sum) * q_clamped(-t / box.lo());
    }
    return 1.0 - (2.0 * box.hi() / sum) * q_clamped(t / box.hi());
}

}  // namespace agdn

#pragma once

#include <cstdint>

namespace agdn {

struct BinomialEstimate {
    std::uint64_t errors = 0;
    std::uint64_t trials = 0;
    double rate = 0.0;
    double ci_half_width = 0.0;
};

inline constexpr double kConfidenceLevel = 0.99;

/// 99% two-sided interval for errors/trials. Normal approximation with
/// continuity correction for trials >= 1000, Clopper-Pearson below that
/// (half width = larger of the two sides).
BinomialEstimate binomial_estimate(std::uint64_t errors, std::uint64_t trials);

}  // namespace agdn

#include <cmath>
#include <random>
#include <variant>

#include <gtest/gtest.h>

#include "agdn/detector.hpp"
#include "oracles.hpp"

using namespace agdn;

namespace {

NoiseModel model(double mlo, double mhi, double slo, double shi) {
    return {UncertaintyInterval(mlo, mhi), SigmaBox(slo, shi)};
}

}  // namespace

TEST(OptimalThreshold, ExistenceRegime) {
    const Constellation c(1.0, -1.0);
    const auto r = optimal_threshold(c, model(-0.003, 0.067, 1.0, 1.0));
    ASSERT_TRUE(std::holds_alternative<ThresholdDetector>(r));
    EXPECT_NEAR(std::get<ThresholdDetector>(r).threshold, 0.032, 1e-15);

    const auto none = optimal_threshold(c, model(-1.5, 1.5, 1.0, 1.0));
    ASSERT_TRUE(std::holds_alternative<NoOptimalDetector>(none));
    EXPECT_DOUBLE_EQ(std::get<NoOptimalDetector>(none).mean_width, 3.0);
    EXPECT_FALSE(std::get<NoOptimalDetector>(none).at_boundary());
}

TEST(OptimalThreshold, BoundaryCountsAsNonexistent) {
    const Constellation c(1.0, -1.0);
    const auto r = optimal_threshold(c, model(-1.0, 1.0, 1.0, 1.0));
    ASSERT_TRUE(std::holds_alternative<NoOptimalDetector>(r));
    EXPECT_TRUE(std::get<NoOptimalDetector>(r).at_boundary());
    EXPECT_THROW(require_optimal_threshold(c, model(-1.0, 1.0, 1.0, 1.0)), NoOptimalDetectorError);
    EXPECT_THROW(error_envelope(c, model(-1.0, 1.0, 1.0, 1.0)), NoOptimalDetectorError);
}

TEST(Decide, TiesGoToLowerSymbol) {
    const Constellation c(1.0, -1.0);
    const ThresholdDetector d{0.25};
    EXPECT_EQ(decide(d, c, 0.25), -1.0);
    EXPECT_EQ(decide(d, c, 0.2500001), 1.0);
    EXPECT_EQ(min_distance_detector(Constellation(3.0, 1.0)).threshold, 2.0);
}

TEST(ErrorEnvelope, NoMeanUncertaintyForm) {
    // Midpoint rule with snr bounds: upper uses Q(sqrt(2 snr_lo)), lower Q(sqrt(2 snr_hi)).
    const Constellation c(1.0, -1.0);
    const auto n = model(0.0, 0.0, 0.7, 1.3);
    const auto e = error_envelope(c, n);
    const auto s = snr_bounds(c, n);
    EXPECT_NEAR(e.pe_upper, 2.0 * 1.3 / 2.0 * oracle::q(std::sqrt(2.0 * s.snr_lo)), 1e-15);
    EXPECT_NEAR(e.pe_lower, 2.0 * 0.7 / 2.0 * oracle::q(std::sqrt(2.0 * s.snr_hi)), 1e-15);
}

TEST(ErrorEnvelope, ThresholdCurveMatchesPiecewiseForms) {
    std::mt19937_64 g(3);
    for (int k = 0; k < 100; ++k) {
        const auto m = oracle::random_existence_model(g);
        const Constellation c(m.xa, m.xb);
        const auto n = model(m.mlo, m.mhi, m.slo, m.shi);
        for (double y0 = m.xb - 3.0 * m.shi; y0 <= m.xa + 3.0 * m.shi; y0 += 0.05) {
            const auto e = error_envelope_at_threshold(y0, c, n);
            EXPECT_NEAR(e.pe_upper, oracle::pe_upper_piecewise(y0, m.xa, m.xb, m.mlo, m.mhi, m.slo, m.shi), 1e-13);
            EXPECT_NEAR(e.pe_lower, oracle::pe_lower_piecewise(y0, m.xa, m.xb, m.mlo, m.mhi, m.slo, m.shi), 1e-13);
            EXPECT_LE(e.pe_lower, e.pe_upper + 1e-15);
        }
    }
}

TEST(ErrorEnvelope, ClosedFormEqualsCurveAtThreshold) {
    std::mt19937_64 g(5);
    for (int k = 0; k < 200; ++k) {
        const auto m = oracle::random_existence_model(g);
        const Constellation c(m.xa, m.xb);
        const auto n = model(m.mlo, m.mhi, m.slo, m.shi);
        const auto closed = error_envelope(c, n);
        const double y0 = 0.5 * (m.xa + m.xb + m.mlo + m.mhi);
        EXPECT_NEAR(closed.pe_upper, oracle::pe_upper_piecewise(y0, m.xa, m.xb, m.mlo, m.mhi, m.slo, m.shi), 1e-14);
        EXPECT_NEAR(closed.pe_lower, oracle::pe_lower_piecewise(y0, m.xa, m.xb, m.mlo, m.mhi, m.slo, m.shi), 1e-14);
    }
}

TEST(ErrorEnvelope, MinDistanceIsWorseUnderAsymmetricMean) {
    const Constellation c(1.0, -1.0);
    for (double sigma : {0.3, 0.5, 0.8, 1.2}) {
        const auto n = model(-0.003, 0.067, sigma, sigma);
        EXPECT_GT(min_distance_error_envelope(c, n).pe_upper, error_envelope(c, n).pe_upper) << sigma;
    }
    const auto sym = model(-0.05, 0.05, 0.5, 0.9);
    EXPECT_DOUBLE_EQ(min_distance_error_envelope(c, sym).pe_upper, error_envelope(c, sym).pe_upper);
}

TEST(ErrorEnvelope, NonexistenceUpperStaysAboveHalf) {
    const Constellation c(1.0, -1.0);
    const auto n = model(-1.5, 1.2, 0.5, 1.5);
    for (double y0 = -1.0 - 1.5 - 9.0; y0 <= 1.0 + 1.2 + 9.0; y0 += 0.01) {
        EXPECT_GT(error_envelope_at_threshold(y0, c, n).pe_upper, 0.5) << y0;
    }
    EXPECT_NEAR(error_envelope_at_threshold(-40.0, c, n).pe_upper, 0.5, 1e-12);
}

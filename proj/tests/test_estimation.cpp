#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <boost/math/distributions/normal.hpp>
#include <gtest/gtest.h>

#include "agdn/estimation.hpp"
#include "agdn/scenarios.hpp"

using namespace agdn;

namespace {

std::vector<IoSample> transmit(const std::vector<double>& z, const Constellation& c, std::uint64_t seed) {
    const CounterRng rng(seed);
    std::vector<IoSample> out(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
        const double x = rng.bit(Stream::Symbol, i) ? c.x_a() : c.x_b();
        out[i] = {x, x + z[i]};
    }
    return out;
}

std::vector<IoSample> residual_samples(std::initializer_list<double> r) {
    std::vector<IoSample> out;
    for (double v : r) out.push_back({0.0, v});
    return out;
}

}  // namespace

TEST(WindowMeans, SmallExamples) {
    const auto c = estimate_mean_interval(residual_samples({2.5, 2.5, 2.5, 2.5, 2.5}), 3);
    EXPECT_EQ(c.lo(), 2.5);
    EXPECT_EQ(c.hi(), 2.5);

    const auto r = estimate_mean_interval(residual_samples({0.0, 0.0, 1.0, 1.0}), 2);
    EXPECT_DOUBLE_EQ(r.lo(), 0.0);
    EXPECT_DOUBLE_EQ(r.hi(), 1.0);

    EXPECT_THROW(estimate_mean_interval(residual_samples({1.0, 2.0}), 3), std::invalid_argument);
    EXPECT_THROW(estimate_mean_interval(residual_samples({1.0, 2.0}), 0), std::invalid_argument);
    EXPECT_THROW(estimate_mean_interval({}, 1), std::invalid_argument);
}

TEST(WindowMeans, MatchesDirectSums) {
    std::mt19937_64 g(1);
    std::normal_distribution<double> nd(3.0, 10.0);
    std::vector<double> v(2000);
    for (auto& x : v) x = nd(g);
    for (std::size_t m : {1u, 7u, 100u, 2000u}) {
        double lo = INFINITY, hi = -INFINITY;
        for (std::size_t k = 0; k + m <= v.size(); ++k) {
            const double s = std::accumulate(v.begin() + k, v.begin() + k + m, 0.0) / m;
            lo = std::min(lo, s);
            hi = std::max(hi, s);
        }
        const auto ext = window_mean_extremes(v, m);
        EXPECT_NEAR(ext.min, lo, 1e-11);
        EXPECT_NEAR(ext.max, hi, 1e-11);
    }
}

TEST(WindowMeans, BracketsOverallMeanAndShrinksWithWindow) {
    const NoiseModel box{UncertaintyInterval(-0.1, 0.2), SigmaBox(0.8, 1.6)};
    const auto z = generate_noise(policy::IidUniformBox{}, box, 20000, RngSeed{2});
    const auto s = transmit(z, Constellation(1.0, -1.0), 2);
    const double overall = std::accumulate(z.begin(), z.end(), 0.0) / z.size();
    UncertaintyInterval prev = estimate_mean_interval(s, 1);
    for (std::size_t m : {2u, 10u, 100u, 1000u, 20000u}) {
        const auto cur = estimate_mean_interval(s, m);
        EXPECT_LE(cur.lo(), overall + 1e-12);
        EXPECT_GE(cur.hi(), overall - 1e-12);
        EXPECT_GE(cur.lo(), prev.lo() - 1e-12) << m;
        EXPECT_LE(cur.hi(), prev.hi() + 1e-12) << m;
        prev = cur;
    }
}

TEST(WindowMeans, BlockSwitchRecoversMeanBox) {
    const NoiseModel box{UncertaintyInterval(-0.1, 0.2), SigmaBox(0.05, 0.1)};
    const auto z = generate_noise(policy::BlockSwitch{1000}, box, 100000, RngSeed{31});
    const auto m = estimate_mean_interval(transmit(z, Constellation(1.0, -1.0), 31), 1000);
    EXPECT_NEAR(m.lo(), -0.1, 0.02);
    EXPECT_NEAR(m.hi(), 0.2, 0.02);
}

TEST(Residuals, ExactZeroOnBalancedData) {
    // Every window of even length holds equally many values on each side of y0 = 0.
    std::vector<IoSample> s;
    for (int i = 0; i < 400; ++i) s.push_back({0.0, i % 2 ? 1.0 : -1.0});
    const auto mean = UncertaintyInterval::point(0.0);
    for (double sigma : {0.3, 1.0, 4.0}) {
        EXPECT_NEAR(residual_upper(SigmaBox(sigma, sigma), mean, 0.0, s, 20), 0.0, 1e-15);
        EXPECT_NEAR(residual_lower(SigmaBox(sigma, sigma), mean, 0.0, s, 20), 0.0, 1e-15);
    }
}

TEST(Residuals, UpperTurnsNegativeAsSigmaHiGrows) {
    const NoiseModel box{UncertaintyInterval::point(0.0), SigmaBox(1.0, 1.0)};
    const auto s = transmit(generate_noise(policy::Fixed{0.0, 1.0}, box, 20000, RngSeed{4}), Constellation(1.0, -1.0), 4);
    const auto mean = UncertaintyInterval::point(0.0);
    double prev = residual_upper(SigmaBox(1.0, 1.0), mean, 0.0, s, 500);
    for (double hi = 2.0; hi <= 1e4; hi *= 2.0) {
        const double r = residual_upper(SigmaBox(1.0, hi), mean, 0.0, s, 500);
        EXPECT_LE(r, prev + 1e-12);
        prev = r;
    }
    EXPECT_LT(prev, -0.3);
    const double lower_big = residual_lower(SigmaBox(1.0, 1e4), mean, 0.0, s, 500);
    EXPECT_GT(lower_big, 0.3);
}

TEST(Residuals, SystemMatchesFreeFunctions) {
    const NoiseModel box{UncertaintyInterval(-0.1, 0.2), SigmaBox(0.8, 1.6)};
    const auto s = transmit(generate_noise(policy::TwoPointSwitch{0.5}, box, 5000, RngSeed{6}), Constellation(1.0, -1.0), 6);
    const ResidualSystem sys(s, 250, box.mean, 0.05);
    for (double lo : {0.5, 1.0}) {
        const SigmaBox b(lo, 2.0 * lo);
        EXPECT_EQ(sys.upper(b), residual_upper(b, box.mean, 0.05, s, 250));
        EXPECT_EQ(sys.lower(b), residual_lower(b, box.mean, 0.05, s, 250));
    }
    EXPECT_EQ(sys.windows(), 5000u - 250u + 1u);
}

TEST(Residuals, BlockPermutationKeepsResiduals) {
    const NoiseModel box{UncertaintyInterval(-0.1, 0.2), SigmaBox(0.8, 1.6)};
    const auto s = transmit(generate_noise(policy::BlockSwitch{1000}, box, 40000, RngSeed{8}), Constellation(1.0, -1.0), 8);
    std::vector<std::size_t> order(40);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), std::mt19937_64(8));
    std::vector<IoSample> p;
    for (auto b : order) p.insert(p.end(), s.begin() + b * 1000, s.begin() + (b + 1) * 1000);
    const SigmaBox sig(0.9, 1.5);
    const double y0 = 0.05;
    EXPECT_NEAR(residual_upper(sig, box.mean, y0, s, 500), residual_upper(sig, box.mean, y0, p, 500), 0.02);
    EXPECT_NEAR(residual_lower(sig, box.mean, y0, s, 500), residual_lower(sig, box.mean, y0, p, 500), 0.02);
}

TEST(Residuals, NearZeroAtTrueBoxUnderExtremeSwitching) {
    const NoiseModel box{UncertaintyInterval(-0.1, 0.2), SigmaBox(0.8, 1.6)};
    const Constellation c(1.0, -1.0);
    const auto s = transmit(generate_noise(policy::TwoPointSwitch{0.5}, box, 100000, RngSeed{10}), c, 10);
    const double y0 = 0.5 * (c.x_a() + c.x_b() + box.mean.lo() + box.mean.hi());
    EXPECT_LE(std::abs(residual_upper(box.sigma, box.mean, y0, s, 1000)), 0.02);
    EXPECT_LE(std::abs(residual_lower(box.sigma, box.mean, y0, s, 1000)), 0.02);
}

TEST(SigmaSolve, ReturnsInitialGuessWhenAlreadyARoot) {
    // Repeating quantile pattern: every window of length m is half below y0 = 0.
    const std::size_t m = 200;
    const boost::math::normal_distribution<double> n01;
    std::vector<IoSample> s;
    for (int rep = 0; rep < 20; ++rep) {
        for (std::size_t i = 0; i < m; ++i) {
            s.push_back({0.0, 1.3 * boost::math::quantile(n01, (i + 0.5) / m)});
        }
    }
    const auto r = estimate_sigma_interval(s, m, UncertaintyInterval::point(0.0), 0.0);
    EXPECT_EQ(r.iterations, 0);
    EXPECT_DOUBLE_EQ(r.sigma.lo(), r.sigma.hi());
    EXPECT_LE(r.residual_norm, 1e-3);
}

TEST(SigmaSolve, ConstantResidualIsDegenerate) {
    std::vector<IoSample> s;
    for (int i = 0; i < 100; ++i) s.push_back({i % 2 ? 1.0 : -1.0, (i % 2 ? 1.0 : -1.0) + 0.25});
    EXPECT_THROW(estimate_all(s, 10, Constellation(1.0, -1.0)), DegenerateInputError);
}

TEST(SigmaSolve, DegenerateGaussianRecoversSigma) {
    const NoiseModel box{UncertaintyInterval::point(0.0), SigmaBox(1.0, 1.0)};
    const Constellation c(1.0, -1.0);
    const auto s = transmit(generate_noise(policy::Fixed{0.0, 1.0}, box, 100000, RngSeed{12}), c, 12);
    const auto r = estimate_all(s, 1000, c);
    EXPECT_NEAR(r.sigma_hat.lo(), 1.0, 0.05);
    EXPECT_NEAR(r.sigma_hat.hi(), 1.0, 0.05);
    const double classical = 0.5 * std::erfc(1.0 / std::sqrt(2.0));
    EXPECT_NEAR(r.error_envelope_hat.pe_upper, classical, 0.05 * classical);
    EXPECT_NEAR(r.error_envelope_hat.pe_lower, classical, 0.05 * classical);
}

TEST(SigmaSolve, ExtremeSwitchingWithinFifteenPercent) {
    const NoiseModel box{UncertaintyInterval(-0.1, 0.2), SigmaBox(0.8, 1.6)};
    const Constellation c(1.0, -1.0);
    const auto s = transmit(generate_noise(policy::TwoPointSwitch{0.5}, box, 100000, RngSeed{14}), c, 14);
    const auto mean = estimate_mean_interval(s, 1000);
    const double y0 = 0.5 * (c.x_a() + c.x_b() + mean.lo() + mean.hi());
    try {
        const auto r = estimate_sigma_interval(s, 1000, mean, y0);
        EXPECT_NEAR(r.sigma.lo(), 0.8, 0.15 * 0.8);
        EXPECT_NEAR(r.sigma.hi(), 1.6, 0.15 * 1.6);
    } catch (const EstimationError& e) {
        ADD_FAILURE() << e.what();
    }
}

TEST(EstimateAll, RejectsForeignSymbols) {
    std::vector<IoSample> s{{1.0, 0.3}, {-1.0, 0.1}, {0.5, 0.2}};
    EXPECT_THROW(estimate_all(s, 2, Constellation(1.0, -1.0)), std::invalid_argument);
}

TEST(EstimateAll, MeanBracketsNarrowInterval) {
    const NoiseModel box{UncertaintyInterval(-0.003, 0.067), SigmaBox(0.01, 0.02)};
    const Constellation c(1.0, -1.0);
    const auto s = transmit(generate_noise(policy::BlockSwitch{1000}, box, 100000, RngSeed{16}), c, 16);
    const auto m = estimate_mean_interval(s, 1000);
    EXPECT_NEAR(m.lo(), -0.003, 0.005);
    EXPECT_NEAR(m.hi(), 0.067, 0.005);
}

TEST(PhiMaxMean, Examples) {
    std::vector<double> constant(500, -0.7);
    for (std::size_t i = 0; i < constant.size(); i += 2) constant[i] = 0.7;
    const auto c = phi_max_mean_variance(constant, 50);
    EXPECT_NEAR(c.lo(), 0.7, 1e-15);
    EXPECT_NEAR(c.hi(), 0.7, 1e-15);

    std::vector<double> blocks;
    for (int i = 0; i < 100; ++i) blocks.push_back(i % 2 ? 1.0 : -1.0);
    for (int i = 0; i < 100; ++i) blocks.push_back(i % 2 ? 2.0 : -2.0);
    const auto b = phi_max_mean_variance(blocks, 100);
    EXPECT_NEAR(b.lo(), 1.0, 1e-15);
    EXPECT_NEAR(b.hi(), 2.0, 1e-15);

    EXPECT_THROW(phi_max_mean_variance(blocks, 201), std::invalid_argument);
    EXPECT_THROW(phi_max_mean_variance(std::vector<double>(10, 0.0), 5), DegenerateInputError);
}

TEST(PhiMaxMean, GaussianSwitchingWithinTenPercent) {
    const NoiseModel box{UncertaintyInterval::point(0.0), SigmaBox(1.0, 2.0)};
    const auto z = generate_noise(policy::BlockSwitch{1000}, box, 100000, RngSeed{18});
    const auto r = phi_max_mean_variance(z, 1000);
    EXPECT_NEAR(r.lo(), 1.0, 0.1);
    EXPECT_NEAR(r.hi(), 2.0, 0.2);
}

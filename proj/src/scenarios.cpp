#include "agdn/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace agdn {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

void check_inside(const NoiseModel& noise, double mu, double sigma, const char* what) {
    if (!noise.mean.contains(mu) || !(noise.sigma.lo() <= sigma && sigma <= noise.sigma.hi())) {
        throw PolicyError(std::string(what) + ": parameters (" + std::to_string(mu) + ", " +
                          std::to_string(sigma) + ") lie outside the uncertainty box");
    }
}

double lerp(double a, double b, double u) { return std::clamp(a + (b - a) * u, a, b); }

}  // namespace

ScenarioSampler::ScenarioSampler(ScenarioPolicy policy, NoiseModel noise, RngSeed seed, bool imaginary_part)
    : policy_(std::move(policy)),
      noise_(noise),
      rng_(seed.value),
      noise_stream_(imaginary_part ? Stream::NoiseImag : Stream::Noise),
      policy_stream_(imaginary_part ? Stream::PolicyImag : Stream::Policy),
      block_stream_(imaginary_part ? Stream::PolicyBlockImag : Stream::PolicyBlock) {
    std::visit(overloaded{
                   [&](const policy::Fixed& f) { check_inside(noise_, f.mu, f.sigma, "fixed policy"); },
                   [](const policy::IidUniformBox&) {},
                   [](const policy::TwoPointSwitch& t) {
                       if (!(t.p >= 0.0 && t.p <= 1.0)) throw PolicyError("two-point switch: p must lie in [0, 1]");
                   },
                   [](const policy::BlockSwitch& b) {
                       if (b.block_len == 0) throw PolicyError("block switch: block_len must be positive");
                   },
                   [&](const policy::Custom& c) {
                       for (const auto& e : c.schedule) check_inside(noise_, e.mu, e.sigma, "custom schedule");
                   },
               },
               policy_);
}

std::uint64_t ScenarioSampler::required_length() const noexcept {
    if (const auto* c = std::get_if<policy::Custom>(&policy_)) return c->schedule.size();
    return 0;
}

NoiseParams ScenarioSampler::params(std::uint64_t i) const {
    const auto& m = noise_.mean;
    const auto& s = noise_.sigma;
    return std::visit(overloaded{
                          [](const policy::Fixed& f) { return NoiseParams{f.mu, f.sigma}; },
                          [&](const policy::IidUniformBox&) {
                              const auto [u1, u2] = rng_.uniforms(policy_stream_, i);
                              return NoiseParams{lerp(m.lo(), m.hi(), u1), lerp(s.lo(), s.hi(), u2)};
                          },
                          [&](const policy::TwoPointSwitch& t) {
                              const auto [u1, u2] = rng_.uniforms(policy_stream_, i);
                              return NoiseParams{u1 < t.p ? m.hi() : m.lo(), u2 < t.p ? s.hi() : s.lo()};
                          },
                          [&](const policy::BlockSwitch& b) {
                              const auto bits = rng_.raw(block_stream_, i / b.block_len);
                              return NoiseParams{(bits[0] & 1u) ? m.hi() : m.lo(), (bits[1] & 1u) ? s.hi() : s.lo()};
                          },
                          [&](const policy::Custom& c) {
                              if (i >= c.schedule.size()) throw PolicyError("custom schedule exhausted");
                              const auto& e = c.schedule[i];
                              return NoiseParams{e.mu, e.sigma};
                          },
                      },
                      policy_);
}

double ScenarioSampler::standard_normal(std::uint64_t i) const { return rng_.normal(noise_stream_, i); }

double ScenarioSampler::sample(std::uint64_t i) const {
    const auto p = params(i);
    return p.mu + p.sigma * standard_normal(i);
}

std::vector<double> generate_noise(const ScenarioPolicy& policy, const NoiseModel& noise, std::uint64_t n,
                                   RngSeed seed, unsigned threads) {
    const ScenarioSampler sampler(policy, noise, seed);
    if (const auto len = sampler.required_length(); len != 0 && len != n) {
        throw PolicyError("custom schedule has " + std::to_string(len) + " entries but " + std::to_string(n) +
                          " samples were requested");
    }
    std::vector<double> out(n);
    parallel_ranges(n, threads, [&](std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t i = begin; i < end; ++i) {
            const auto p = sampler.params(i);
            check_inside(noise, p.mu, p.sigma, "realized scenario");
            out[i] = p.mu + p.sigma * sampler.standard_normal(i);
        }
    });
    return out;
}

std::complex<double> rayleigh_gain(const CounterRng& rng, std::uint64_t i) {
    const auto [a, b] = rng.normals(Stream::Gain, i);
    return {a / std::numbers::sqrt2, b / std::numbers::sqrt2};
}

std::vector<std::complex<double>> generate_rayleigh_gains(std::uint64_t n, RngSeed seed) {
    if (n == 0) throw std::invalid_argument("generate_rayleigh_gains: n must be positive");
    const CounterRng rng(seed.value);
    std::vector<std::complex<double>> out(n);
    for (std::uint64_t i = 0; i < n; ++i) out[i] = rayleigh_gain(rng, i);
    return out;
}

}  // namespace agdn

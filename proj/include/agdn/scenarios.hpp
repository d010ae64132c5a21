#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

#include "agdn/channel.hpp"
#include "agdn/rng.hpp"

namespace agdn {

/// Scenario policies: classical per-sample laws N(mu_i, sigma_i^2) whose
/// parameters stay inside the uncertainty box. They are members of the
/// uncertainty family, so their statistics must fall inside every envelope;
/// they need not attain the envelopes.
namespace policy {

struct Fixed {
    double mu;
    double sigma;
};

/// mu_i ~ U[mu_lo, mu_hi], sigma_i ~ U[sigma_lo, sigma_hi], independently per sample.
struct IidUniformBox {};

/// Per sample, mu_i = mu_hi with probability p (else mu_lo), and independently
/// sigma_i = sigma_hi with probability p (else sigma_lo).
struct TwoPointSwitch {
    double p = 0.5;
};

/// Samples grouped in blocks of `block_len`; each block draws a uniformly
/// random corner of the box.
struct BlockSwitch {
    std::uint64_t block_len = 1000;
};

struct ScheduleEntry {
    double mu;
    double sigma;
};

/// Explicit per-sample parameters; the schedule length must equal n.
struct Custom {
    std::vector<ScheduleEntry> schedule;
};

}  // namespace policy

using ScenarioPolicy =
    std::variant<policy::Fixed, policy::IidUniformBox, policy::TwoPointSwitch, policy::BlockSwitch, policy::Custom>;

class PolicyError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct RngSeed {
    std::uint64_t value = 0;
};

struct NoiseParams {
    double mu;
    double sigma;
};

/// Random-access view of one scenario realization. `params(i)` and
/// `sample(i)` depend only on (policy, noise, seed, index), so any index range
/// can be generated on any thread.
class ScenarioSampler {
public:
    /// Validates the policy against the box; throws PolicyError on violation.
    ScenarioSampler(ScenarioPolicy policy, NoiseModel noise, RngSeed seed, bool imaginary_part = false);

    [[nodiscard]] NoiseParams params(std::uint64_t i) const;
    [[nodiscard]] double sample(std::uint64_t i) const;

    /// Standard normal that drives sample(i); shared across samplers with the
    /// same seed, which gives common random numbers between configurations.
    [[nodiscard]] double standard_normal(std::uint64_t i) const;

    /// Schedule length for Custom, 0 otherwise.
    [[nodiscard]] std::uint64_t required_length() const noexcept;

    [[nodiscard]] const NoiseModel& noise() const noexcept { return noise_; }
    [[nodiscard]] const ScenarioPolicy& policy() const noexcept { return policy_; }

private:
    ScenarioPolicy policy_;
    NoiseModel noise_;
    CounterRng rng_;
    Stream noise_stream_;
    Stream policy_stream_;
    Stream block_stream_;
};

/// n noise samples; deterministic for fixed inputs, independent of `threads`.
std::vector<double> generate_noise(const ScenarioPolicy& policy, const NoiseModel& noise, std::uint64_t n,
                                   RngSeed seed, unsigned threads = 1);

/// H ~ CN(0, 1): real and imaginary parts N(0, 1/2).
std::complex<double> rayleigh_gain(const CounterRng& rng, std::uint64_t i);

std::vector<std::complex<double>> generate_rayleigh_gains(std::uint64_t n, RngSeed seed);

/// Run body(begin, end) over [0, n) split into contiguous chunks. Chunk
/// boundaries never influence results as long as body is index-pure.
template <class Body>
void parallel_ranges(std::uint64_t n, unsigned threads, Body&& body);

}  // namespace agdn

#include "agdn/detail/parallel.hpp"

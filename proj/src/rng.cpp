#include "agdn/rng.hpp"

#include <cmath>
#include <numbers>

namespace agdn {

namespace {

constexpr std::uint32_t kW32A = 0x9E3779B9;
constexpr std::uint32_t kW32B = 0xBB67AE85;
constexpr std::uint32_t kM4x32A = 0xD2511F53;
constexpr std::uint32_t kM4x32B = 0xCD9E8D57;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& lo, std::uint32_t& hi) {
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    lo = static_cast<std::uint32_t>(p);
    hi = static_cast<std::uint32_t>(p >> 32);
}

// (0, 1) exclusive on both ends.
inline double to_unit(std::uint32_t hi, std::uint32_t lo) {
    const std::uint64_t bits = ((static_cast<std::uint64_t>(hi) << 32) | lo) >> 11;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

}  // namespace

Philox4x32::Block Philox4x32::operator()(Block ctr) const noexcept {
    std::array<std::uint32_t, 2> key = key_;
    for (int round = 0; round < 10; ++round) {
        std::uint32_t lo0, hi0, lo1, hi1;
        mulhilo(kM4x32A, ctr[0], lo0, hi0);
        mulhilo(kM4x32B, ctr[2], lo1, hi1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += kW32A;
        key[1] += kW32B;
    }
    return ctr;
}

Philox4x32::Block CounterRng::raw(Stream s, std::uint64_t index, std::uint32_t lane) const noexcept {
    return philox_({static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                    static_cast<std::uint32_t>(s), lane});
}

std::array<double, 2> CounterRng::uniforms(Stream s, std::uint64_t index, std::uint32_t lane) const noexcept {
    const auto b = raw(s, index, lane);
    return {to_unit(b[0], b[1]), to_unit(b[2], b[3])};
}

std::array<double, 2> CounterRng::normals(Stream s, std::uint64_t index, std::uint32_t lane) const noexcept {
    const auto [u1, u2] = uniforms(s, index, lane);
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(theta), r * std::sin(theta)};
}

}  // namespace agdn

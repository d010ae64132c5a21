#pragma once

#include <array>
#include <cstdint>

namespace agdn {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11). Every draw
/// is a pure function of (key, counter), so any sample index can be
/// generated independently of all others.
class Philox4x32 {
public:
    using Block = std::array<std::uint32_t, 4>;

    explicit Philox4x32(std::uint64_t seed) noexcept
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)} {}

    [[nodiscard]] Block operator()(Block counter) const noexcept;

private:
    std::array<std::uint32_t, 2> key_;
};

/// Independent sub-streams of one experiment seed.
enum class Stream : std::uint32_t {
    Symbol = 1,
    Noise = 2,
    NoiseImag = 3,
    Policy = 4,
    PolicyBlock = 5,
    PolicyImag = 6,
    PolicyBlockImag = 7,
    Gain = 8,
};

/// Draws keyed by (seed, stream, index). Stateless and thread-safe.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) noexcept : philox_(seed) {}

    [[nodiscard]] Philox4x32::Block raw(Stream s, std::uint64_t index, std::uint32_t lane = 0) const noexcept;

    /// Two uniforms in (0, 1), 53-bit resolution.
    [[nodiscard]] std::array<double, 2> uniforms(Stream s, std::uint64_t index, std::uint32_t lane = 0) const noexcept;

    /// Two independent standard normals (Box-Muller).
    [[nodiscard]] std::array<double, 2> normals(Stream s, std::uint64_t index, std::uint32_t lane = 0) const noexcept;

    [[nodiscard]] double normal(Stream s, std::uint64_t index) const noexcept { return normals(s, index)[0]; }
    [[nodiscard]] double uniform(Stream s, std::uint64_t index) const noexcept { return uniforms(s, index)[0]; }
    [[nodiscard]] bool bit(Stream s, std::uint64_t index) const noexcept { return (raw(s, index)[0] & 1u) != 0; }

private:
    Philox4x32 philox_;
};

}  // namespace agdn

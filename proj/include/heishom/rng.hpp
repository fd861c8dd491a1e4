#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace heishom {

// Philox-4x32-10 counter-based generator. Every draw is a pure function of
// (seed, stream, step), which is what makes estimates bit-identical no matter
// how chains or replicas are scheduled across workers.

namespace detail {

inline std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                               std::array<std::uint32_t, 2> key) {
    constexpr std::uint32_t kMul0 = 0xD2511F53u;
    constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
    constexpr std::uint32_t kW0 = 0x9E3779B9u;
    constexpr std::uint32_t kW1 = 0xBB67AE85u;
    for (int round = 0; round < 10; ++round) {
        const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * ctr[0];
        const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * ctr[2];
        const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
        const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
        const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
        const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += kW0;
        key[1] += kW1;
    }
    return ctr;
}

inline double u32_to_unit(std::uint32_t x) {
    // (0,1), never exactly 0 or 1
    return (static_cast<double>(x) + 0.5) * (1.0 / 4294967296.0);
}

} // namespace detail

/// Splitmix64 mix of (seed, tag); gives unrelated streams to the different
/// experiments that share one master seed.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (tag + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Uniform (0,1) quad keyed by (seed, stream, step).
inline std::array<double, 4> uniform_quad(std::uint64_t seed, std::uint64_t stream,
                                          std::uint64_t step) {
    const auto r = detail::philox4x32(
        {static_cast<std::uint32_t>(step), static_cast<std::uint32_t>(step >> 32),
         static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)},
        {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)});
    return {detail::u32_to_unit(r[0]), detail::u32_to_unit(r[1]), detail::u32_to_unit(r[2]),
            detail::u32_to_unit(r[3])};
}

/// Four standard normals keyed by (seed, stream, step) via Box-Muller.
inline std::array<double, 4> normal_quad(std::uint64_t seed, std::uint64_t stream,
                                         std::uint64_t step) {
    const auto u = uniform_quad(seed, stream, step);
    constexpr double kTwoPi = 6.283185307179586476925286766559;
    const double r0 = std::sqrt(-2.0 * std::log(u[0]));
    const double r1 = std::sqrt(-2.0 * std::log(u[2]));
    return {r0 * std::cos(kTwoPi * u[1]), r0 * std::sin(kTwoPi * u[1]),
            r1 * std::cos(kTwoPi * u[3]), r1 * std::sin(kTwoPi * u[3])};
}

} // namespace heishom

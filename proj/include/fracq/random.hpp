#pragma once

// Portable sampling helpers. std::uniform_*_distribution and
// std::normal_distribution are implementation-defined, so every draw the
// library makes goes through these functions to keep traces identical
// across standard libraries.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>

namespace fracq {

using Rng = std::mt19937_64;

// Uniform double in [0, 1) built from the top 53 bits.
template <typename Generator>
double uniform_unit(Generator& gen) {
    static_assert(Generator::max() - Generator::min() == UINT64_MAX,
                  "expects a full-range 64-bit engine");
    const std::uint64_t bits = static_cast<std::uint64_t>(gen() - Generator::min());
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Uniform index in [0, n) by rejection (no modulo bias).
template <typename Generator>
std::size_t uniform_index(Generator& gen, std::size_t n) {
    if (n <= 1) return 0;
    const std::uint64_t range = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % range);
    std::uint64_t draw;
    do {
        draw = static_cast<std::uint64_t>(gen() - Generator::min());
    } while (draw >= limit);
    return static_cast<std::size_t>(draw % range);
}

// Standard normal by Box-Muller; consumes exactly two engine outputs.
template <typename Generator>
double standard_normal(Generator& gen) {
    double u1 = uniform_unit(gen);
    const double u2 = uniform_unit(gen);
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

// splitmix64 finalizer; used to derive independent child seeds.
constexpr std::uint64_t mix_seed(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t stream) noexcept {
    return mix_seed(mix_seed(parent) ^ mix_seed(stream + 0x632be59bd9b4e019ULL));
}

}  // namespace fracq

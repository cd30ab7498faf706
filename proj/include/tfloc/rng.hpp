#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>

namespace tfloc {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Counter-mode SplitMix64 ("CounterMix64").
///
/// Draw i of substream (seed, stream) is mix64(key + i * golden) with
/// key = mix64(mix64(seed) ^ mix64(stream + golden)). Substreams are addressed directly,
/// so a noise realization never depends on which thread produced its neighbours.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept
        : key_(mix64(mix64(seed) ^ mix64(stream + kGolden))) {}

    std::uint64_t next() noexcept { return mix64(key_ + (++counter_) * kGolden); }

    /// Uniform on (0, 1], 53-bit resolution.
    double uniform() noexcept { return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53; }

    /// Two independent standard normals (Box-Muller).
    std::pair<double, double> normal_pair() noexcept {
        const double r = std::sqrt(-2.0 * std::log(uniform()));
        const double theta = 2.0 * std::numbers::pi * uniform();
        return {r * std::cos(theta), r * std::sin(theta)};
    }

private:
    static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace tfloc

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>

#include <Eigen/Core>

namespace olive {

// Counter-based PRNG on the SplitMix64 finalizer. Every draw is a pure
// function of (key, counter), and child streams are derived by rekeying,
// so streams keyed by (layer index, instance index) can grow or shrink
// without perturbing one another. Identical on every platform: integer
// mixing only, no library distributions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : key_(mix(seed ^ kSeedSalt)) {}

    // Independent child stream for the given stream id.
    [[nodiscard]] Rng child(std::uint64_t stream) const {
        return Rng(mix(key_ + kChildGamma * (stream + 1)), RawKey{});
    }

    std::uint64_t next_u64() { return mix(key_ + kDrawGamma * ++counter_); }

    // Uniform in [0,1), 53-bit mantissa.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    // Uniform integer in [0, n). Lemire multiply-shift; n must be > 0.
    std::uint64_t next_below(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    // Uniform direction on the unit sphere.
    Eigen::Vector3d unit_vector() {
        const double z = uniform(-1.0, 1.0);
        const double phi = uniform(0.0, 2.0 * kPi);
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        return {r * std::cos(phi), r * std::sin(phi), z};
    }

    // Stateless lattice hash shared with the procedural noise: uniform in
    // [0,1) for any integer coordinate pair.
    static double hash01(std::uint64_t seed, std::int64_t ix, std::int64_t iy) {
        std::uint64_t h = mix(seed ^ kSeedSalt);
        h = mix(h + kDrawGamma * static_cast<std::uint64_t>(ix));
        h = mix(h + kChildGamma * static_cast<std::uint64_t>(iy));
        return static_cast<double>(h >> 11) * 0x1.0p-53;
    }

private:
    struct RawKey {};
    Rng(std::uint64_t key, RawKey) : key_(key) {}

    static constexpr std::uint64_t kSeedSalt = 0x8f1bbcdcbfa53e0bULL;
    static constexpr std::uint64_t kDrawGamma = 0x9e3779b97f4a7c15ULL;
    static constexpr std::uint64_t kChildGamma = 0xd1b54a32d192ed03ULL;
    static constexpr double kPi = 3.14159265358979323846;

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

} // namespace olive

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string_view>

#include <boost/math/special_functions/erf.hpp>

namespace skewbm {

/// Deterministic random stream keyed by (seed, stream id).
///
/// The engine is std::mt19937_64 seeded through std::seed_seq with the four
/// 32-bit halves of the key. Both are fully specified by the standard, so the
/// bit sequence is identical across platforms. All real-valued variates are
/// derived from raw 64-bit draws here rather than through the
/// implementation-defined std:: distributions.
class RngStream {
  public:
    using result_type = std::uint64_t;

    RngStream(std::uint64_t seed, std::uint64_t stream_id) : seed_(seed), stream_(stream_id) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(stream_id),
                          static_cast<std::uint32_t>(stream_id >> 32)};
        engine_.seed(seq);
    }

    static constexpr result_type min() { return std::mt19937_64::min(); }
    static constexpr result_type max() { return std::mt19937_64::max(); }
    result_type operator()() { return engine_(); }

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream_id() const noexcept { return stream_; }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform on (0, 1].
    double uniform_pos() { return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53; }

    /// Uniform on (0, 1), never hitting either endpoint.
    double uniform_open() { return (static_cast<double>(engine_() >> 12) + 0.5) * 0x1.0p-52; }

    /// Standard normal by inversion.
    double normal() { return -std::sqrt(2.0) * boost::math::erfc_inv(2.0 * uniform_open()); }

    bool bernoulli(double p) { return uniform() < p; }

  private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::mt19937_64 engine_;
};

/// 64-bit FNV-1a, used to derive stable stream ids from labels.
constexpr std::uint64_t fnv1a(std::string_view text, std::uint64_t h = 0xcbf29ce484222325ULL) {
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace skewbm

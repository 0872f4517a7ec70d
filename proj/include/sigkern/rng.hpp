#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>

namespace sigkern {

namespace detail {

inline constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

// SplitMix64 finalizer.
inline constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

} // namespace detail

/// Counter-based random stream keyed by (seed, stream_id).
///
/// Identical keys yield byte-identical draw sequences regardless of which
/// thread runs them, so every randomized computation derives one stream per
/// purpose (signature level, projection level, benchmark cell) instead of
/// sharing a global generator.
class RngStream {
public:
    using result_type = std::uint64_t;

    RngStream(std::uint64_t seed, std::uint64_t stream_id) noexcept
        : state_(detail::mix64(detail::mix64(seed + detail::kGamma) ^
                               (stream_id * 0xD6E8FEB86659FD93ULL + 0x8A5CD789635D2DFFULL))) {}

    std::uint64_t operator()() noexcept {
        state_ += detail::kGamma;
        return detail::mix64(state_);
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return ~result_type(0); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() noexcept { return double((*this)() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) noexcept {
        // Multiply-shift; bias is < 2^-64 per draw, irrelevant at our scales.
        return std::uint64_t((static_cast<unsigned __int128>((*this)()) * n) >> 64);
    }

    /// Standard normal draw via Box-Muller; pairs are cached.
    double gaussian() noexcept {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        // (k + 0.5) / 2^53 keeps u1 strictly inside (0, 1).
        const double u1 = (double((*this)() >> 11) + 0.5) * 0x1.0p-53;
        const double u2 = double((*this)() >> 11) * 0x1.0p-53;
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.28318530717958647692528676655900577 * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

    /// Hash a tuple of indices into a stream id, for per-purpose substreams.
    static std::uint64_t substream(std::initializer_list<std::uint64_t> parts) noexcept {
        std::uint64_t h = 0x6A09E667F3BCC909ULL;
        for (std::uint64_t p : parts) {
            h = detail::mix64(h ^ (p + detail::kGamma));
        }
        return h;
    }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace sigkern

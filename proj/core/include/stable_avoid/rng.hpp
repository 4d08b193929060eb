#pragma once

#include <cstdint>

namespace stable_avoid {

/// (seed, stream) fully determines one worker's variate sequence.
/// Estimators consume streams [spec.stream, spec.stream + n_paths).
struct RngSpec {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;

    RngSpec with_stream_offset(std::uint64_t k) const { return {seed, stream + k}; }
};

/// Philox4x32-10 counter-based generator (Salmon et al., SC 2011).
///
/// The 64-bit key is the seed, the high counter half is the stream id and
/// the low half counts blocks, so any (seed, stream) pair addresses an
/// independent sequence without shared state.
class Philox {
  public:
    explicit Philox(RngSpec spec)
        : key0_(static_cast<std::uint32_t>(spec.seed)),
          key1_(static_cast<std::uint32_t>(spec.seed >> 32)),
          stream_(spec.stream) {}

    std::uint64_t next_u64() {
        if (have_ == 0) refill();
        return out_[--have_];
    }

    /// Uniform on the open interval (0,1): ((x >> 11) + 1/2) * 2^-53.
    double uniform01() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Uniform on (-pi/2, pi/2), never hitting the endpoints.
    double uniform_angle();

    /// Standard exponential via inversion.
    double exponential();

    /// Raw 4x32 block for the given counter/key; exposed for known-answer tests.
    static void block(const std::uint32_t counter[4], const std::uint32_t key[2],
                      std::uint32_t out[4]);

  private:
    void refill();

    std::uint32_t key0_, key1_;
    std::uint64_t stream_ = 0;
    std::uint64_t block_ = 0;
    std::uint64_t out_[2] = {0, 0};
    int have_ = 0;
};

}  // namespace stable_avoid

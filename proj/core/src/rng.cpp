#include "stable_avoid/rng.hpp"

#include <cmath>

namespace stable_avoid {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& lo, std::uint32_t& hi) {
    const std::uint64_t prod = static_cast<std::uint64_t>(a) * b;
    lo = static_cast<std::uint32_t>(prod);
    hi = static_cast<std::uint32_t>(prod >> 32);
}

}  // namespace

void Philox::block(const std::uint32_t counter[4], const std::uint32_t key[2],
                   std::uint32_t out[4]) {
    std::uint32_t c0 = counter[0], c1 = counter[1], c2 = counter[2], c3 = counter[3];
    std::uint32_t k0 = key[0], k1 = key[1];
    for (int round = 0; round < 10; ++round) {
        std::uint32_t lo0, hi0, lo1, hi1;
        mulhilo(kPhiloxM0, c0, lo0, hi0);
        mulhilo(kPhiloxM1, c2, lo1, hi1);
        const std::uint32_t n0 = hi1 ^ c1 ^ k0;
        const std::uint32_t n1 = lo1;
        const std::uint32_t n2 = hi0 ^ c3 ^ k1;
        const std::uint32_t n3 = lo0;
        c0 = n0;
        c1 = n1;
        c2 = n2;
        c3 = n3;
        k0 += kPhiloxW0;
        k1 += kPhiloxW1;
    }
    out[0] = c0;
    out[1] = c1;
    out[2] = c2;
    out[3] = c3;
}

void Philox::refill() {
    const std::uint32_t counter[4] = {
        static_cast<std::uint32_t>(block_),
        static_cast<std::uint32_t>(block_ >> 32),
        static_cast<std::uint32_t>(stream_),
        static_cast<std::uint32_t>(stream_ >> 32),
    };
    const std::uint32_t key[2] = {key0_, key1_};
    std::uint32_t o[4];
    block(counter, key, o);
    out_[0] = (static_cast<std::uint64_t>(o[1]) << 32) | o[0];
    out_[1] = (static_cast<std::uint64_t>(o[3]) << 32) | o[2];
    have_ = 2;
    ++block_;
}

double Philox::uniform_angle() { return M_PI * (uniform01() - 0.5); }

double Philox::exponential() { return -std::log(uniform01()); }

}  // namespace stable_avoid

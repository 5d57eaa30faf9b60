#include "qsense/rng.hpp"

#include <cmath>
#include <numbers>

namespace qsense {

namespace {

constexpr uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void mul_hi_lo(uint32_t a, uint32_t b, uint32_t& hi, uint32_t& lo) {
    const uint64_t p = static_cast<uint64_t>(a) * b;
    hi = static_cast<uint32_t>(p >> 32);
    lo = static_cast<uint32_t>(p);
}

} // namespace

std::array<uint32_t, 4> philox4x32(std::array<uint32_t, 4> counter,
                                   std::array<uint32_t, 2> key,
                                   int rounds) {
    for (int r = 0; r < rounds; ++r) {
        uint32_t hi0, lo0, hi1, lo1;
        mul_hi_lo(kPhiloxM0, counter[0], hi0, lo0);
        mul_hi_lo(kPhiloxM1, counter[2], hi1, lo1);
        counter = {hi1 ^ counter[1] ^ key[0], lo1,
                   hi0 ^ counter[3] ^ key[1], lo0};
        key[0] += kPhiloxW0;
        key[1] += kPhiloxW1;
    }
    return counter;
}

RandomStream::RandomStream(uint64_t seed, uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {}

uint64_t RandomStream::next_u64() {
    if (buffer_pos_ == 2) {
        const std::array<uint32_t, 4> ctr = {
            static_cast<uint32_t>(block_),
            static_cast<uint32_t>(block_ >> 32),
            static_cast<uint32_t>(stream_id_),
            static_cast<uint32_t>(stream_id_ >> 32),
        };
        const std::array<uint32_t, 2> key = {
            static_cast<uint32_t>(seed_),
            static_cast<uint32_t>(seed_ >> 32),
        };
        const auto out = philox4x32(ctr, key);
        buffer_[0] = out[0] | (static_cast<uint64_t>(out[1]) << 32);
        buffer_[1] = out[2] | (static_cast<uint64_t>(out[3]) << 32);
        buffer_pos_ = 0;
        ++block_;
    }
    return buffer_[buffer_pos_++];
}

double RandomStream::next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomStream::next_normal() {
    // 1 - u keeps the log argument strictly positive.
    const double u1 = 1.0 - next_double();
    const double u2 = next_double();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
}

} // namespace qsense

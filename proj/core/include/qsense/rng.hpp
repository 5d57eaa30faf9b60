#pragma once

#include <array>
#include <cstdint>

namespace qsense {

// Philox-4x32 block with the given number of rounds (Salmon et al., SC'11).
// Counter-based: the output is a pure function of (counter, key), so any
// sample in any stream can be regenerated without replaying the sequence.
std::array<uint32_t, 4> philox4x32(std::array<uint32_t, 4> counter,
                                   std::array<uint32_t, 2> key,
                                   int rounds = 10);

// One independent random stream, fully determined by (seed, stream_id).
// Streams with distinct ids never overlap and may be consumed concurrently.
class RandomStream {
public:
    RandomStream(uint64_t seed, uint64_t stream_id);

    uint64_t seed() const { return seed_; }
    uint64_t stream_id() const { return stream_id_; }

    uint64_t next_u64();

    // Uniform in [0, 1), 53 random bits.
    double next_double();

    // Standard normal via Box-Muller (two uniforms per draw).
    double next_normal();

private:
    uint64_t seed_;
    uint64_t stream_id_;
    uint64_t block_ = 0;
    std::array<uint64_t, 2> buffer_{};
    int buffer_pos_ = 2;
};

// Conventional stream-id layout: a 32-bit block tag for each sub-experiment
// of a composite run, plus an index within the block.
constexpr uint64_t stream_id_for(uint64_t block, uint64_t index) {
    return (block << 32) | (index & 0xFFFFFFFFu);
}

} // namespace qsense

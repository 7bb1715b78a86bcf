#pragma once

#include <cstdint>

// Counter-based deterministic random streams. A stream is identified by
// (seed, replicate, purpose); draws depend only on that triple and the draw
// index, so replicates can run in any order, on any thread, with identical
// output.
namespace weaksig {

class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t replicate, std::uint64_t purpose);

    std::uint64_t next_u64();

    // Uniform on [0,1) with 53 random bits.
    double uniform();

    // Standard normal via inverse-CDF of a uniform strictly inside (0,1).
    double normal();

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

// Purpose tags keep the streams used for different draws within one replicate
// independent of each other and of draw-count changes elsewhere.
namespace purpose {
inline constexpr std::uint64_t kDesign = 1;
inline constexpr std::uint64_t kNoise = 2;
inline constexpr std::uint64_t kBootstrap = 3;
inline constexpr std::uint64_t kOracle = 4;
inline constexpr std::uint64_t kConfig = 5;
}  // namespace purpose

}  // namespace weaksig

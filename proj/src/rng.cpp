#include "weaksig/rng.hpp"

#include "weaksig/normal.hpp"

namespace weaksig {

namespace {

// splitmix64 finalizer; a full-period bijection on 64-bit integers with good
// avalanche, which makes keyed counters usable as independent streams.
std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t replicate, std::uint64_t purpose) {
    std::uint64_t k = mix(seed);
    k = mix(k ^ mix(replicate + 0x632be59bd9b4e019ull));
    k = mix(k ^ mix(purpose + 0x9e6c63d0876a9a47ull));
    key_ = k;
}

std::uint64_t RngStream::next_u64() {
    return mix(key_ ^ mix(++counter_));
}

double RngStream::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::normal() {
    // Shift the 53-bit uniform off 0 so the quantile stays finite.
    double u = (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    return norm_quantile(u);
}

}  // namespace weaksig

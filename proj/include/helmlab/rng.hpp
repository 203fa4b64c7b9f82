#pragma once
#include <cstdint>

namespace helmlab {

// Counter-based generator: value k of stream s is splitmix64(seed ^ mix(s) + k).
// Any sample can be regenerated from (seed, stream, counter) alone.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream = 0) : seed_(seed), stream_(stream) {}

    static std::uint64_t splitmix64(std::uint64_t x) {
        x += 0x9E3779B97F4A7C15ULL;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
        return x ^ (x >> 31);
    }
    std::uint64_t at(std::uint64_t k) const {
        return splitmix64(splitmix64(seed_ ^ splitmix64(stream_ + 0x632BE59BD9B4E019ULL)) + k);
    }
    std::uint64_t next() { return at(counter_++); }
    // Uniform in [0, 1) with 53 random bits.
    double uniform() { return double(next() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    double normal();
    CounterRng substream(std::uint64_t s) const { return CounterRng(seed_, splitmix64(stream_ * 31 + s + 1)); }

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t counter_ = 0;
};

}  // namespace helmlab

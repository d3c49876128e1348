#pragma once

#include <cstdint>
#include <random>

namespace levysu2 {

using RandomStream = std::mt19937_64;

// splitmix64 finalizer; used to derive independent per-path stream seeds from
// (master_seed, path_index) so results do not depend on thread scheduling.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline RandomStream stream_for_path(std::uint64_t master_seed, std::uint64_t path_index) {
    std::uint64_t s = mix64(master_seed ^ mix64(path_index + 1));
    return RandomStream(s);
}

inline double draw_normal(RandomStream& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    return n(rng);
}

inline double draw_uniform(RandomStream& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    return u(rng);
}

inline double draw_exponential(RandomStream& rng, double rate) {
    std::exponential_distribution<double> e(rate);
    return e(rng);
}

} // namespace levysu2

#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace cle {

using Engine = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Counter-mode stream key: splitmix64 folded over (master, c1, c2, ...).
inline std::uint64_t stream_seed(std::uint64_t master, std::initializer_list<std::uint64_t> counters) {
    std::uint64_t h = splitmix64(master);
    for (std::uint64_t c : counters) h = splitmix64(h ^ splitmix64(c + 0x632BE59BD9B4E019ULL));
    return h;
}

inline Engine make_engine(std::uint64_t master, std::initializer_list<std::uint64_t> counters) {
    return Engine(stream_seed(master, counters));
}

/// Uniform on [0,1) with 53 random bits.
inline double uniform01(Engine& e) { return static_cast<double>(e() >> 11) * 0x1.0p-53; }

/// Uniform on (0,1].
inline double uniform_open0(Engine& e) { return 1.0 - uniform01(e); }

inline double exponential1(Engine& e) { return -std::log(uniform_open0(e)); }

}  // namespace cle

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace treeprep {

// Counter-based random stream. Every draw is a pure function of the key
// words, so sampling is reproducible regardless of call order or thread
// layout. The mixer is the splitmix64 finalizer.
inline uint64_t mix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

inline uint64_t counter_word(uint64_t seed, uint64_t a, uint64_t b = 0, uint64_t c = 0,
                             uint64_t d = 0) {
    uint64_t x = mix64(seed);
    x = mix64(x ^ a);
    x = mix64(x ^ b);
    x = mix64(x ^ c);
    x = mix64(x ^ d);
    return x;
}

// Uniform double in [0,1) from a 64-bit word (53-bit mantissa path).
inline double u01(uint64_t w) {
    return static_cast<double>(w >> 11) * 0x1.0p-53;
}

// Standard complex gaussian via Box-Muller on two counter words.
inline std::complex<double> gaussian_pair(uint64_t w0, uint64_t w1) {
    double u = u01(w0);
    double v = u01(w1);
    if (u <= 0.0) u = 0x1.0p-53;
    double r = std::sqrt(-2.0 * std::log(u));
    return {r * std::cos(2.0 * M_PI * v), r * std::sin(2.0 * M_PI * v)};
}

}  // namespace treeprep

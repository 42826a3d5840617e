#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string_view>

// Deterministic randomness used everywhere in the library.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the C++
// standard. Distributions from <random> are NOT portable across standard
// library implementations, so the primitives below are hand-rolled on top of
// raw engine output and never change behavior between platforms:
//
//   uniform double  u in [0,1):  (engine() >> 11) * 2^-53
//   uniform double  u in (0,1]:  ((engine() >> 11) + 1) * 2^-53
//   bounded integer in [0,n):    128-bit multiply-shift of one engine draw
//   standard normal:             Box-Muller, z = sqrt(-2 ln u1) * cos(2 pi u2),
//                                u1 in (0,1], u2 in [0,1); exactly two engine
//                                draws per variate, no cached second value
//
// Independent substreams are derived from a master seed by absorbing the
// identity of the consumer (dataset name hash, method, rate, k, fold, purpose
// tag) into a splitmix64 sponge; see StreamId below. Distinct identities give
// distinct seeds up to 64-bit mixing collisions.

namespace ugrwo {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // Uniform in [0,1), 53-bit resolution.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // Uniform in (0,1]; safe as a log() argument.
    double uniform_open() {
        return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
    }

    // Uniform integer in [0, n). Multiply-shift; slight bias below 2^-53 is
    // irrelevant at the sample sizes this library handles.
    std::uint64_t bounded(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(engine_()) * n) >> 64);
    }

    // Standard normal via Box-Muller (cosine branch only).
    double normal() {
        const double u1 = uniform_open();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * std::numbers::pi * u2);
    }

private:
    std::mt19937_64 engine_;
};

// Identity of an RNG consumer. Builders absorb each component at a fixed
// position, so two different identities practically never share a seed.
class StreamId {
public:
    explicit StreamId(std::uint64_t master_seed)
        : state_(splitmix64(master_seed ^ 0x567c5a2b9d1f03ULL)) {}

    StreamId& absorb(std::uint64_t v) {
        state_ = splitmix64(state_ ^ v);
        return *this;
    }
    StreamId& absorb(std::string_view s) { return absorb(fnv1a64(s)); }

    std::uint64_t seed() const { return state_; }
    Rng rng() const { return Rng(state_); }

private:
    std::uint64_t state_;
};

}  // namespace ugrwo

#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace ofnet {

// splitmix64, used both as a mixer and as the stream generator so that
// every draw is identical across platforms and standard libraries.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t hash_combine(std::uint64_t a, std::uint64_t b) {
    std::uint64_t s = a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
    return splitmix64(s);
}

inline std::uint64_t hash_label(std::string_view label) {
    std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
    for (char c : label) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

// A named substream of a master seed. Streams with distinct labels or
// distinct extra indices are independent for simulation purposes.
class RngStream {
public:
    RngStream() : state_(0) {}
    explicit RngStream(std::uint64_t seed) : state_(seed) {}
    RngStream(std::uint64_t master_seed, std::string_view label)
        : state_(hash_combine(master_seed, hash_label(label))) {}
    RngStream(std::uint64_t master_seed, std::string_view label, std::uint64_t index)
        : state_(hash_combine(hash_combine(master_seed, hash_label(label)), index)) {}

    std::uint64_t next_u64() { return splitmix64(state_); }

    // Uniform in [0, 1) with 53 bits of resolution.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in [0, n) without modulo bias.
    std::uint64_t next_below(std::uint64_t n) {
        if (n <= 1) return 0;
        std::uint64_t threshold = -n % n;
        for (;;) {
            std::uint64_t r = next_u64();
            if (r >= threshold) return r % n;
        }
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(next_below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::uint64_t state_;
};

// One-shot deterministic unit draw keyed on (seed, episode, channel).
inline double unit_draw(std::uint64_t seed, std::uint64_t episode, std::uint64_t channel) {
    std::uint64_t s = hash_combine(hash_combine(seed, episode), channel);
    return static_cast<double>(splitmix64(s) >> 11) * 0x1.0p-53;
}

}  // namespace ofnet

#ifndef POLYFORM_RANDOM_HPP
#define POLYFORM_RANDOM_HPP

// Additive lagged-Fibonacci generator with subscript pair (38, 89) over
// 2^64: next = state[i-38] + state[i-89] (mod 2^64). The lag buffer is
// seeded with a SplitMix-style scrambler and warmed up by discarding 1000
// outputs, which pins the full sequence to the seed.

#include <array>
#include <cstdint>
#include <vector>

#include "polyform/errors.hpp"

namespace polyform {

class RngState {
  public:
    static constexpr int kShortLag = 38;
    static constexpr int kLongLag = 89;
    static constexpr int kWarmup = 1000;

    explicit RngState(std::uint64_t seed = 1) : seed_(seed) {
        std::uint64_t x = seed;
        auto splitmix = [&x]() {
            x += 0x9e3779b97f4a7c15ull;
            std::uint64_t z = x;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
            return z ^ (z >> 31);
        };
        for (auto& w : lag_) w = splitmix();
        pos_ = 0;
        for (int i = 0; i < kWarmup; ++i) next_word();
    }

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_word() {
        // lag_[pos_] currently holds the value 89 steps back; the value 38
        // back sits at pos_ + (89 - 38) modulo the buffer length.
        std::uint64_t v = lag_[(pos_ + kLongLag - kShortLag) % kLongLag] + lag_[pos_];
        lag_[pos_] = v;
        pos_ = (pos_ + 1) % kLongLag;
        return v;
    }

    // Uniform draw in [1, N] by rejection sampling, so no modulo bias.
    std::uint64_t random(std::uint64_t n) {
        if (n <= 1) throw DomainError("random: range bound must exceed 1");
        std::uint64_t limit = ~0ull - (~0ull % n);
        std::uint64_t w;
        do {
            w = next_word();
        } while (w >= limit);
        return 1 + w % n;
    }

    // Uniform random permutation (Fisher-Yates driven by random()).
    template <class T>
    std::vector<T> ranperm(std::vector<T> items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(random(i)) - 1;
            std::swap(items[i - 1], items[j]);
        }
        return items;
    }

    // Snapshot/restore of the exact generator state.
    struct Snapshot {
        std::array<std::uint64_t, kLongLag> lag;
        int pos;
        std::uint64_t seed;
    };
    Snapshot save() const { return {lag_, pos_, seed_}; }
    static RngState restore(const Snapshot& s) {
        RngState r(s.seed);
        r.lag_ = s.lag;
        r.pos_ = s.pos;
        return r;
    }

  private:
    std::array<std::uint64_t, kLongLag> lag_{};
    int pos_ = 0;
    std::uint64_t seed_;
};

}  // namespace polyform

#endif

#pragma once
// Deterministic RNG plumbing. Every randomized routine takes a 64-bit seed and
// derives independent streams for its sub-tasks by folding tagged words through
// the splitmix64 finalizer. This keeps results bit-identical regardless of
// execution order or thread count: no stream is ever shared between tasks.
#include <cstdint>
#include <initializer_list>
#include <string_view>

namespace sco {

// splitmix64 finalizer (public-domain constants, Vigna).
constexpr uint64_t mix64(uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Fold one word into a seed. Non-commutative on purpose.
constexpr uint64_t seed_fold(uint64_t h, uint64_t w) {
  return mix64(h + 0x9e3779b97f4a7c15ull + w);
}

// FNV-1a for short tag strings, so streams like "landmark" vs "sample" differ.
constexpr uint64_t tag_hash(std::string_view tag) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (char c : tag) h = (h ^ static_cast<unsigned char>(c)) * 0x100000001b3ull;
  return h;
}

inline uint64_t derive_seed(uint64_t base, std::initializer_list<uint64_t> words) {
  uint64_t h = seed_fold(0x8f1bbcdcbfa53e0bull, base);
  for (uint64_t w : words) h = seed_fold(h, w);
  return h;
}

inline uint64_t derive_seed(uint64_t base, std::string_view tag,
                            std::initializer_list<uint64_t> words = {}) {
  uint64_t h = seed_fold(0x8f1bbcdcbfa53e0bull, base);
  h = seed_fold(h, tag_hash(tag));
  for (uint64_t w : words) h = seed_fold(h, w);
  return h;
}

// xoshiro256** (Blackman/Vigna, public domain): fast, passes BigCrush, and —
// unlike std::uniform_int_distribution — yields the same stream on every
// platform, which the determinism contract requires.
class Rng {
 public:
  explicit Rng(uint64_t seed) {
    uint64_t sm = seed;
    for (auto& word : s_) {
      sm += 0x9e3779b97f4a7c15ull;
      word = mix64(sm);
    }
  }

  uint64_t next() {
    const uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform in [0, bound) without modulo bias (Lemire's multiply-shift).
  uint32_t next_below(uint32_t bound) {
    return static_cast<uint32_t>(
        (static_cast<unsigned __int128>(next()) * bound) >> 64);
  }

  // Uniform in [0, 1) with 53 random bits.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  static constexpr uint64_t rotl(uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  uint64_t s_[4];
};

}  // namespace sco

#pragma once

#include <cstdint>

namespace pulsematch {

// SplitMix64. Small enough to keep one stream per simulated node.
class RngStream {
 public:
  RngStream() : state_(0x9e3779b97f4a7c15ULL) {}
  explicit RngStream(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, bound), bound >= 1. Multiply-shift; bias is negligible
  // for simulation bounds and the mapping stays platform-independent.
  uint64_t below(uint64_t bound) {
    return static_cast<uint64_t>(
        (static_cast<__uint128_t>(next_u64()) * bound) >> 64);
  }

 private:
  uint64_t state_;
};

// Stateless 64-bit finalizer used for seed derivation.
uint64_t mix64(uint64_t x);

// Independent substream of a master seed. Streams with distinct (a, b, c)
// never share state; used for per-node randomness and per-trial seeds.
uint64_t derive_seed(uint64_t seed, uint64_t a, uint64_t b = 0, uint64_t c = 0);

inline RngStream derive_stream(uint64_t seed, uint64_t a, uint64_t b = 0,
                               uint64_t c = 0) {
  return RngStream(derive_seed(seed, a, b, c));
}

// Seeded bijection on [0, size): balanced Feistel cipher with cycle walking.
// Constant space, O(1) expected evaluation in both directions, so uniform
// per-node port permutations stay affordable at n = 2^20.
class FeistelPermutation {
 public:
  FeistelPermutation() : size_(0), half_bits_(1), key_(0) {}
  FeistelPermutation(uint64_t size, uint64_t key);

  uint64_t size() const { return size_; }
  uint64_t forward(uint64_t x) const;
  uint64_t inverse(uint64_t y) const;

 private:
  uint64_t encrypt(uint64_t v) const;
  uint64_t decrypt(uint64_t v) const;

  uint64_t size_;
  unsigned half_bits_;
  uint64_t key_;
};

}  // namespace pulsematch

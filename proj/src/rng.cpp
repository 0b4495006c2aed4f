#include "pulsematch/rng.hpp"

#include <bit>

namespace pulsematch {

uint64_t mix64(uint64_t x) {
  x ^= x >> 33;
  x *= 0xff51afd7ed558ccdULL;
  x ^= x >> 33;
  x *= 0xc4ceb9fe1a85ec53ULL;
  x ^= x >> 33;
  return x;
}

uint64_t derive_seed(uint64_t seed, uint64_t a, uint64_t b, uint64_t c) {
  uint64_t h = mix64(seed ^ 0x6a09e667f3bcc909ULL);
  h = mix64(h ^ (a + 0x9e3779b97f4a7c15ULL));
  h = mix64(h ^ (b + 0xbb67ae8584caa73bULL));
  h = mix64(h ^ (c + 0x3c6ef372fe94f82bULL));
  return h;
}

namespace {

constexpr unsigned kRounds = 4;

uint64_t round_fn(uint64_t key, unsigned round, uint64_t half) {
  return mix64(key ^ (half * 0x9e3779b97f4a7c15ULL) ^
               (static_cast<uint64_t>(round) * 0xda942042e4dd58b5ULL));
}

}  // namespace

FeistelPermutation::FeistelPermutation(uint64_t size, uint64_t key)
    : size_(size), key_(key) {
  unsigned bits = size > 1 ? std::bit_width(size - 1) : 1;
  half_bits_ = (bits + 1) / 2;
  if (half_bits_ == 0) half_bits_ = 1;
}

uint64_t FeistelPermutation::encrypt(uint64_t v) const {
  const uint64_t mask = (uint64_t{1} << half_bits_) - 1;
  uint64_t left = v >> half_bits_;
  uint64_t right = v & mask;
  for (unsigned r = 0; r < kRounds; ++r) {
    uint64_t next = left ^ (round_fn(key_, r, right) & mask);
    left = right;
    right = next;
  }
  return (left << half_bits_) | right;
}

uint64_t FeistelPermutation::decrypt(uint64_t v) const {
  const uint64_t mask = (uint64_t{1} << half_bits_) - 1;
  uint64_t left = v >> half_bits_;
  uint64_t right = v & mask;
  for (unsigned r = kRounds; r-- > 0;) {
    uint64_t prev = right ^ (round_fn(key_, r, left) & mask);
    right = left;
    left = prev;
  }
  return (left << half_bits_) | right;
}

uint64_t FeistelPermutation::forward(uint64_t x) const {
  // Cycle walking: the Feistel network permutes a power-of-two superset of
  // the domain; iterating until the value lands back inside [0, size)
  // restricts it to a bijection on the domain.
  uint64_t y = encrypt(x);
  while (y >= size_) y = encrypt(y);
  return y;
}

uint64_t FeistelPermutation::inverse(uint64_t y) const {
  uint64_t x = decrypt(y);
  while (x >= size_) x = decrypt(x);
  return x;
}

}  // namespace pulsematch

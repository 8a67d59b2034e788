#pragma once

#include <array>
#include <atomic>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <mutex>
#include <random>
#include <span>

#include "topdict/common.hpp"

namespace topdict {

// Karp-Rabin fingerprint phi(x) = sum_{i=1}^{|x|} x[i] * c^i mod p with the
// string length carried alongside, so that strings of different lengths never
// compare equal.
struct Fp {
  std::uint64_t value = 0;
  std::uint64_t len = 0;
  friend bool operator==(const Fp&, const Fp&) = default;
};

class FingerprintContext {
 public:
  static constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;

  explicit FingerprintContext(std::uint64_t seed) : seed_(seed) {
    std::mt19937_64 gen(seed);
    std::uniform_int_distribution<std::uint64_t> dist(2, kPrime - 2);
    init(dist(gen));
  }

  // Reconstruct a context with a known base (used when loading a dictionary).
  FingerprintContext(std::uint64_t seed, std::uint64_t base) : seed_(seed) {
    TOPDICT_REQUIRE(base >= 2 && base <= kPrime - 2, "fingerprint base out of range");
    init(base);
  }

  FingerprintContext(const FingerprintContext& o) : FingerprintContext(o.seed_, o.base_) {}
  FingerprintContext& operator=(const FingerprintContext&) = delete;

  std::uint64_t seed() const { return seed_; }
  std::uint64_t base() const { return base_; }
  std::uint64_t prime() const { return kPrime; }

  static std::uint64_t add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t s = a + b;
    return s >= kPrime ? s - kPrime : s;
  }
  static std::uint64_t sub(std::uint64_t a, std::uint64_t b) { return a >= b ? a - b : a + kPrime - b; }
  static std::uint64_t mul(std::uint64_t a, std::uint64_t b) {
    unsigned __int128 z = static_cast<unsigned __int128>(a) * b;
    std::uint64_t r = static_cast<std::uint64_t>(z & kPrime) + static_cast<std::uint64_t>(z >> 61);
    r = (r & kPrime) + (r >> 61);
    return r >= kPrime ? r - kPrime : r;
  }
  static std::uint64_t pow(std::uint64_t b, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e) {
      if (e & 1) r = mul(r, b);
      b = mul(b, b);
      e >>= 1;
    }
    return r;
  }

  // c^i mod p
  std::uint64_t power(std::uint64_t i) const { return table(i).pow; }
  // c^{-i} mod p
  std::uint64_t inverse_power(std::uint64_t i) const { return table(i).inv; }

  Fp of(std::span<const Symbol> s) const {
    std::uint64_t v = 0;
    std::uint64_t cp = base_;
    for (Symbol x : s) {
      v = add(v, mul(x % kPrime, cp));
      cp = mul(cp, base_);
    }
    return {v, s.size()};
  }
  Fp of(std::initializer_list<Symbol> s) const { return of(std::span<const Symbol>(s.begin(), s.size())); }
  Fp of_symbol(Symbol x) const { return {mul(x % kPrime, base_), 1}; }

  // phi(yz) from phi(y), phi(z).
  Fp compose(const Fp& y, const Fp& z) const {
    return {add(y.value, mul(power(y.len), z.value)), y.len + z.len};
  }
  // phi(z) from phi(yz), phi(y).
  Fp strip_prefix(const Fp& x, const Fp& y) const {
    TOPDICT_REQUIRE(y.len <= x.len, "prefix longer than string");
    return {mul(sub(x.value, y.value), inverse_power(y.len)), x.len - y.len};
  }
  // phi(y) from phi(yz), phi(z).
  Fp strip_suffix(const Fp& x, const Fp& z) const {
    TOPDICT_REQUIRE(z.len <= x.len, "suffix longer than string");
    std::uint64_t ylen = x.len - z.len;
    return {sub(x.value, mul(power(ylen), z.value)), ylen};
  }

 private:
  struct Entry {
    std::uint64_t pow;
    std::uint64_t inv;
  };
  static constexpr std::size_t kChunkBits = 12;
  static constexpr std::size_t kChunk = std::size_t{1} << kChunkBits;
  static constexpr std::size_t kMaxChunks = std::size_t{1} << 16;
  using Chunk = std::array<Entry, kChunk>;

  void init(std::uint64_t base) {
    base_ = base;
    inv_base_ = pow(base, kPrime - 2);
    chunks_ = std::make_unique<std::atomic<Chunk*>[]>(kMaxChunks);
    for (std::size_t k = 0; k < kMaxChunks; ++k) chunks_[k].store(nullptr, std::memory_order_relaxed);
    owned_.clear();
    grow(kChunk);
  }

  // Readers see either a fully written chunk or none; extension is serialized.
  const Entry& table(std::uint64_t i) const {
    std::size_t ci = static_cast<std::size_t>(i >> kChunkBits);
    TOPDICT_REQUIRE(ci < kMaxChunks, "fingerprint power index too large");
    Chunk* c = chunks_[ci].load(std::memory_order_acquire);
    if (!c) {
      grow(static_cast<std::size_t>(i) + 1);
      c = chunks_[ci].load(std::memory_order_acquire);
    }
    return (*c)[i & (kChunk - 1)];
  }

  void grow(std::size_t need) const {
    std::lock_guard<std::mutex> lock(mu_);
    while (owned_.size() * kChunk < need) {
      auto chunk = std::make_unique<Chunk>();
      std::size_t start = owned_.size() * kChunk;
      Entry prev = start == 0 ? Entry{1, 1} : (*owned_.back())[kChunk - 1];
      for (std::size_t k = 0; k < kChunk; ++k) {
        Entry e = start + k == 0 ? Entry{1, 1} : Entry{mul(prev.pow, base_), mul(prev.inv, inv_base_)};
        (*chunk)[k] = e;
        prev = e;
      }
      chunks_[owned_.size()].store(chunk.get(), std::memory_order_release);
      owned_.push_back(std::move(chunk));
    }
  }

  std::uint64_t seed_ = 0;
  std::uint64_t base_ = 2;
  std::uint64_t inv_base_ = 1;
  mutable std::mutex mu_;
  mutable std::vector<std::unique_ptr<Chunk>> owned_;
  std::unique_ptr<std::atomic<Chunk*>[]> chunks_;
};

}  // namespace topdict

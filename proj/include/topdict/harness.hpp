#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "topdict/common.hpp"

namespace topdict::harness {

inline constexpr std::uint64_t kMaxEnumeration = 1000000;

// sigma^k, or kMaxEnumeration + 1 once it exceeds the enumeration limit.
inline std::uint64_t capped_power(std::uint64_t sigma, std::size_t k) {
  std::uint64_t r = 1;
  for (std::size_t j = 0; j < k; ++j) {
    r *= sigma;
    if (r > kMaxEnumeration) return kMaxEnumeration + 1;
  }
  return r;
}

namespace detail {

// All length-k strings over symbols 1..sigma (codes 0..sigma-1) whose symbol
// sum is even, in lexicographic order.
inline std::vector<SymbolString> even_sum_strings(Symbol sigma, std::size_t k) {
  std::uint64_t total = capped_power(sigma, k);
  if (total > kMaxEnumeration) throw InputError("parity corpus too large to enumerate");
  std::vector<SymbolString> out;
  SymbolString s(k, 0);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::uint64_t sum = 0;
    for (Symbol x : s) sum += x + 1;
    if (sum % 2 == 0) out.push_back(s);
    for (std::size_t j = k; j-- > 0;) {
      if (++s[j] < sigma) break;
      s[j] = 0;
    }
  }
  return out;
}

}  // namespace detail

// Strings P[1, m] over {1..sigma} with even coordinate sum.
inline std::vector<SymbolString> gen_parity(Symbol sigma, std::size_t m) {
  if (sigma < 2) throw InputError("parity corpus needs sigma >= 2");
  return detail::even_sum_strings(sigma, m);
}

// Largest l with n >= m * sigma^l, capped at m.
inline std::size_t padded_parity_length(Symbol sigma, std::size_t m, std::uint64_t n) {
  std::size_t l = 0;
  while (l < m) {
    std::uint64_t next = capped_power(sigma, l + 1);
    if (next > kMaxEnumeration || m * next > n) break;
    ++l;
  }
  return l;
}

// Parity on the first l symbols followed by m - l copies of the zero symbol.
inline std::vector<SymbolString> gen_padded_parity(Symbol sigma, std::size_t m, std::uint64_t n) {
  if (sigma < 2) throw InputError("parity corpus needs sigma >= 2");
  std::size_t l = padded_parity_length(sigma, m, n);
  if (l < 1) throw InputError("padded parity needs n >= m * sigma");
  auto out = detail::even_sum_strings(sigma, l);
  for (auto& s : out) s.resize(m, 0);
  return out;
}

// Random strings over [0, sigma) until the total length reaches n; lengths
// uniform in [1, 2n/k].
inline std::vector<SymbolString> gen_random(std::uint64_t n, Symbol sigma, std::size_t k, std::uint64_t seed) {
  if (sigma < 1 || k < 1) throw InputError("gen_random needs sigma >= 1 and k >= 1");
  std::mt19937_64 rng(seed);
  std::uint64_t max_len = std::max<std::uint64_t>(1, 2 * n / k);
  std::uniform_int_distribution<std::uint64_t> len(1, max_len);
  std::uniform_int_distribution<Symbol> sym(0, sigma - 1);
  std::vector<SymbolString> out;
  std::uint64_t total = 0;
  while (total < n) {
    SymbolString s(std::min<std::uint64_t>(len(rng), n - total));
    for (auto& x : s) x = sym(rng);
    total += s.size();
    out.push_back(std::move(s));
  }
  return out;
}

inline std::vector<SymbolString> gen_unary(std::uint64_t n, Symbol a = 'a') { return {SymbolString(n, a)}; }

// Substrings of a periodic text (random period block over [0, sigma)) with
// random offsets and lengths, total length n.
inline std::vector<SymbolString> gen_repetitive(std::uint64_t n, std::size_t period, Symbol sigma, std::uint64_t seed) {
  if (period < 1 || sigma < 1) throw InputError("gen_repetitive needs period >= 1 and sigma >= 1");
  std::mt19937_64 rng(seed);
  SymbolString block(period);
  for (auto& x : block) x = static_cast<Symbol>(rng() % sigma);
  std::uint64_t max_len = std::max<std::uint64_t>(1, 8 * period);
  std::vector<SymbolString> out;
  std::uint64_t total = 0;
  while (total < n) {
    std::uint64_t len = std::min<std::uint64_t>(1 + rng() % max_len, n - total);
    std::size_t off = rng() % period;
    SymbolString s(len);
    for (std::uint64_t j = 0; j < len; ++j) s[j] = block[(off + j) % period];
    total += len;
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace topdict::harness

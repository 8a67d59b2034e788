#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace topdict {

// Symbols are ordered code points in [0, sigma). Query engines only inspect
// pattern symbols through comparisons that are tallied in OpCounters.
using Symbol = std::uint32_t;
using SymbolString = std::vector<Symbol>;

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

// Malformed user input: bad symbols, unreadable corpora, corrupt files.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller violated an operation precondition.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A structural invariant failed inside the library.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

#define TOPDICT_REQUIRE(cond, msg)                    \
  do {                                                \
    if (!(cond)) throw ::topdict::ContractError(msg); \
  } while (0)

#define TOPDICT_CHECK(cond, msg)                      \
  do {                                                \
    if (!(cond)) throw ::topdict::InternalError(msg); \
  } while (0)

// Per-query instrumentation. Counters only grow during a query.
struct OpCounters {
  std::uint64_t char_comparisons = 0;  // tests of the form P[i] <= c (or ==)
  std::uint64_t fingerprint_checks = 0;
  std::uint64_t clusters_visited = 0;
  std::uint64_t wla_queries = 0;
  std::uint64_t wla_work = 0;
  std::uint64_t spine_chars = 0;
  std::uint64_t spine_work = 0;
  std::uint64_t spine_extractions = 0;
  std::uint64_t horizontal_accesses = 0;
  std::uint64_t heavy_hops = 0;

  void reset() { *this = OpCounters{}; }

  friend bool operator==(const OpCounters&, const OpCounters&) = default;

  OpCounters& operator+=(const OpCounters& o) {
    char_comparisons += o.char_comparisons;
    fingerprint_checks += o.fingerprint_checks;
    clusters_visited += o.clusters_visited;
    wla_queries += o.wla_queries;
    wla_work += o.wla_work;
    spine_chars += o.spine_chars;
    spine_work += o.spine_work;
    spine_extractions += o.spine_extractions;
    horizontal_accesses += o.horizontal_accesses;
    heavy_hops += o.heavy_hops;
    return *this;
  }
};

// Null-safe counter bump so structures can be queried without instrumentation.
#define TOPDICT_COUNT(counters, field, amount) \
  do {                                         \
    if (counters) (counters)->field += (amount); \
  } while (0)

inline SymbolString to_symbols(const std::string& s) {
  SymbolString out;
  out.reserve(s.size());
  for (unsigned char ch : s) out.push_back(ch);
  return out;
}

inline std::string to_bytes(const SymbolString& s) {
  std::string out;
  out.reserve(s.size());
  for (Symbol x : s) out.push_back(static_cast<char>(static_cast<unsigned char>(x)));
  return out;
}

inline unsigned floor_log2(std::uint64_t x) {
  unsigned r = 0;
  while (x >>= 1) ++r;
  return r;
}

inline unsigned ceil_log2(std::uint64_t x) {
  if (x <= 1) return 0;
  return floor_log2(x - 1) + 1;
}

}  // namespace topdict

#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "topdict/common.hpp"
#include "topdict/fingerprint.hpp"
#include "topdict/horizontal.hpp"
#include "topdict/top_dag.hpp"
#include "topdict/trie.hpp"
#include "topdict/vertical.hpp"

namespace topdict {

struct DictionaryHeader {
  std::uint64_t n = 0;  // total length of the distinct strings
  std::uint64_t sigma = 0;
  std::uint64_t n_t = 1;
  std::uint64_t num_strings = 0;
  bool root_terminal = false;  // empty string present
};

// Everything a query needs. Auxiliary structures point into the top DAG, so
// the core is pinned in memory once built.
class DictionaryCore {
 public:
  DictionaryCore(DictionaryHeader h, TopDag dag, FingerprintContext ctx)
      : header_(h), ctx_(std::move(ctx)), dag_(std::move(dag)), vd_(dag_), hd_(dag_, vd_) {}
  DictionaryCore(const DictionaryCore&) = delete;
  DictionaryCore& operator=(const DictionaryCore&) = delete;

  const DictionaryHeader& header() const { return header_; }
  const FingerprintContext& ctx() const { return ctx_; }
  const TopDag& dag() const { return dag_; }
  const VerticalDag& vd() const { return vd_; }
  const HorizontalDag& hd() const { return hd_; }
  bool no_edges() const { return dag_.size() == 0; }

 private:
  DictionaryHeader header_;
  FingerprintContext ctx_;
  TopDag dag_;
  VerticalDag vd_;
  HorizontalDag hd_;
};

struct SearchOutcome {
  LocusResult locus;
  std::uint64_t count = 0;  // strings with prefix P; 0 unless is_prefix
};

// Position of a top-down search: at cluster c with P[0, i) matched along the
// root-to-top(c) path. extra = terminals strictly below bottom(c); topflag =
// terminal flag of top(c).
struct SearchState {
  NodeId c = kNoNode;
  std::size_t i = 0;
  std::uint64_t extra = 0;
  bool topflag = false;
};

namespace detail {

inline SearchOutcome outcome(std::size_t matched, std::size_t m, NodeId c, std::uint64_t count) {
  SearchOutcome o;
  o.locus = {matched, matched == m, c};
  o.count = matched == m ? count : 0;
  return o;
}

// Empty pattern or a dictionary without edges needs no traversal.
inline bool degenerate(const DictionaryCore& d, std::size_t m, SearchOutcome& out) {
  if (m == 0) {
    std::uint64_t below = d.no_edges() ? 0 : d.dag().at(d.dag().root()).terminals;
    out = outcome(0, 0, d.no_edges() ? kNoNode : d.dag().root(), d.header().root_terminal + below);
    return true;
  }
  if (d.no_edges()) {
    out = outcome(0, m, kNoNode, 0);
    return true;
  }
  return false;
}

inline SearchState start(const DictionaryCore& d) { return {d.dag().root(), 0, 0, d.header().root_terminal}; }

// Locus is top(c); the whole subtree of top(c) is c plus what hangs below bottom(c).
inline SearchOutcome at_top(const DictionaryCore& d, const SearchState& s, std::size_t m) {
  return outcome(s.i, m, s.c, s.topflag + d.dag().at(s.c).terminals + s.extra);
}

// Case 1: single edge cluster.
inline SearchOutcome leaf_step(const DictionaryCore& d, const SearchState& s, std::span<const Symbol> p,
                               OpCounters* counters) {
  const DagNode& x = d.dag().at(s.c);
  TOPDICT_COUNT(counters, char_comparisons, 1);
  if (p[s.i] != x.label) return outcome(s.i, p.size(), s.c, 0);
  return outcome(s.i + 1, p.size(), s.c, x.term + s.extra);
}

// Case 2 by one comparison against the rightmost edge label of the left child.
inline void horizontal_step(const DictionaryCore& d, SearchState& s, std::span<const Symbol> p, OpCounters* counters) {
  const DagNode& x = d.dag().at(s.c);
  const DagNode& a = d.dag().at(x.left);
  TOPDICT_COUNT(counters, char_comparisons, 1);
  NodeId next = p[s.i] <= a.rightmost_label ? x.left : x.right;
  if (!d.dag().at(next).has_bottom) s.extra = 0;
  s.c = next;
}

inline void vertical_left(const DictionaryCore& d, SearchState& s) {
  const DagNode& x = d.dag().at(s.c);
  s.extra += d.dag().at(x.right).terminals;
  s.c = x.left;
}

inline void vertical_right(const DictionaryCore& d, SearchState& s) {
  const DagNode& x = d.dag().at(s.c);
  const DagNode& a = d.dag().at(x.left);
  s.i += a.spine_len;
  s.topflag = a.bottom_terminal;
  if (!x.has_bottom) s.extra = 0;
  s.c = x.right;
}

// Jump from cluster x to hentry(x) along left children of vertical clusters.
inline void to_hentry(const DictionaryCore& d, SearchState& s) {
  s.extra += d.vd().hentry_sum(s.c);
  s.c = d.vd().hentry(s.c);
}

}  // namespace detail

// Where reporting starts: the subtree of the locus is either E plus the chain
// of clusters hanging below its bottom boundary (locus = top(E)), or, when the
// pattern ends on the lower end of a leaf edge, that node plus the chain.
struct ReportTarget {
  bool found = false;
  NodeId e = kNoNode;
  bool leaf_end = false;
  bool topflag = false;
  std::vector<NodeId> chain;  // nearest first
};

namespace detail {

// Exact top-down descent keeping the chain of hanging clusters. spine_equal(A,
// i, len) decides spine(A) == P[i, i + len).
template <class SpineEqual>
ReportTarget report_descent(const DictionaryCore& d, std::span<const Symbol> p, SpineEqual spine_equal,
                            OpCounters* counters) {
  ReportTarget t;
  const std::size_t m = p.size();
  if (d.no_edges()) {
    if (m == 0) {
      t.found = true;
      t.topflag = d.header().root_terminal;
    }
    return t;
  }
  // Persistent list of hanging clusters: (cluster, index of the rest).
  std::vector<std::pair<NodeId, std::int64_t>> arena;
  std::int64_t chain = -1;
  NodeId c = d.dag().root();
  std::size_t i = 0;
  bool topflag = d.header().root_terminal;
  for (;;) {
    TOPDICT_COUNT(counters, clusters_visited, 1);
    const DagNode& x = d.dag().at(c);
    if (i == m) {
      t.found = true;
      t.e = c;
      t.topflag = topflag;
      break;
    }
    if (x.kind == ClusterKind::Leaf) {
      TOPDICT_COUNT(counters, char_comparisons, 1);
      if (p[i] != x.label || i + 1 != m) return t;
      t.found = true;
      t.leaf_end = true;
      t.e = c;
      t.topflag = x.term;
      break;
    }
    if (is_horizontal(x.kind)) {
      TOPDICT_COUNT(counters, char_comparisons, 1);
      c = p[i] <= d.dag().at(x.left).rightmost_label ? x.left : x.right;
      if (!d.dag().at(c).has_bottom) chain = -1;
      continue;
    }
    const DagNode& a = d.dag().at(x.left);
    if (a.spine_len <= m - i && spine_equal(x.left, i, a.spine_len)) {
      i += a.spine_len;
      topflag = a.bottom_terminal;
      c = x.right;
      if (!x.has_bottom) chain = -1;
    } else {
      arena.emplace_back(x.right, x.has_bottom ? chain : -1);
      chain = static_cast<std::int64_t>(arena.size()) - 1;
      c = x.left;
    }
  }
  for (std::int64_t k = chain; k >= 0; k = arena[static_cast<std::size_t>(k)].second)
    t.chain.push_back(arena[static_cast<std::size_t>(k)].first);
  return t;
}

}  // namespace detail

// Suffixes below the locus in lexicographic order, by decompressing the
// report target. Cost is linear in the output size.
inline std::vector<SymbolString> expand_report(const DictionaryCore& d, const ReportTarget& t) {
  std::vector<SymbolString> out;
  if (!t.found) return out;
  struct LNode {
    std::vector<std::pair<Symbol, std::uint32_t>> kids;
    bool term = false;
  };
  std::vector<LNode> nodes(1);
  nodes[0].term = t.topflag;
  const TopDag& dag = d.dag();
  // Decompress cluster x below local node top; returns the local bottom node.
  auto expand = [&](auto&& self, NodeId x, std::int64_t top) -> std::int64_t {
    const DagNode& n = dag.at(x);
    if (n.kind == ClusterKind::Leaf) {
      std::uint32_t id = static_cast<std::uint32_t>(nodes.size());
      nodes.push_back({{}, n.term});
      nodes[static_cast<std::size_t>(top)].kids.emplace_back(n.label, id);
      return n.has_bottom ? static_cast<std::int64_t>(id) : -1;
    }
    if (is_vertical(n.kind)) {
      std::int64_t b = self(self, n.left, top);
      return self(self, n.right, b);
    }
    std::int64_t ba = self(self, n.left, top);
    std::int64_t bb = self(self, n.right, top);
    return ba >= 0 ? ba : bb;
  };
  std::int64_t bottom = 0;
  if (!t.leaf_end && t.e != kNoNode) bottom = expand(expand, t.e, 0);
  for (NodeId h : t.chain) {
    TOPDICT_CHECK(bottom >= 0, "report chain hangs below a cluster without bottom boundary");
    bottom = expand(expand, h, bottom);
  }
  // Children arrive in label order, so a preorder walk is lexicographic.
  SymbolString cur;
  std::vector<std::pair<std::uint32_t, std::size_t>> stack{{0, 0}};
  if (nodes[0].term) out.push_back(cur);
  while (!stack.empty()) {
    auto& [v, k] = stack.back();
    if (k == nodes[v].kids.size()) {
      stack.pop_back();
      if (!cur.empty() && !stack.empty()) cur.pop_back();
      continue;
    }
    auto [label, child] = nodes[v].kids[k++];
    cur.push_back(label);
    if (nodes[child].term) out.push_back(cur);
    stack.emplace_back(child, 0);
  }
  return out;
}

}  // namespace topdict

#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "topdict/baseline_index.hpp"
#include "topdict/core.hpp"
#include "topdict/top_tree.hpp"

namespace topdict {

enum class Engine { Fingerprint, Logn, Msigma, Auto };

inline const char* engine_name(Engine e) {
  switch (e) {
    case Engine::Fingerprint: return "fingerprint";
    case Engine::Logn: return "logn";
    case Engine::Msigma: return "msigma";
    case Engine::Auto: return "auto";
  }
  return "?";
}

inline std::optional<Engine> parse_engine(std::string_view s) {
  for (Engine e : {Engine::Fingerprint, Engine::Logn, Engine::Msigma, Engine::Auto})
    if (s == engine_name(e)) return e;
  return std::nullopt;
}

namespace detail {

// Deterministic search shared by both engines. Vertical clusters are crossed
// by extracting the spine and computing its lcp with the rest of P; on a
// mismatch the search resumes at hentry of the right child of vexit.
// Horizontal clusters use one comparison per level (kHexit false) or a single
// horizontal access (kHexit true).
template <class Cursor, bool kHexit>
SearchOutcome deterministic_search(const DictionaryCore& d, std::span<const Symbol> p, OpCounters* counters) {
  SearchOutcome out;
  if (degenerate(d, p.size(), out)) return out;
  const std::size_t m = p.size();
  const TopDag& dag = d.dag();
  SearchState s = start(d);
  for (;;) {
    TOPDICT_COUNT(counters, clusters_visited, 1);
    if (s.i == m) return at_top(d, s, m);
    const DagNode& x = dag.at(s.c);
    if (x.kind == ClusterKind::Leaf) return leaf_step(d, s, p, counters);
    if (is_horizontal(x.kind)) {
      if constexpr (kHexit) {
        auto e = d.hd().hexit(s.c, p[s.i], counters);
        if (!e.found) return outcome(s.i, m, s.c, 0);
        if (e.reset_extra) s.extra = 0;
        s.c = e.resume;
      } else {
        horizontal_step(d, s, p, counters);
      }
      continue;
    }
    Cursor cur(d.vd(), s.c, s.extra);
    LcpResult r = lcp_spine(cur, p.subspan(s.i), counters);
    TOPDICT_COUNT(counters, clusters_visited, cur.work());
    if (r.len == 0) {
      to_hentry(d, s);
      continue;
    }
    if (s.i + r.len == m) {
      NodeId last = r.last;
      return outcome(m, m, s.c, d.vd().lterm(last) + r.last_extra + d.vd().w(last));
    }
    s.i += r.len;
    if (r.mismatch) {
      const DagNode& e = dag.at(r.vexit);
      s.topflag = dag.at(e.left).bottom_terminal;
      s.extra = r.vexit_extra;
      s.c = e.right;
      to_hentry(d, s);
      continue;
    }
    // Spine exhausted: the locus is bottom(C) unless C has no bottom boundary.
    if (x.kind == ClusterKind::VerticalA) return outcome(s.i, m, s.c, 0);
    // Nothing is known about the first spine label of the right child yet.
    s.topflag = dag.at(x.left).bottom_terminal;
    s.extra = 0;
    s.c = x.right;
  }
}

}  // namespace detail

// O(m + log n) search with the stack-based spine extractor.
inline SearchOutcome search_logn(const DictionaryCore& d, std::span<const Symbol> p, OpCounters* counters = nullptr) {
  return detail::deterministic_search<DfsSpineCursor, false>(d, p, counters);
}

// O(m log sigma) search with constant-time spine extraction and horizontal access.
inline SearchOutcome search_msigma(const DictionaryCore& d, std::span<const Symbol> p,
                                   OpCounters* counters = nullptr) {
  return detail::deterministic_search<FastSpineCursor, true>(d, p, counters);
}

inline std::vector<SymbolString> exact_report(const DictionaryCore& d, std::span<const Symbol> p,
                                              OpCounters* counters = nullptr) {
  auto eq = [&](NodeId a, std::size_t i, std::uint64_t len) {
    FastSpineCursor cur(d.vd(), d.vd().vdesc(a), 0);
    return lcp_spine(cur, p.subspan(i, len), counters).len == len;
  };
  return expand_report(d, detail::report_descent(d, p, eq, counters));
}

// The assembled dictionary. Owns the pinned core.
class Dictionary {
 public:
  Dictionary() = default;

  static Dictionary build(std::vector<SymbolString> strings, std::uint64_t seed, std::size_t sigma = 0) {
    Trie trie = Trie::build(std::move(strings), sigma);
    DictionaryHeader h;
    h.n = trie.total_length();
    h.sigma = trie.sigma();
    h.n_t = trie.size();
    h.num_strings = trie.num_strings();
    h.root_terminal = trie.node(trie.root()).terminal;
    FingerprintContext ctx(seed);
    TopDag dag;
    {
      TopTree tt = TopTree::build(trie);
      dag = TopDag::compress(tt, ctx);
    }
    return from_parts(h, std::move(dag), std::move(ctx));
  }

  static Dictionary from_parts(DictionaryHeader h, TopDag dag, FingerprintContext ctx) {
    Dictionary out;
    out.core_ = std::make_unique<DictionaryCore>(h, std::move(dag), std::move(ctx));
    return out;
  }

  const DictionaryCore& core() const { return *core_; }
  const DictionaryHeader& header() const { return core_->header(); }
  const TopDag& dag() const { return core_->dag(); }
  std::uint64_t seed() const { return core_->ctx().seed(); }
  std::size_t n_td() const { return core_->dag().size(); }
  std::uint32_t height() const { return core_->no_edges() ? 0 : dag().at(dag().root()).height; }

  // msigma when m(1 + ceil log sigma) < m + ceil log n, logn otherwise.
  Engine resolve(Engine e, std::size_t m) const {
    if (e != Engine::Auto) return e;
    std::uint64_t a = m * (1 + ceil_log2(header().sigma));
    std::uint64_t b = m + ceil_log2(header().n);
    return a < b ? Engine::Msigma : Engine::Logn;
  }

  SearchOutcome query(std::span<const Symbol> p, Engine e = Engine::Auto, OpCounters* counters = nullptr) const {
    switch (resolve(e, p.size())) {
      case Engine::Fingerprint: return fp_search(*core_, p, counters);
      case Engine::Logn: return search_logn(*core_, p, counters);
      default: return search_msigma(*core_, p, counters);
    }
  }

  LocusResult search(std::span<const Symbol> p, Engine e = Engine::Auto, OpCounters* counters = nullptr) const {
    return query(p, e, counters).locus;
  }

  std::uint64_t count(std::span<const Symbol> p, Engine e = Engine::Auto, OpCounters* counters = nullptr) const {
    return query(p, e, counters).count;
  }

  std::vector<SymbolString> report(std::span<const Symbol> p, Engine e = Engine::Auto,
                                   OpCounters* counters = nullptr) const {
    if (resolve(e, p.size()) == Engine::Fingerprint) return fp_report(*core_, p, counters);
    return exact_report(*core_, p, counters);
  }

 private:
  std::unique_ptr<DictionaryCore> core_;
};

}  // namespace topdict

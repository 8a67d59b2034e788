#pragma once

#include <span>
#include <vector>

#include "topdict/core.hpp"

namespace topdict {

// Prefix fingerprints of a pattern: pf[k] = phi(P[0, k)).
class PatternFingerprints {
 public:
  PatternFingerprints(const FingerprintContext& ctx, std::span<const Symbol> p) : ctx_(&ctx), pf_(p.size() + 1) {
    for (std::size_t k = 0; k < p.size(); ++k) pf_[k + 1] = ctx.compose(pf_[k], ctx.of_symbol(p[k]));
  }
  // phi(P[i, i + len)).
  Fp range(std::size_t i, std::size_t len) const { return ctx_->strip_prefix(pf_[i + len], pf_[i]); }

 private:
  const FingerprintContext* ctx_;
  std::vector<Fp> pf_;
};

// Monte-Carlo search: vertical clusters are crossed by comparing the spine
// fingerprint of the left child with the matching substring of P.
inline SearchOutcome fp_search(const DictionaryCore& d, std::span<const Symbol> p, OpCounters* counters = nullptr) {
  SearchOutcome out;
  if (detail::degenerate(d, p.size(), out)) return out;
  const std::size_t m = p.size();
  PatternFingerprints pf(d.ctx(), p);
  SearchState s = detail::start(d);
  for (;;) {
    TOPDICT_COUNT(counters, clusters_visited, 1);
    if (s.i == m) return detail::at_top(d, s, m);
    const DagNode& x = d.dag().at(s.c);
    if (x.kind == ClusterKind::Leaf) return detail::leaf_step(d, s, p, counters);
    if (is_horizontal(x.kind)) {
      detail::horizontal_step(d, s, p, counters);
      continue;
    }
    const DagNode& a = d.dag().at(x.left);
    if (a.spine_len > m - s.i) {
      detail::vertical_left(d, s);
      continue;
    }
    TOPDICT_COUNT(counters, fingerprint_checks, 1);
    if (pf.range(s.i, a.spine_len) == a.spine_fp) detail::vertical_right(d, s);
    else detail::vertical_left(d, s);
  }
}

inline std::vector<SymbolString> fp_report(const DictionaryCore& d, std::span<const Symbol> p,
                                           OpCounters* counters = nullptr) {
  PatternFingerprints pf(d.ctx(), p);
  auto eq = [&](NodeId a, std::size_t i, std::uint64_t len) {
    TOPDICT_COUNT(counters, fingerprint_checks, 1);
    return pf.range(i, len) == d.dag().at(a).spine_fp;
  };
  return expand_report(d, detail::report_descent(d, p, eq, counters));
}

}  // namespace topdict

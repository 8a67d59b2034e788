#pragma once

#include <cstdint>
#include <vector>

#include "topdict/common.hpp"
#include "topdict/wla.hpp"

namespace topdict {

// A gapped grammar: rule C -> C1 g1 C2 ... g(k-1) Ck expands to
// S(C1) 0^g1 S(C2) ... S(Ck). Terminal rules have no children.
struct GappedGrammar {
  struct Rule {
    Symbol symbol = 0;                // terminal rules only
    std::vector<NodeId> children;     // empty for terminals
    std::vector<std::uint64_t> gaps;  // children.size() - 1 entries
  };
  static constexpr Symbol kGapSymbol = 0;

  std::vector<Rule> rules;

  NodeId add_terminal(Symbol s) {
    Rule r;
    r.symbol = s;
    rules.push_back(std::move(r));
    return static_cast<NodeId>(rules.size() - 1);
  }

  NodeId add_rule(std::vector<NodeId> children, std::vector<std::uint64_t> gaps) {
    TOPDICT_REQUIRE(!children.empty(), "rule without children");
    TOPDICT_REQUIRE(gaps.size() + 1 == children.size(), "rule needs one gap between each pair of children");
    Rule r;
    r.children = std::move(children);
    r.gaps = std::move(gaps);
    rules.push_back(std::move(r));
    return static_cast<NodeId>(rules.size() - 1);
  }

  std::size_t size() const { return rules.size(); }
  bool is_terminal(NodeId v) const { return rules[v].children.empty(); }

  // Full expansion; test oracle only.
  SymbolString expand(NodeId v) const {
    SymbolString out;
    expand_into(v, out);
    return out;
  }

 private:
  void expand_into(NodeId v, SymbolString& out) const {
    const Rule& r = rules[v];
    if (r.children.empty()) {
      out.push_back(r.symbol);
      return;
    }
    for (std::size_t k = 0; k < r.children.size(); ++k) {
      expand_into(r.children[k], out);
      if (k < r.gaps.size()) out.insert(out.end(), r.gaps[k], kGapSymbol);
    }
  }
};

// Random access into S(v) for every grammar node v. Heavy child = leftmost
// child of maximum expansion length. The heavy forest F links each node to
// its heavy child; two copies of F weighted by the left resp. right offset of
// the heavy child (zero-weight edges contracted) answer "where does the
// target leave the heavy path" with one weighted level ancestor query.
class GrammarAccess {
 public:
  GrammarAccess() = default;

  explicit GrammarAccess(GappedGrammar g) : g_(std::move(g)) {
    const std::size_t n = g_.size();
    len_.assign(n, 0);
    heavy_.assign(n, kNoNode);
    heavy_pos_.assign(n, 0);
    hdepth_.assign(n, 0);
    heavy_leaf_.assign(n, kNoNode);
    dl_.assign(n, 0);
    dr_.assign(n, 0);

    order_ = topological_order();
    for (NodeId v : order_) {
      const auto& r = g_.rules[v];
      if (r.children.empty()) {
        len_[v] = 1;
        heavy_leaf_[v] = v;
        continue;
      }
      std::uint64_t total = 0;
      std::uint32_t best = 0;
      for (std::size_t k = 0; k < r.children.size(); ++k) {
        NodeId c = r.children[k];
        if (len_[c] > len_[r.children[best]]) best = static_cast<std::uint32_t>(k);
        total += len_[c];
        if (k < r.gaps.size()) total += r.gaps[k];
        if (total > kMaxLen) throw InputError("gapped grammar expansion too long");
      }
      len_[v] = total;
      heavy_pos_[v] = best;
      NodeId h = r.children[best];
      heavy_[v] = h;
      hdepth_[v] = hdepth_[h] + 1;
      heavy_leaf_[v] = heavy_leaf_[h];
      std::uint64_t left = 0;
      for (std::uint32_t k = 0; k < best; ++k) left += len_[r.children[k]] + r.gaps[k];
      dl_[v] = left + dl_[h];
      dr_[v] = len_[v] - left - len_[h] + dr_[h];
    }
    build_side(dl_, left_);
    build_side(dr_, right_);
  }

  const GappedGrammar& grammar() const { return g_; }
  std::size_t size() const { return g_.size(); }
  std::uint64_t length(NodeId v) const { return len_[v]; }
  NodeId heavy_child(NodeId v) const { return heavy_[v]; }
  std::uint32_t heavy_position(NodeId v) const { return heavy_pos_[v]; }
  // Number of heavy edges from v to the terminal ending its heavy path.
  std::uint32_t hdepth(NodeId v) const { return hdepth_[v]; }
  NodeId heavy_leaf(NodeId v) const { return heavy_leaf_[v]; }
  // Children before parents.
  const std::vector<NodeId>& order() const { return order_; }
  std::size_t stored_links() const { return left_.wla.stored_links() + right_.wla.stored_links() + 6 * size(); }

  Symbol access(NodeId v, std::uint64_t i, OpCounters* counters = nullptr) const {
    NullVisitor vis;
    return access_path(v, i, vis, counters);
  }

  // Walks the root-to-target path as alternating heavy segments and light
  // edges. Visitor receives:
  //   heavy(a, z)          heavy path from a down to z (z == a allowed)
  //   light(z, k, child)   descent from z into its k-th child
  //   gap(z)               target is a gap position of z
  template <class Visitor>
  Symbol access_path(NodeId v, std::uint64_t i, Visitor& vis, OpCounters* counters = nullptr) const {
    TOPDICT_REQUIRE(v < g_.size(), "grammar node out of range");
    TOPDICT_REQUIRE(i < len_[v], "access index out of range");
    for (;;) {
      if (g_.is_terminal(v)) {
        vis.heavy(v, v);
        return g_.rules[v].symbol;
      }
      if (i == dl_[v]) {
        vis.heavy(v, heavy_leaf_[v]);
        return g_.rules[heavy_leaf_[v]].symbol;
      }
      NodeId z;
      if (i < dl_[v]) {
        z = left_.rep[left_.wla.query(left_.comp[v], dl_[v] - i, counters)];
      } else {
        std::uint64_t ir = len_[v] - 1 - i;
        z = right_.rep[right_.wla.query(right_.comp[v], dr_[v] - ir, counters)];
      }
      std::uint64_t iz = i - (dl_[v] - dl_[z]);
      vis.heavy(v, z);
      const auto& r = g_.rules[z];
      std::uint64_t pos = 0;
      bool found = false;
      for (std::size_t k = 0; k < r.children.size(); ++k) {
        NodeId c = r.children[k];
        if (iz < pos + len_[c]) {
          TOPDICT_CHECK(k != heavy_pos_[z], "random access exit landed on the heavy child");
          TOPDICT_COUNT(counters, heavy_hops, 1);
          vis.light(z, static_cast<std::uint32_t>(k), c);
          v = c;
          i = iz - pos;
          found = true;
          break;
        }
        pos += len_[c];
        if (k < r.gaps.size()) {
          if (iz < pos + r.gaps[k]) {
            vis.gap(z);
            return GappedGrammar::kGapSymbol;
          }
          pos += r.gaps[k];
        }
      }
      TOPDICT_CHECK(found, "random access index not covered by rule");
    }
  }

 private:
  static constexpr std::uint64_t kMaxLen = std::uint64_t{1} << 62;

  struct NullVisitor {
    void heavy(NodeId, NodeId) {}
    void light(NodeId, std::uint32_t, NodeId) {}
    void gap(NodeId) {}
  };

  // Contracted heavy forest for one side.
  struct Side {
    std::vector<NodeId> comp;  // grammar node -> contracted node
    std::vector<NodeId> rep;   // contracted node -> lowest heavy-path member
    WlaIndex wla;
  };

  std::vector<NodeId> topological_order() const {
    const std::size_t n = g_.size();
    std::vector<char> state(n, 0);  // 0 new, 1 open, 2 done
    std::vector<NodeId> order;
    order.reserve(n);
    std::vector<std::pair<NodeId, std::uint32_t>> stack;
    for (NodeId s = 0; s < n; ++s) {
      if (state[s]) continue;
      stack.emplace_back(s, 0);
      state[s] = 1;
      while (!stack.empty()) {
        auto& [v, k] = stack.back();
        const auto& ch = g_.rules[v].children;
        if (k < ch.size()) {
          NodeId c = ch[k++];
          if (c >= n) throw InputError("gapped grammar references unknown rule");
          if (state[c] == 1) throw InputError("gapped grammar contains a cycle");
          if (state[c] == 0) {
            state[c] = 1;
            stack.emplace_back(c, 0);
          }
        } else {
          state[v] = 2;
          order.push_back(v);
          stack.pop_back();
        }
      }
    }
    return order;
  }

  void build_side(const std::vector<std::uint64_t>& d, Side& side) {
    const std::size_t n = g_.size();
    side.comp.assign(n, kNoNode);
    std::vector<NodeId> parent;
    std::vector<std::uint64_t> weight;
    for (NodeId v : order_) {
      NodeId h = heavy_[v];
      if (h != kNoNode && d[v] == d[h]) {
        side.comp[v] = side.comp[h];
        continue;
      }
      NodeId id = static_cast<NodeId>(side.rep.size());
      side.comp[v] = id;
      side.rep.push_back(v);
      parent.push_back(h == kNoNode ? kNoNode : side.comp[h]);
      weight.push_back(h == kNoNode ? 0 : d[v] - d[h]);
    }
    side.wla = WlaIndex(std::move(parent), weight);
  }

  GappedGrammar g_;
  std::vector<std::uint64_t> len_;
  std::vector<NodeId> heavy_;
  std::vector<std::uint32_t> heavy_pos_;
  std::vector<std::uint32_t> hdepth_;
  std::vector<NodeId> heavy_leaf_;
  std::vector<std::uint64_t> dl_;
  std::vector<std::uint64_t> dr_;
  std::vector<NodeId> order_;
  Side left_;
  Side right_;
};

}  // namespace topdict

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "topdict/common.hpp"
#include "topdict/grammar_ra.hpp"
#include "topdict/top_dag.hpp"
#include "topdict/vertical.hpp"
#include "topdict/wla.hpp"

namespace topdict {

// Horizontal top DAG. Its nodes are the horizontal and leaf clusters; the
// children of a horizontal cluster X are hentry(X.left) and hentry(X.right).
// H(C) lists the outgoing edges of top(C) inside C in label order, so the
// characteristic string S(C) (1 at rank positions of edge labels, 0 between,
// indexed from min rank) is a gapped grammar over the same shape.
//
// An H-edge is marked when it goes to the non-spine child. hexit(C, a) is the
// lower end of the lowest marked edge on the H path from C to the leaf with
// label a, or C if there is none.
class HorizontalDag {
 public:
  struct Exit {
    bool found = false;
    NodeId e = kNoNode;       // hexit(C, a) as a top DAG node
    NodeId resume = kNoNode;  // vertical entry of the T-child below the exit edge
    bool reset_extra = false; // true when the resume cluster has no bottom boundary
  };

  HorizontalDag() = default;

  HorizontalDag(const TopDag& dag, const VerticalDag& vd) : dag_(&dag), vd_(&vd) {
    const std::size_t n = dag.size();
    gnode_.assign(n, kNoNode);
    min_rank_.assign(n, 0);
    max_rank_.assign(n, 0);
    GappedGrammar g;
    std::vector<char> is_child(n, 0);
    for (NodeId x = 0; x < n; ++x) {
      const DagNode& d = dag.at(x);
      if (d.kind == ClusterKind::Leaf) {
        gnode_[x] = g.add_terminal(1);
        td_of_.push_back(x);
        spine_slot_.push_back(0);
        min_rank_[x] = max_rank_[x] = rank(d.label);
      } else if (is_horizontal(d.kind)) {
        NodeId a = vd.hentry(d.left), b = vd.hentry(d.right);
        is_child[a] = is_child[b] = 1;
        TOPDICT_CHECK(min_rank_[b] > max_rank_[a], "horizontal merge out of label order");
        gnode_[x] = g.add_rule({gnode_[a], gnode_[b]}, {min_rank_[b] - max_rank_[a] - 1});
        td_of_.push_back(x);
        spine_slot_.push_back(d.kind == ClusterKind::HorizD ? 1 : 0);
        min_rank_[x] = min_rank_[a];
        max_rank_[x] = max_rank_[b];
      }
    }
    // Virtual root over the H-roots; every edge out of it counts as marked.
    std::vector<NodeId> roots;
    for (NodeId x = 0; x < n; ++x)
      if (gnode_[x] != kNoNode && !is_child[x]) roots.push_back(gnode_[x]);
    if (!roots.empty()) {
      virtual_root_ = g.add_rule(roots, std::vector<std::uint64_t>(roots.size() - 1, 0));
      td_of_.push_back(kNoNode);
      spine_slot_.push_back(kNoSlot);
    }
    ga_ = GrammarAccess(std::move(g));
    build_marked_forest();
  }

  static std::uint64_t rank(Symbol a) { return std::uint64_t{a} + 1; }

  bool is_hnode(NodeId x) const { return gnode_[x] != kNoNode; }
  NodeId gnode(NodeId x) const { return gnode_[x]; }
  NodeId td_of(NodeId g) const { return td_of_[g]; }
  NodeId virtual_root() const { return virtual_root_; }
  std::uint64_t min_rank(NodeId x) const { return min_rank_[x]; }
  std::uint64_t max_rank(NodeId x) const { return max_rank_[x]; }
  const GrammarAccess& grammar() const { return ga_; }
  std::size_t stored_links() const { return ga_.stored_links() + marked_.stored_links() + 4 * gnode_.size(); }

  SymbolString characteristic(NodeId x) const { return ga_.grammar().expand(gnode_[x]); }

  // Symbol code of a inside [lo, hi] found with "a <= c" comparisons only, or
  // nothing if a lies outside the range.
  static std::optional<Symbol> locate(Symbol a, Symbol lo, Symbol hi, OpCounters* counters) {
    Symbol l = lo, h = hi + 1;  // smallest c in [l, h) with a <= c, h meaning none
    while (l < h) {
      Symbol mid = l + (h - l) / 2;
      TOPDICT_COUNT(counters, char_comparisons, 1);
      if (a <= mid) h = mid;
      else l = mid + 1;
    }
    if (l == hi + 1) return std::nullopt;
    if (l == lo && lo > 0) {
      TOPDICT_COUNT(counters, char_comparisons, 1);
      if (a <= lo - 1) return std::nullopt;
    }
    return l;
  }

  Exit hexit(NodeId c, Symbol a, OpCounters* counters = nullptr) const {
    TOPDICT_REQUIRE(c < gnode_.size() && is_hnode(c), "hexit needs a horizontal or leaf cluster");
    Exit out;
    auto code = locate(a, static_cast<Symbol>(min_rank_[c] - 1), static_cast<Symbol>(max_rank_[c] - 1), counters);
    if (!code) return out;
    TOPDICT_COUNT(counters, horizontal_accesses, 1);
    MarkedVisitor vis{this, counters};
    Symbol bit = ga_.access_path(gnode_[c], rank(*code) - min_rank_[c], vis, counters);
    if (bit != 1) return out;
    out.found = true;
    if (vis.parent == kNoNode) {
      out.e = c;
      out.resume = vd_->vdesc(c);
      return out;
    }
    const DagNode& z = dag_->at(td_of_[vis.parent]);
    NodeId q0 = vis.slot == 0 ? z.left : z.right;
    out.e = vd_->hentry(q0);
    out.resume = vd_->vdesc(q0);
    out.reset_extra = true;
    return out;
  }

 private:
  static constexpr std::uint32_t kNoSlot = ~std::uint32_t{0};

  bool marked(NodeId g, std::uint32_t k) const { return spine_slot_[g] != k; }

  // Forest of the heavy paths with unmarked heavy edges contracted; the
  // contracted node is represented by its lowest member and weighted by its
  // heavy depth.
  void build_marked_forest() {
    const std::size_t n = ga_.size();
    comp_.assign(n, kNoNode);
    std::vector<NodeId> parent;
    std::vector<std::uint64_t> weight;
    for (NodeId v : ga_.order()) {
      NodeId h = ga_.heavy_child(v);
      if (h != kNoNode && !marked(v, ga_.heavy_position(v))) {
        comp_[v] = comp_[h];
        continue;
      }
      NodeId id = static_cast<NodeId>(froot_.size());
      comp_[v] = id;
      froot_.push_back(v);
      if (h == kNoNode) {
        parent.push_back(kNoNode);
        weight.push_back(0);
      } else {
        parent.push_back(comp_[h]);
        weight.push_back(ga_.hdepth(v) - ga_.hdepth(froot_[comp_[h]]));
      }
    }
    marked_ = WlaIndex(std::move(parent), weight);
  }

  struct MarkedVisitor {
    const HorizontalDag* h;
    OpCounters* counters;
    NodeId parent = kNoNode;  // grammar node above the lowest marked edge so far
    std::uint32_t slot = 0;

    void heavy(NodeId a, NodeId z) {
      if (h->comp_[a] == h->comp_[z]) return;
      NodeId g1 = h->marked_.query(h->comp_[a], h->ga_.hdepth(z) + 1, counters);
      parent = h->froot_[g1];
      slot = h->ga_.heavy_position(parent);
    }
    void light(NodeId z, std::uint32_t k, NodeId) {
      if (h->marked(z, k)) {
        parent = z;
        slot = k;
      }
    }
    void gap(NodeId) {}
  };

  const TopDag* dag_ = nullptr;
  const VerticalDag* vd_ = nullptr;
  std::vector<NodeId> gnode_;
  std::vector<NodeId> td_of_;
  std::vector<std::uint32_t> spine_slot_;
  std::vector<std::uint64_t> min_rank_;
  std::vector<std::uint64_t> max_rank_;
  NodeId virtual_root_ = kNoNode;
  GrammarAccess ga_;
  std::vector<NodeId> comp_;
  std::vector<NodeId> froot_;
  WlaIndex marked_;
};

}  // namespace topdict

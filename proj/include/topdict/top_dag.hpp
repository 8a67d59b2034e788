#pragma once

#include <map>
#include <tuple>
#include <utility>
#include <vector>

#include "topdict/common.hpp"
#include "topdict/fingerprint.hpp"
#include "topdict/top_tree.hpp"

namespace topdict {

struct DagNode : ClusterInfo {
  Fp spine_fp;  // fingerprint of the spine string
};

// Minimal DAG of a top tree: identical subtrees (same kind, label, boundary
// shape and terminal flag, same children) are stored once. Children always
// have smaller ids than their parents.
class TopDag {
 public:
  using Signature = std::tuple<std::uint8_t, Symbol, bool, bool, NodeId, NodeId>;

  static Signature signature_of(const ClusterInfo& c) {
    if (c.kind == ClusterKind::Leaf) return {0, c.label, c.term, c.has_bottom, kNoNode, kNoNode};
    return {static_cast<std::uint8_t>(c.kind), 0, false, false, c.left, c.right};
  }

  static TopDag compress(const TopTree& tt, const FingerprintContext& ctx, std::vector<NodeId>* mapping = nullptr) {
    TopDag dag;
    if (tt.empty()) return dag;
    std::map<Signature, NodeId> index;
    std::vector<NodeId> to_dag(tt.size(), kNoNode);
    // Top tree ids are creation order, so children precede parents.
    for (NodeId id = 0; id < tt.size(); ++id) {
      const Cluster& c = tt.at(id);
      ClusterInfo mapped = c;
      if (c.kind != ClusterKind::Leaf) {
        mapped.left = to_dag[c.left];
        mapped.right = to_dag[c.right];
      }
      auto sig = signature_of(mapped);
      auto it = index.find(sig);
      if (it != index.end()) {
        if (!dag.nodes_[it->second].same_augmentation(mapped))
          throw InternalError("top DAG: identical subtrees with different augmentations");
        to_dag[id] = it->second;
        continue;
      }
      NodeId nid = static_cast<NodeId>(dag.nodes_.size());
      DagNode n;
      static_cast<ClusterInfo&>(n) = mapped;
      n.spine_fp = dag.spine_fingerprint(n, ctx);
      dag.nodes_.push_back(n);
      index.emplace(sig, nid);
      to_dag[id] = nid;
    }
    dag.root_ = to_dag[tt.root()];
    if (mapping) *mapping = std::move(to_dag);
    return dag;
  }

  // Rebuild from a raw node table; recomputes every augmentation and rejects
  // tables whose stored values disagree.
  static TopDag from_table(std::vector<DagNode> table, NodeId root, const FingerprintContext& ctx) {
    TopDag dag;
    if (table.empty()) {
      if (root != kNoNode) throw InputError("root given for an empty node table");
      return dag;
    }
    if (root >= table.size()) throw InputError("root id out of range");
    std::map<Signature, NodeId> index;
    for (NodeId id = 0; id < table.size(); ++id) {
      const DagNode& stored = table[id];
      DagNode n;
      if (stored.kind == ClusterKind::Leaf) {
        static_cast<ClusterInfo&>(n) = make_leaf_info(stored.label, stored.has_bottom, stored.term);
      } else {
        if (stored.left >= id || stored.right >= id) throw InputError("node table is not topologically ordered");
        bool vertical = is_vertical(stored.kind);
        const auto& a = dag.nodes_[stored.left];
        const auto& b = dag.nodes_[stored.right];
        if (vertical && !a.has_bottom) throw InputError("illegal vertical merge in node table");
        if (!vertical && a.has_bottom && b.has_bottom) throw InputError("illegal horizontal merge in node table");
        static_cast<ClusterInfo&>(n) = make_merge_info(vertical, stored.left, a, stored.right, b);
        if (n.kind != stored.kind) throw InputError("merge type inconsistent with children");
      }
      n.spine_fp = dag.spine_fingerprint(n, ctx);
      if (!n.same_augmentation(stored) || !(n.spine_fp == stored.spine_fp))
        throw InputError("node table augmentation mismatch at node " + std::to_string(id));
      if (!index.emplace(signature_of(n), id).second) throw InputError("node table is not minimal");
      dag.nodes_.push_back(n);
    }
    dag.root_ = root;
    return dag;
  }

  bool empty() const { return root_ == kNoNode; }
  NodeId root() const { return root_; }
  std::size_t size() const { return nodes_.size(); }
  const DagNode& at(NodeId id) const { return nodes_[id]; }
  const std::vector<DagNode>& nodes() const { return nodes_; }
  std::uint32_t height() const { return empty() ? 0 : nodes_[root_].height; }

  // Validation helper: lets tests corrupt a node.
  DagNode& mutable_node(NodeId id) { return nodes_[id]; }

 private:
  Fp spine_fingerprint(const ClusterInfo& n, const FingerprintContext& ctx) const {
    switch (n.kind) {
      case ClusterKind::Leaf: return ctx.of_symbol(n.label);
      case ClusterKind::VerticalA: return ctx.compose(nodes_[n.left].spine_fp, nodes_[n.right].spine_fp);
      default: return nodes_[spine_child(n)].spine_fp;
    }
  }

  std::vector<DagNode> nodes_;
  NodeId root_ = kNoNode;
};

// True iff unfolding the DAG from its root reproduces the top tree.
inline bool unfold_check(const TopDag& dag, const TopTree& tt) {
  if (dag.empty() || tt.empty()) return dag.empty() && tt.empty();
  std::vector<std::pair<NodeId, NodeId>> stack{{dag.root(), tt.root()}};
  while (!stack.empty()) {
    auto [d, t] = stack.back();
    stack.pop_back();
    if (d >= dag.size()) return false;
    const DagNode& dn = dag.at(d);
    const Cluster& tc = tt.at(t);
    if (dn.kind != tc.kind || !dn.same_augmentation(tc)) return false;
    if (dn.kind == ClusterKind::Leaf) {
      if (dn.label != tc.label || dn.term != tc.term) return false;
      continue;
    }
    stack.emplace_back(dn.left, tc.left);
    stack.emplace_back(dn.right, tc.right);
  }
  return true;
}

}  // namespace topdict

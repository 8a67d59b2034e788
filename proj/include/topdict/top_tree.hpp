#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "topdict/common.hpp"
#include "topdict/trie.hpp"

namespace topdict {

// Leaf: one trie edge. VerticalA/B stack A over B through A's bottom boundary
// (B with / without a bottom boundary). HorizC/D/E join siblings sharing a top
// boundary (left has bottom / right has bottom / neither has).
enum class ClusterKind : std::uint8_t { Leaf = 0, VerticalA, VerticalB, HorizC, HorizD, HorizE };

inline bool is_vertical(ClusterKind k) { return k == ClusterKind::VerticalA || k == ClusterKind::VerticalB; }
inline bool is_horizontal(ClusterKind k) {
  return k == ClusterKind::HorizC || k == ClusterKind::HorizD || k == ClusterKind::HorizE;
}

inline const char* kind_name(ClusterKind k) {
  switch (k) {
    case ClusterKind::Leaf: return "leaf";
    case ClusterKind::VerticalA: return "a";
    case ClusterKind::VerticalB: return "b";
    case ClusterKind::HorizC: return "c";
    case ClusterKind::HorizD: return "d";
    case ClusterKind::HorizE: return "e";
  }
  return "?";
}

// Structure plus the composable per-cluster augmentations. Shared by top tree
// clusters and top DAG nodes.
struct ClusterInfo {
  ClusterKind kind = ClusterKind::Leaf;
  NodeId left = kNoNode;
  NodeId right = kNoNode;
  Symbol label = 0;         // leaf edge label
  bool term = false;        // leaf only: terminal flag of the edge's lower node
  bool has_bottom = false;

  std::uint64_t spine_len = 0;
  Symbol first_spine_label = 0;
  Symbol rightmost_label = 0;  // edge to the rightmost child of the top boundary
  std::uint64_t size = 0;      // trie edges inside
  std::uint64_t terminals = 0; // terminal nodes inside, top boundary excluded
  bool bottom_terminal = false;
  std::uint32_t height = 0;

  bool same_augmentation(const ClusterInfo& o) const {
    return spine_len == o.spine_len && first_spine_label == o.first_spine_label &&
           rightmost_label == o.rightmost_label && size == o.size && terminals == o.terminals &&
           bottom_terminal == o.bottom_terminal && height == o.height && has_bottom == o.has_bottom;
  }
};

inline ClusterInfo make_leaf_info(Symbol label, bool has_bottom, bool term) {
  ClusterInfo c;
  c.kind = ClusterKind::Leaf;
  c.label = label;
  c.term = term;
  c.has_bottom = has_bottom;
  c.spine_len = 1;
  c.first_spine_label = label;
  c.rightmost_label = label;
  c.size = 1;
  c.terminals = term ? 1 : 0;
  c.bottom_terminal = has_bottom && term;
  return c;
}

// Kind is implied by the children's bottom boundaries.
inline ClusterInfo make_merge_info(bool vertical, NodeId left_id, const ClusterInfo& a, NodeId right_id,
                                   const ClusterInfo& b) {
  ClusterInfo c;
  c.left = left_id;
  c.right = right_id;
  c.size = a.size + b.size;
  c.terminals = a.terminals + b.terminals;
  c.height = 1 + std::max(a.height, b.height);
  if (vertical) {
    TOPDICT_CHECK(a.has_bottom, "vertical merge needs a bottom boundary on the upper cluster");
    c.kind = b.has_bottom ? ClusterKind::VerticalA : ClusterKind::VerticalB;
    c.has_bottom = b.has_bottom;
    c.spine_len = b.has_bottom ? a.spine_len + b.spine_len : a.spine_len;
    c.first_spine_label = a.first_spine_label;
    c.rightmost_label = a.rightmost_label;
    c.bottom_terminal = b.bottom_terminal;
  } else {
    TOPDICT_CHECK(!(a.has_bottom && b.has_bottom), "horizontal merge of two clusters with bottom boundaries");
    c.kind = a.has_bottom ? ClusterKind::HorizC : (b.has_bottom ? ClusterKind::HorizD : ClusterKind::HorizE);
    const ClusterInfo& sp = c.kind == ClusterKind::HorizD ? b : a;
    c.has_bottom = a.has_bottom || b.has_bottom;
    c.spine_len = sp.spine_len;
    c.first_spine_label = sp.first_spine_label;
    c.rightmost_label = b.rightmost_label;
    c.bottom_terminal = sp.bottom_terminal;
  }
  return c;
}

// Child whose spine is a prefix of the cluster's spine: the left child except
// for type (d). For clusters without a bottom boundary the spine is defined by
// the same rule.
inline NodeId spine_child(const ClusterInfo& c) { return c.kind == ClusterKind::HorizD ? c.right : c.left; }

struct Cluster : ClusterInfo {
  NodeId top = kNoNode;
  NodeId bottom = kNoNode;  // kNoNode when there is no bottom boundary
};

class TopTree {
 public:
  // Greedy rounds: pair adjacent siblings left to right (horizontal), then pair
  // consecutive edges down unary chains (vertical).
  static TopTree build(const Trie& trie) {
    TopTree tt;
    if (trie.num_edges() == 0) return tt;

    struct Slot {
      NodeId cluster;
      NodeId node;
    };
    std::vector<std::vector<Slot>> kids(trie.size());
    for (NodeId v = 0; v < trie.size(); ++v) {
      for (const auto& e : trie.node(v).children) {
        const auto& w = trie.node(e.child);
        bool has_bottom = !w.children.empty();
        Cluster c;
        static_cast<ClusterInfo&>(c) = make_leaf_info(e.label, has_bottom, w.terminal);
        c.top = v;
        c.bottom = has_bottom ? e.child : kNoNode;
        kids[v].push_back({tt.add(std::move(c)), e.child});
      }
    }

    std::size_t edges = trie.num_edges();
    tt.round_sizes_.push_back(edges);
    std::vector<char> used;
    while (edges > 1) {
      std::size_t before = edges;
      for (NodeId v = 0; v < trie.size(); ++v) {
        auto& ch = kids[v];
        if (ch.size() < 2) continue;
        std::vector<Slot> next;
        next.reserve((ch.size() + 1) / 2);
        for (std::size_t j = 0; j < ch.size();) {
          if (j + 1 < ch.size() && !(tt.at(ch[j].cluster).has_bottom && tt.at(ch[j + 1].cluster).has_bottom)) {
            NodeId id = tt.merge(false, ch[j].cluster, ch[j + 1].cluster);
            next.push_back({id, tt.at(ch[j].cluster).has_bottom ? ch[j].node : ch[j + 1].node});
            --edges;
            j += 2;
          } else {
            next.push_back(ch[j]);
            ++j;
          }
        }
        ch = std::move(next);
      }

      used.assign(tt.clusters_.size() + edges, 0);
      std::vector<NodeId> stack{trie.root()};
      while (!stack.empty()) {
        NodeId u = stack.back();
        stack.pop_back();
        for (auto& slot : kids[u]) {
          NodeId v = slot.node;
          if (!used[slot.cluster] && kids[v].size() == 1 && !used[kids[v][0].cluster]) {
            Slot lower = kids[v][0];
            NodeId id = tt.merge(true, slot.cluster, lower.cluster);
            if (used.size() <= id) used.resize(id + 1, 0);
            used[id] = 1;
            slot = {id, lower.node};
            kids[v].clear();
            --edges;
          }
        }
        for (auto it = kids[u].rbegin(); it != kids[u].rend(); ++it) stack.push_back(it->node);
      }
      tt.round_sizes_.push_back(edges);
      if (8 * (before - edges) < before)
        throw InternalError("top tree round reduced clusters from " + std::to_string(before) + " to " +
                            std::to_string(edges));
    }
    TOPDICT_CHECK(kids[trie.root()].size() == 1, "top tree construction did not converge");
    tt.root_ = kids[trie.root()][0].cluster;
    return tt;
  }

  bool empty() const { return root_ == kNoNode; }
  NodeId root() const { return root_; }
  std::size_t size() const { return clusters_.size(); }
  const Cluster& at(NodeId id) const { return clusters_[id]; }
  const std::vector<Cluster>& clusters() const { return clusters_; }
  std::uint32_t height() const { return empty() ? 0 : clusters_[root_].height; }
  // Cluster count before the first round and after each round.
  const std::vector<std::size_t>& round_sizes() const { return round_sizes_; }

  std::size_t num_leaves() const {
    return static_cast<std::size_t>(
        std::count_if(clusters_.begin(), clusters_.end(), [](const Cluster& c) { return c.kind == ClusterKind::Leaf; }));
  }

 private:
  NodeId add(Cluster c) {
    clusters_.push_back(std::move(c));
    return static_cast<NodeId>(clusters_.size() - 1);
  }

  NodeId merge(bool vertical, NodeId a, NodeId b) {
    const Cluster& ca = clusters_[a];
    const Cluster& cb = clusters_[b];
    Cluster c;
    static_cast<ClusterInfo&>(c) = make_merge_info(vertical, a, ca, b, cb);
    c.top = ca.top;
    if (vertical) {
      TOPDICT_CHECK(ca.bottom == cb.top, "vertical merge across non-shared boundary");
      c.bottom = cb.bottom;
    } else {
      TOPDICT_CHECK(ca.top == cb.top, "horizontal merge of clusters with different tops");
      c.bottom = ca.has_bottom ? ca.bottom : cb.bottom;
    }
    return add(std::move(c));
  }

  std::vector<Cluster> clusters_;
  NodeId root_ = kNoNode;
  std::vector<std::size_t> round_sizes_;
};

// Spine label string of a cluster with a bottom boundary, by full decompression.
template <class Structure>
SymbolString spine_of(const Structure& s, NodeId id) {
  TOPDICT_REQUIRE(s.at(id).has_bottom, "spine_of needs a cluster with a bottom boundary");
  SymbolString out;
  std::vector<NodeId> stack{id};
  while (!stack.empty()) {
    NodeId c = stack.back();
    stack.pop_back();
    const auto& info = s.at(c);
    switch (info.kind) {
      case ClusterKind::Leaf: out.push_back(info.label); break;
      case ClusterKind::VerticalA:
        stack.push_back(info.right);
        stack.push_back(info.left);
        break;
      default: stack.push_back(spine_child(info)); break;
    }
  }
  return out;
}

}  // namespace topdict

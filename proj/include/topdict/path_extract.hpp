#pragma once

#include <cstdint>
#include <vector>

#include "topdict/common.hpp"

namespace topdict {

// Top-down root-to-node path extraction with O(1) work per reported node.
//
// Nodes with depth <= height form the top part; every leaf of the top part
// stores its root-to-leaf path explicitly, and every other top node links to
// its leftmost top leaf, whose list starts with the node's own root path. A
// node below the top part points to its nearest top ancestor u; extraction
// replays u's root path while climbing parent pointers from the query node to
// u, one step per reported entry, and then drains that stack. Since the part
// below u has height < depth(u) + 1, the climb always finishes in time. The
// stored lists have total length at most n.
//
// Works on forests: each tree is handled independently.
class PathExtractIndex {
 public:
  PathExtractIndex() = default;

  explicit PathExtractIndex(std::vector<NodeId> parent) : parent_(std::move(parent)) {
    const std::size_t n = parent_.size();
    depth_.assign(n, 0);
    height_.assign(n, 0);
    in_top_.assign(n, 0);
    link_.assign(n, kNoNode);
    list_begin_.assign(n, 0);

    std::vector<std::vector<NodeId>> kids(n);
    std::vector<NodeId> order;
    order.reserve(n);
    for (NodeId v = 0; v < n; ++v) {
      if (parent_[v] == kNoNode) {
        order.push_back(v);
      } else {
        TOPDICT_REQUIRE(parent_[v] < n, "parent id out of range");
        kids[parent_[v]].push_back(v);
      }
    }
    for (std::size_t k = 0; k < order.size(); ++k)
      for (NodeId c : kids[order[k]]) {
        depth_[c] = depth_[order[k]] + 1;
        order.push_back(c);
      }
    TOPDICT_REQUIRE(order.size() == n, "parent array is not a forest");
    for (std::size_t k = n; k-- > 0;) {
      NodeId v = order[k];
      if (parent_[v] != kNoNode) height_[parent_[v]] = std::max(height_[parent_[v]], height_[v] + 1);
    }
    for (NodeId v = 0; v < n; ++v) in_top_[v] = depth_[v] <= height_[v];

    // Leaf links for the top part (leftmost top leaf), computed bottom-up.
    for (std::size_t k = n; k-- > 0;) {
      NodeId v = order[k];
      if (!in_top_[v]) continue;
      NodeId first_top_child = kNoNode;
      for (NodeId c : kids[v])
        if (in_top_[c]) {
          first_top_child = c;
          break;
        }
      link_[v] = first_top_child == kNoNode ? v : link_[first_top_child];
    }
    for (NodeId v : order) {
      if (in_top_[v]) {
        if (link_[v] == v) {
          list_begin_[v] = static_cast<std::uint32_t>(lists_.size());
          std::size_t start = lists_.size();
          lists_.resize(start + depth_[v] + 1);
          for (NodeId w = v, k = depth_[v];; w = parent_[w], --k) {
            lists_[start + k] = w;
            if (k == 0) break;
          }
        }
      } else {
        NodeId p = parent_[v];
        link_[v] = in_top_[p] ? p : link_[p];  // nearest top ancestor
      }
    }
  }

  std::size_t size() const { return parent_.size(); }
  NodeId parent(NodeId v) const { return parent_[v]; }
  std::uint32_t depth(NodeId v) const { return depth_[v]; }
  std::uint32_t height(NodeId v) const { return height_[v]; }
  bool in_top(NodeId v) const { return in_top_[v]; }
  // Top node: its leftmost top-part leaf. Other nodes: nearest top ancestor.
  NodeId top_link(NodeId v) const { return link_[v]; }
  std::size_t stored_list_total() const { return lists_.size(); }

  class Stream {
   public:
    Stream() = default;

    // Next node on the root-to-target path, or kNoNode when finished.
    NodeId next() {
      if (pos_ < list_len_) {
        NodeId out = idx_->lists_[list_start_ + pos_++];
        ++work_;
        if (walker_ != anchor_) {
          stack_.push_back(walker_);
          walker_ = idx_->parent_[walker_];
          ++work_;
        }
        if (pos_ == list_len_ && walker_ != anchor_) throw InternalError("path extraction stack underfilled");
        return out;
      }
      if (!stack_.empty()) {
        NodeId out = stack_.back();
        stack_.pop_back();
        ++work_;
        return out;
      }
      return kNoNode;
    }

    bool done() const { return pos_ >= list_len_ && stack_.empty(); }
    std::uint64_t work() const { return work_; }
    std::size_t stack_size() const { return stack_.size(); }

   private:
    friend class PathExtractIndex;
    const PathExtractIndex* idx_ = nullptr;
    std::uint32_t list_start_ = 0;
    std::uint32_t list_len_ = 0;
    std::uint32_t pos_ = 0;
    NodeId walker_ = kNoNode;
    NodeId anchor_ = kNoNode;
    std::vector<NodeId> stack_;
    std::uint64_t work_ = 0;
  };

  Stream extract(NodeId v) const {
    TOPDICT_REQUIRE(v < parent_.size(), "path extraction from unknown node");
    Stream s;
    s.idx_ = this;
    if (in_top_[v]) {
      NodeId leaf = link_[v];
      s.list_start_ = list_begin_[leaf];
      s.list_len_ = depth_[v] + 1;
      s.walker_ = s.anchor_ = kNoNode;
    } else {
      NodeId u = link_[v];
      s.list_start_ = list_begin_[link_[u]];
      s.list_len_ = depth_[u] + 1;
      s.walker_ = v;
      s.anchor_ = u;
      s.stack_.reserve(depth_[v] - depth_[u]);
    }
    return s;
  }

 private:
  std::vector<NodeId> parent_;
  std::vector<std::uint32_t> depth_;
  std::vector<std::uint32_t> height_;
  std::vector<char> in_top_;
  std::vector<NodeId> link_;
  std::vector<std::uint32_t> list_begin_;
  std::vector<NodeId> lists_;
};

}  // namespace topdict

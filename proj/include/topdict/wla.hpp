#pragma once

#include <cstdint>
#include <vector>

#include "topdict/common.hpp"

namespace topdict {

// Weighted level ancestor queries on a forest with positive integer edge
// weights. For a non-root u and 1 <= x <= d(u), query(u, x) returns the
// ancestor v of u with d(v) >= x > d(parent(v)).
//
// Nodes are first split into slices by floor(log2 d). Inside a slice
// component the tree is split recursively at half its remaining depth range;
// every node stores check/top/bottom links only at the single recursion level
// where it is a leaf of the bottom part. All comparisons use absolute
// distances, so no offsets are stored.
class WlaIndex {
 public:
  WlaIndex() = default;

  // weight[v] is the weight of the edge (parent[v], v); ignored for roots.
  WlaIndex(std::vector<NodeId> parent, const std::vector<std::uint64_t>& weight) : parent_(std::move(parent)) {
    const std::size_t n = parent_.size();
    TOPDICT_REQUIRE(weight.size() == n, "weight array size mismatch");
    dist_.assign(n, 0);
    slice_.assign(n, -1);
    qlink_.assign(n, kNoNode);
    next_.assign(n, kNoNode);
    check_.assign(n, kNoNode);
    top_.assign(n, kNoNode);
    bottom_.assign(n, kNoNode);

    // Children in CSR form, order preserved.
    std::vector<std::uint32_t> deg(n + 1, 0);
    for (NodeId v = 0; v < n; ++v)
      if (parent_[v] != kNoNode) {
        TOPDICT_REQUIRE(parent_[v] < n, "parent id out of range");
        ++deg[parent_[v] + 1];
      }
    for (std::size_t k = 0; k < n; ++k) deg[k + 1] += deg[k];
    child_begin_ = deg;
    children_.assign(n, 0);
    {
      std::vector<std::uint32_t> fill(deg.begin(), deg.end() - 1);
      for (NodeId v = 0; v < n; ++v)
        if (parent_[v] != kNoNode) children_[fill[parent_[v]]++] = v;
    }

    std::vector<NodeId> order;
    order.reserve(n);
    for (NodeId v = 0; v < n; ++v)
      if (parent_[v] == kNoNode) order.push_back(v);
    for (std::size_t k = 0; k < order.size(); ++k) {
      NodeId v = order[k];
      for (std::uint32_t j = child_begin_[v]; j < child_begin_[v + 1]; ++j) {
        NodeId c = children_[j];
        if (weight[c] == 0) throw InputError("weighted level ancestor: edge weights must be positive");
        dist_[c] = dist_[v] + weight[c];
        slice_[c] = static_cast<int>(floor_log2(dist_[c]));
        order.push_back(c);
      }
    }
    TOPDICT_REQUIRE(order.size() == n, "parent array is not a forest");

    // Slice components: next = component root, qlink = leftmost deepest
    // component leaf below.
    for (NodeId v : order) {
      if (parent_[v] == kNoNode) continue;
      NodeId p = parent_[v];
      next_[v] = (parent_[p] != kNoNode && slice_[p] == slice_[v]) ? next_[p] : v;
    }
    for (std::size_t k = n; k-- > 0;) {
      NodeId v = order[k];
      if (parent_[v] == kNoNode) continue;
      NodeId best = v;
      for (std::uint32_t j = child_begin_[v]; j < child_begin_[v + 1]; ++j) {
        NodeId c = children_[j];
        if (slice_[c] != slice_[v]) continue;
        NodeId cand = qlink_[c];
        if (best == v || dist_[cand] > dist_[best]) best = cand;
      }
      qlink_[v] = best;
    }

    // Recursive decomposition of each slice component.
    std::vector<Task> tasks;
    for (NodeId v : order) {
      if (parent_[v] == kNoNode || next_[v] != v) continue;
      Task t;
      t.level = slice_[v];
      t.nodes.push_back(v);
      tasks.push_back(std::move(t));
    }
    // Gather component members in BFS order.
    {
      std::vector<std::uint32_t> task_of(n, 0);
      for (std::uint32_t k = 0; k < tasks.size(); ++k) task_of[tasks[k].nodes[0]] = k;
      for (NodeId v : order) {
        if (parent_[v] == kNoNode || next_[v] == v) continue;
        tasks[task_of[next_[v]]].nodes.push_back(v);
      }
    }
    std::vector<std::uint32_t> kids(n, 0);
    std::vector<NodeId> link(n, kNoNode);
    std::vector<NodeId> croot(n, kNoNode);
    std::vector<char> in_top(n, 0);
    std::vector<std::uint32_t> btask(n, 0);
    while (!tasks.empty()) {
      Task t = std::move(tasks.back());
      tasks.pop_back();
      if (t.nodes.size() <= 1) continue;
      const NodeId root = t.nodes[0];
      const std::uint64_t base = dist_[root];
      const std::uint64_t thr = t.level <= 0 ? 0 : (std::uint64_t{1} << (t.level - 1));
      if (t.level < 0) throw InternalError("weighted level ancestor recursion below level 0");
      for (NodeId v : t.nodes) {
        kids[v] = 0;
        link[v] = kNoNode;
        if (dist_[v] - base > (std::uint64_t{1} << t.level))
          throw InternalError("weighted level ancestor depth bound violated");
      }
      for (std::size_t k = 1; k < t.nodes.size(); ++k) ++kids[parent_[t.nodes[k]]];
      for (NodeId v : t.nodes) in_top[v] = dist_[v] - base <= thr;
      for (NodeId v : t.nodes) {
        if (in_top[v]) continue;
        NodeId p = parent_[v];
        croot[v] = in_top[p] ? v : croot[p];
      }
      // Leftmost leaf links inside T_top and inside T_bottom minus its leaves.
      for (std::size_t k = t.nodes.size(); k-- > 0;) {
        NodeId v = t.nodes[k];
        bool bottom_leaf = !in_top[v] && kids[v] == 0;
        if (bottom_leaf) continue;
        if (link[v] == kNoNode) link[v] = v;
        if (k == 0) continue;
        NodeId p = parent_[v];
        if (in_top[p] == in_top[v]) link[p] = link[v];
      }
      Task top_task;
      top_task.level = t.level - 1;
      std::vector<Task> bottom_tasks;
      for (NodeId v : t.nodes) {
        if (in_top[v]) {
          top_task.nodes.push_back(v);
          continue;
        }
        if (kids[v] == 0) {
          check_[v] = croot[v];
          top_[v] = link[parent_[croot[v]]];
          NodeId p = parent_[v];
          bottom_[v] = in_top[p] ? kNoNode : link[p];
          stored_ += 3;
          continue;
        }
        if (croot[v] == v) {
          btask[v] = static_cast<std::uint32_t>(bottom_tasks.size());
          bottom_tasks.emplace_back();
          bottom_tasks.back().level = t.level - 1;
        }
        bottom_tasks[btask[croot[v]]].nodes.push_back(v);
      }
      tasks.push_back(std::move(top_task));
      for (auto& b : bottom_tasks) tasks.push_back(std::move(b));
    }
  }

  std::size_t size() const { return parent_.size(); }
  NodeId parent(NodeId v) const { return parent_[v]; }
  std::uint64_t dist(NodeId v) const { return dist_[v]; }
  // Number of stored check/top/bottom/next/query links.
  std::size_t stored_links() const { return stored_ + 2 * parent_.size(); }

  NodeId query(NodeId u, std::uint64_t x, OpCounters* counters = nullptr) const {
    TOPDICT_REQUIRE(u < parent_.size() && parent_[u] != kNoNode, "weighted level ancestor query on a root");
    TOPDICT_REQUIRE(x >= 1 && x <= dist_[u], "weighted level ancestor target out of range");
    TOPDICT_COUNT(counters, wla_queries, 1);
    std::uint64_t work = 0;
    NodeId result = kNoNode;
    // Slice level.
    for (;;) {
      ++work;
      u = qlink_[u];
      NodeId r = next_[u];
      NodeId p = parent_[r];
      if (x <= dist_[p]) {
        u = p;
        continue;
      }
      if (x <= dist_[r]) result = r;
      break;
    }
    // Recursive levels.
    while (result == kNoNode) {
      ++work;
      NodeId c = check_[u];
      if (c == kNoNode) throw InternalError("weighted level ancestor: missing links");
      if (x <= dist_[parent_[c]]) {
        u = top_[u];
      } else if (x <= dist_[c]) {
        result = c;
      } else if (x > dist_[parent_[u]]) {
        result = u;
      } else {
        u = bottom_[u];
      }
      if (u == kNoNode) throw InternalError("weighted level ancestor: dangling link");
    }
    TOPDICT_COUNT(counters, wla_work, work);
    return result;
  }

 private:
  struct Task {
    int level = 0;
    std::vector<NodeId> nodes;  // root first, parents before children
  };

  std::vector<NodeId> parent_;
  std::vector<std::uint64_t> dist_;
  std::vector<int> slice_;
  std::vector<std::uint32_t> child_begin_;
  std::vector<NodeId> children_;
  std::vector<NodeId> qlink_;
  std::vector<NodeId> next_;
  std::vector<NodeId> check_;
  std::vector<NodeId> top_;
  std::vector<NodeId> bottom_;
  std::size_t stored_ = 0;
};

}  // namespace topdict

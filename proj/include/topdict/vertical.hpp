#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "topdict/common.hpp"
#include "topdict/path_extract.hpp"
#include "topdict/top_dag.hpp"

namespace topdict {

// Vertical top DAG over a top DAG. Node ids are top DAG ids; the vertical
// nodes are the vertical clusters and the leaf clusters. A type (a) node V has
// children vdesc(V.left), vdesc(V.right); a type (b) node has the single child
// vdesc(V.left); vdesc(X) follows spine children down to the first vertical or
// leaf cluster. Leaves of V(C) read left to right spell spine(C).
//
// Count bookkeeping: "extra" of a cluster on the search path is the number of
// terminals strictly below its bottom boundary. Moving from a vertical node X
// to its left child adds terminals(X.right); moving right keeps it.
class VerticalDag {
 public:
  VerticalDag() = default;

  explicit VerticalDag(const TopDag& dag) : dag_(&dag) {
    const std::size_t n = dag.size();
    vdesc_.assign(n, kNoNode);
    vleft_.assign(n, kNoNode);
    vright_.assign(n, kNoNode);
    w_.assign(n, 0);
    lterm_.assign(n, 0);
    hentry_.assign(n, kNoNode);
    hentry_sum_.assign(n, 0);
    std::vector<NodeId> lparent(n, kNoNode);
    for (NodeId x = 0; x < n; ++x) {
      const DagNode& d = dag.at(x);
      switch (d.kind) {
        case ClusterKind::Leaf:
          vdesc_[x] = x;
          lterm_[x] = d.term;
          hentry_[x] = x;
          break;
        case ClusterKind::VerticalA:
        case ClusterKind::VerticalB: {
          vdesc_[x] = x;
          vleft_[x] = vdesc_[d.left];
          if (d.kind == ClusterKind::VerticalA) vright_[x] = vdesc_[d.right];
          const std::uint64_t below = dag.at(d.right).terminals;
          w_[x] = below + w_[vleft_[x]];
          lterm_[x] = lterm_[vleft_[x]];
          lparent[x] = vleft_[x];
          const DagNode& a = dag.at(d.left);
          if (is_vertical(a.kind)) {
            hentry_[x] = hentry_[d.left];
            hentry_sum_[x] = below + hentry_sum_[d.left];
          } else {
            hentry_[x] = d.left;
            hentry_sum_[x] = below;
          }
          break;
        }
        default:
          vdesc_[x] = vdesc_[spine_child(d)];
          hentry_[x] = x;
          break;
      }
    }
    left_paths_ = PathExtractIndex(std::move(lparent));
  }

  const TopDag& dag() const { return *dag_; }
  std::size_t size() const { return vdesc_.size(); }
  bool is_vertical_node(NodeId x) const { return vdesc_[x] == x; }
  NodeId vdesc(NodeId x) const { return vdesc_[x]; }
  NodeId vleft(NodeId x) const { return vleft_[x]; }
  NodeId vright(NodeId x) const { return vright_[x]; }
  Symbol first_label(NodeId x) const { return dag_->at(x).first_spine_label; }
  // Terminals hanging off the left path of x, i.e. extra(leftmost leaf) - extra(x).
  std::uint64_t w(NodeId x) const { return w_[x]; }
  // Terminal flag of the lower end of the first spine edge.
  bool lterm(NodeId x) const { return lterm_[x]; }
  // Highest horizontal or leaf cluster on the leftmost path (x itself unless x is vertical).
  NodeId hentry(NodeId x) const { return hentry_[x]; }
  std::uint64_t hentry_sum(NodeId x) const { return hentry_sum_[x]; }
  const PathExtractIndex& left_paths() const { return left_paths_; }

 private:
  const TopDag* dag_ = nullptr;
  std::vector<NodeId> vdesc_;
  std::vector<NodeId> vleft_;
  std::vector<NodeId> vright_;
  std::vector<std::uint64_t> w_;
  std::vector<char> lterm_;
  std::vector<NodeId> hentry_;
  std::vector<std::uint64_t> hentry_sum_;
  PathExtractIndex left_paths_;
};

// Spine extraction by a stack-based depth-first walk of V(C). The first
// character is the stored label of C; each later character is the first label
// of the next right child met by the walk. Work per extraction of l characters
// is O(l + height(C) - height(vexit)).
class DfsSpineCursor {
 public:
  DfsSpineCursor(const VerticalDag& vd, NodeId c, std::uint64_t extra_c) : vd_(&vd) {
    TOPDICT_REQUIRE(vd.is_vertical_node(c), "spine extraction needs a vertical or leaf cluster");
    pending_ = c;
    pending_extra_ = extra_c;
  }

  // Next spine character; false once the spine is exhausted.
  bool next(Symbol& out) {
    if (emitted_ == 0) {
      ++work_;
      last_ = vexit_ = pending_;
      last_extra_ = vexit_extra_ = pending_extra_;
      out = vd_->first_label(last_);
      ++emitted_;
      return true;
    }
    if (pending_ != kNoNode) {
      // Descend the left path of the pending node; its first label is already out.
      NodeId x = pending_;
      std::uint64_t extra = pending_extra_;
      const TopDag& dag = vd_->dag();
      while (dag.at(x).kind != ClusterKind::Leaf) {
        ++work_;
        if (dag.at(x).kind == ClusterKind::VerticalA) stack_.push_back({x, extra});
        extra += dag.at(dag.at(x).right).terminals;
        x = vd_->vleft(x);
      }
      pending_ = kNoNode;
    }
    if (stack_.empty()) return false;
    ++work_;
    Frame f = stack_.back();
    stack_.pop_back();
    vexit_ = f.node;
    vexit_extra_ = f.extra;
    last_ = pending_ = vd_->vright(f.node);
    last_extra_ = pending_extra_ = f.extra;
    out = vd_->first_label(last_);
    ++emitted_;
    return true;
  }

  NodeId vexit() const { return vexit_; }
  std::uint64_t vexit_extra() const { return vexit_extra_; }
  NodeId last() const { return last_; }
  std::uint64_t last_extra() const { return last_extra_; }
  std::size_t emitted() const { return emitted_; }
  std::uint64_t work() const { return work_; }
  std::size_t stack_size() const { return stack_.size(); }

 private:
  struct Frame {
    NodeId node;
    std::uint64_t extra;
  };
  const VerticalDag* vd_;
  std::vector<Frame> stack_;
  NodeId pending_ = kNoNode;
  std::uint64_t pending_extra_ = 0;
  NodeId vexit_ = kNoNode;
  std::uint64_t vexit_extra_ = 0;
  NodeId last_ = kNoNode;
  std::uint64_t last_extra_ = 0;
  std::size_t emitted_ = 0;
  std::uint64_t work_ = 0;
};

// Spine extraction with O(1) work per character. Left paths of the vertical
// DAG are root-to-node paths in the left-path suffix forest; each unexplored
// right child opens a path extraction stream that yields its leftmost leaf
// first and then climbs the left path, one node per request.
class FastSpineCursor {
 public:
  FastSpineCursor(const VerticalDag& vd, NodeId c, std::uint64_t extra_c) : vd_(&vd) {
    TOPDICT_REQUIRE(vd.is_vertical_node(c), "spine extraction needs a vertical or leaf cluster");
    pending_ = c;
    pending_extra_ = extra_c;
  }

  bool next(Symbol& out) {
    if (emitted_ == 0) {
      ++work_;
      last_ = vexit_ = pending_;
      last_extra_ = vexit_extra_ = pending_extra_;
      out = vd_->first_label(last_);
      ++emitted_;
      return true;
    }
    if (pending_ != kNoNode) {
      Open o{vd_->left_paths().extract(pending_), pending_, pending_extra_};
      o.stream.next();  // leftmost leaf, already reported
      streams_.push_back(std::move(o));
      pending_ = kNoNode;
    }
    while (!streams_.empty()) {
      Open& top = streams_.back();
      NodeId y = top.stream.next();
      if (y == kNoNode) {
        work_ += top.stream.work() + 1;
        streams_.pop_back();
        continue;
      }
      if (vd_->vright(y) == kNoNode) continue;  // type (b) root
      vexit_ = y;
      vexit_extra_ = top.extra + vd_->w(top.node) - vd_->w(y);
      last_ = pending_ = vd_->vright(y);
      last_extra_ = pending_extra_ = vexit_extra_;
      out = vd_->first_label(last_);
      ++emitted_;
      return true;
    }
    return false;
  }

  NodeId vexit() const { return vexit_; }
  std::uint64_t vexit_extra() const { return vexit_extra_; }
  NodeId last() const { return last_; }
  std::uint64_t last_extra() const { return last_extra_; }
  std::size_t emitted() const { return emitted_; }
  std::uint64_t work() const {
    std::uint64_t w = work_;
    for (const auto& o : streams_) w += o.stream.work();
    return w;
  }
  std::size_t stack_size() const {
    std::size_t s = streams_.size();
    for (const auto& o : streams_) s += o.stream.stack_size();
    return s;
  }

 private:
  struct Open {
    PathExtractIndex::Stream stream;
    NodeId node;
    std::uint64_t extra;
  };
  const VerticalDag* vd_;
  std::vector<Open> streams_;
  NodeId pending_ = kNoNode;
  std::uint64_t pending_extra_ = 0;
  NodeId vexit_ = kNoNode;
  std::uint64_t vexit_extra_ = 0;
  NodeId last_ = kNoNode;
  std::uint64_t last_extra_ = 0;
  std::size_t emitted_ = 0;
  std::uint64_t work_ = 0;
};

struct LcpResult {
  std::size_t len = 0;         // longest common prefix length
  bool mismatch = false;       // stopped on a differing character
  bool exhausted = false;      // whole spine matched and s continues
  NodeId vexit = kNoNode;      // vexit(C, len + 1) on mismatch
  std::uint64_t vexit_extra = 0;
  NodeId last = kNoNode;       // node whose first label was character len
  std::uint64_t last_extra = 0;
};

// Longest common prefix of spine(C) and s, one equality comparison per
// extracted character.
template <class Cursor>
LcpResult lcp_spine(Cursor& cur, std::span<const Symbol> s, OpCounters* counters = nullptr) {
  LcpResult r;
  std::uint64_t work_before = cur.work();
  TOPDICT_COUNT(counters, spine_extractions, 1);
  while (r.len < s.size()) {
    Symbol x;
    if (!cur.next(x)) {
      r.exhausted = true;
      break;
    }
    TOPDICT_COUNT(counters, spine_chars, 1);
    TOPDICT_COUNT(counters, char_comparisons, 1);
    if (x != s[r.len]) {
      r.mismatch = true;
      r.vexit = cur.vexit();
      r.vexit_extra = cur.vexit_extra();
      break;
    }
    ++r.len;
    r.last = cur.last();
    r.last_extra = cur.last_extra();
  }
  TOPDICT_COUNT(counters, spine_work, cur.work() - work_before);
  return r;
}

}  // namespace topdict

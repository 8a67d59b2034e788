#pragma once

#include <algorithm>
#include <map>
#include <tuple>
#include <utility>
#include <vector>

#include "topdict/common.hpp"

namespace topdict {

struct LocusResult {
  std::size_t matched_len = 0;
  bool is_prefix = false;
  // Trie node id for the oracle; engine-specific cluster id otherwise.
  NodeId locus = kNoNode;

  friend bool operator==(const LocusResult& a, const LocusResult& b) {
    return a.matched_len == b.matched_len && a.is_prefix == b.is_prefix;
  }
};

struct TrieEdge {
  Symbol label;
  NodeId child;
};

class Trie {
 public:
  struct Node {
    std::vector<TrieEdge> children;  // strictly increasing labels
    NodeId parent = kNoNode;
    Symbol parent_label = 0;
    bool terminal = false;
  };

  // sigma == 0 derives the alphabet size from the corpus.
  static Trie build(std::vector<SymbolString> strings, std::size_t sigma = 0) {
    std::size_t max_code = 0;
    bool any_symbol = false;
    for (const auto& s : strings)
      for (Symbol x : s) {
        any_symbol = true;
        max_code = std::max<std::size_t>(max_code, x);
      }
    if (sigma == 0) sigma = any_symbol ? max_code + 1 : 1;
    if (any_symbol && max_code >= sigma)
      throw InputError("symbol " + std::to_string(max_code) + " outside alphabet of size " +
                       std::to_string(sigma));

    std::sort(strings.begin(), strings.end());
    strings.erase(std::unique(strings.begin(), strings.end()), strings.end());

    Trie t;
    t.sigma_ = sigma;
    t.nodes_.emplace_back();
    // Sorted insertion appends children in label order and yields preorder ids.
    for (const auto& s : strings) {
      t.total_len_ += s.size();
      NodeId v = 0;
      for (Symbol x : s) {
        auto& ch = t.nodes_[v].children;
        if (!ch.empty() && ch.back().label == x) {
          v = ch.back().child;
          continue;
        }
        NodeId w = static_cast<NodeId>(t.nodes_.size());
        t.nodes_[v].children.push_back({x, w});
        Node n;
        n.parent = v;
        n.parent_label = x;
        t.nodes_.push_back(std::move(n));
        v = w;
      }
      t.nodes_[v].terminal = true;
    }
    t.num_strings_ = strings.size();
    return t;
  }

  NodeId root() const { return 0; }
  std::size_t size() const { return nodes_.size(); }
  std::size_t num_edges() const { return nodes_.size() - 1; }
  std::size_t sigma() const { return sigma_; }
  std::size_t total_length() const { return total_len_; }
  std::size_t num_strings() const { return num_strings_; }
  const Node& node(NodeId v) const { return nodes_[v]; }
  const std::vector<Node>& nodes() const { return nodes_; }

  // Child of v by label, or kNoNode.
  NodeId child(NodeId v, Symbol label) const {
    const auto& ch = nodes_[v].children;
    auto it = std::lower_bound(ch.begin(), ch.end(), label,
                               [](const TrieEdge& e, Symbol x) { return e.label < x; });
    if (it == ch.end() || it->label != label) return kNoNode;
    return it->child;
  }

  // Top-down traversal, one symbol per step.
  LocusResult longest_prefix(const SymbolString& pattern) const {
    NodeId v = root();
    std::size_t i = 0;
    for (; i < pattern.size(); ++i) {
      NodeId w = child(v, pattern[i]);
      if (w == kNoNode) break;
      v = w;
    }
    return {i, i == pattern.size(), v};
  }

  std::size_t count(const SymbolString& pattern) const {
    LocusResult r = longest_prefix(pattern);
    if (!r.is_prefix) return 0;
    return terminals_below(r.locus);
  }

  // Suffixes below the locus of pattern, in lexicographic order.
  std::vector<SymbolString> report(const SymbolString& pattern) const {
    std::vector<SymbolString> out;
    LocusResult r = longest_prefix(pattern);
    if (!r.is_prefix) return out;
    SymbolString cur;
    collect(r.locus, cur, out);
    return out;
  }

  std::size_t terminals_below(NodeId v) const {
    std::size_t total = 0;
    std::vector<NodeId> stack{v};
    while (!stack.empty()) {
      NodeId u = stack.back();
      stack.pop_back();
      if (nodes_[u].terminal) ++total;
      for (const auto& e : nodes_[u].children) stack.push_back(e.child);
    }
    return total;
  }

  // Label string from the root to v.
  SymbolString path_label(NodeId v) const {
    SymbolString s;
    for (; v != root(); v = nodes_[v].parent) s.push_back(nodes_[v].parent_label);
    std::reverse(s.begin(), s.end());
    return s;
  }

  // Node count of the minimal DAG that shares identical complete subtrees
  // (labels and terminal flags included).
  std::size_t minimal_dag_size() const {
    using Sig = std::pair<bool, std::vector<std::pair<Symbol, std::size_t>>>;
    std::map<Sig, std::size_t> ids;
    std::vector<std::size_t> cls(nodes_.size());
    // Preorder ids: children have larger ids than their parent.
    for (std::size_t k = nodes_.size(); k-- > 0;) {
      Sig sig;
      sig.first = nodes_[k].terminal;
      for (const auto& e : nodes_[k].children) sig.second.emplace_back(e.label, cls[e.child]);
      auto [it, inserted] = ids.emplace(std::move(sig), ids.size());
      cls[k] = it->second;
    }
    return ids.size();
  }

  friend bool operator==(const Trie& a, const Trie& b) {
    if (a.nodes_.size() != b.nodes_.size() || a.sigma_ != b.sigma_) return false;
    for (std::size_t k = 0; k < a.nodes_.size(); ++k) {
      const auto& x = a.nodes_[k];
      const auto& y = b.nodes_[k];
      if (x.terminal != y.terminal || x.parent != y.parent || x.children.size() != y.children.size())
        return false;
      for (std::size_t j = 0; j < x.children.size(); ++j)
        if (x.children[j].label != y.children[j].label || x.children[j].child != y.children[j].child)
          return false;
    }
    return true;
  }

 private:
  void collect(NodeId v, SymbolString& cur, std::vector<SymbolString>& out) const {
    if (nodes_[v].terminal) out.push_back(cur);
    for (const auto& e : nodes_[v].children) {
      cur.push_back(e.label);
      collect(e.child, cur, out);
      cur.pop_back();
    }
  }

  std::vector<Node> nodes_;
  std::size_t sigma_ = 1;
  std::size_t total_len_ = 0;
  std::size_t num_strings_ = 0;
};

}  // namespace topdict

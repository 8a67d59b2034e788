#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "topdict/top_dag.hpp"

using namespace topdict;

namespace {

std::vector<SymbolString> S(std::initializer_list<const char*> xs) {
  std::vector<SymbolString> out;
  for (const char* x : xs) out.push_back(to_symbols(x));
  return out;
}

struct Built {
  Trie trie;
  TopTree tt;
  TopDag dag;
};

Built build(const std::vector<SymbolString>& corpus, std::uint64_t seed = 1) {
  Built b{Trie::build(corpus), {}, {}};
  b.tt = TopTree::build(b.trie);
  FingerprintContext ctx(seed);
  b.dag = TopDag::compress(b.tt, ctx);
  return b;
}

}  // namespace

TEST(TopDag, UnfoldReproducesTopTree) {
  std::mt19937_64 rng(31);
  for (int round = 0; round < 100; ++round) {
    auto corpus = oracle::random_corpus(rng, 1 + round % 40, 12, round % 2 ? 2 : 5);
    Built b = build(corpus);
    ASSERT_TRUE(unfold_check(b.dag, b.tt));
    EXPECT_LE(b.dag.size(), b.tt.size());
  }
}

TEST(TopDag, PerturbedChildFailsUnfold) {
  Built b = build(S({"abc", "abd", "xyz"}));
  ASSERT_TRUE(unfold_check(b.dag, b.tt));
  for (NodeId id = 0; id < b.dag.size(); ++id) {
    if (b.dag.at(id).kind == ClusterKind::Leaf) continue;
    TopDag copy = b.dag;
    DagNode& n = copy.mutable_node(id);
    n.left = n.left == 0 ? 1 : 0;
    EXPECT_FALSE(unfold_check(copy, b.tt));
    break;
  }
}

TEST(TopDag, DistinctLabelsGiveNoSharing) {
  // A path with all labels distinct: every subtree is unique.
  SymbolString s;
  for (Symbol x = 0; x < 64; ++x) s.push_back(x);
  Built b = build({s});
  EXPECT_EQ(b.dag.size(), b.tt.size());
}

TEST(TopDag, IdenticalSubtriesShared) {
  Built b = build(S({"xab", "yab"}));
  EXPECT_LT(b.dag.size(), b.tt.size());
}

TEST(TopDag, UnaryGrowsLogarithmically) {
  std::size_t prev = 0;
  for (unsigned k = 6; k <= 16; ++k) {
    std::size_t n = std::size_t{1} << k;
    Built b = build({SymbolString(n, 0)});
    EXPECT_LE(b.dag.size(), 10 * k) << "n=" << n;
    if (prev) EXPECT_LE(b.dag.size(), prev + 8) << "n=" << n;
    prev = b.dag.size();
    EXPECT_EQ(b.trie.minimal_dag_size(), n + 1);
  }
}

TEST(TopDag, MinimalSignatures) {
  std::mt19937_64 rng(32);
  auto corpus = oracle::random_corpus(rng, 60, 10, 3);
  Built b = build(corpus);
  std::set<TopDag::Signature> seen;
  for (const auto& n : b.dag.nodes()) EXPECT_TRUE(seen.insert(TopDag::signature_of(n)).second);
}

TEST(TopDag, ChildrenPrecedeParents) {
  std::mt19937_64 rng(33);
  Built b = build(oracle::random_corpus(rng, 60, 10, 3));
  for (NodeId id = 0; id < b.dag.size(); ++id) {
    const auto& n = b.dag.at(id);
    if (n.kind == ClusterKind::Leaf) continue;
    EXPECT_LT(n.left, id);
    EXPECT_LT(n.right, id);
  }
}

TEST(TopDag, SpineFingerprintsMatchSpines) {
  std::mt19937_64 rng(34);
  auto corpus = oracle::random_corpus(rng, 40, 12, 4);
  Built b = build(corpus, 55);
  FingerprintContext ctx(55);
  for (NodeId id = 0; id < b.dag.size(); ++id) {
    if (!b.dag.at(id).has_bottom) continue;
    SymbolString sp = spine_of(b.dag, id);
    EXPECT_EQ(b.dag.at(id).spine_fp, ctx.of(sp));
    EXPECT_EQ(b.dag.at(id).spine_len, sp.size());
  }
}

TEST(TopDag, Idempotent) {
  std::mt19937_64 rng(35);
  auto corpus = oracle::random_corpus(rng, 40, 12, 2);
  Built a = build(corpus);
  Built b = build(corpus);
  ASSERT_EQ(a.dag.size(), b.dag.size());
  for (NodeId id = 0; id < a.dag.size(); ++id)
    EXPECT_EQ(TopDag::signature_of(a.dag.at(id)), TopDag::signature_of(b.dag.at(id)));
}

TEST(TopDag, FromTableRoundTrip) {
  std::mt19937_64 rng(36);
  Built b = build(oracle::random_corpus(rng, 40, 12, 3), 8);
  FingerprintContext ctx(8);
  TopDag re = TopDag::from_table(b.dag.nodes(), b.dag.root(), ctx);
  ASSERT_EQ(re.size(), b.dag.size());
  EXPECT_TRUE(unfold_check(re, b.tt));
}

TEST(TopDag, FromTableRejectsCorruption) {
  std::mt19937_64 rng(37);
  Built b = build(oracle::random_corpus(rng, 40, 12, 3), 8);
  FingerprintContext ctx(8);
  auto table = b.dag.nodes();
  std::size_t last = table.size() - 1;
  auto bad = table;
  bad[last].size += 1;
  EXPECT_THROW(TopDag::from_table(bad, b.dag.root(), ctx), InputError);
  bad = table;
  bad[last].left = static_cast<NodeId>(last);
  EXPECT_THROW(TopDag::from_table(bad, b.dag.root(), ctx), InputError);
  bad = table;
  bad.push_back(bad[0]);
  EXPECT_THROW(TopDag::from_table(bad, b.dag.root(), ctx), InputError);
  EXPECT_THROW(TopDag::from_table(table, static_cast<NodeId>(table.size()), ctx), InputError);
}

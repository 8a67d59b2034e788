// Acceptance battery. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "topdict/harness.hpp"
#include "topdict/serialize.hpp"

using namespace topdict;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Verdict {
  bool ok = true;
  std::ostringstream detail;
  void fail(const std::string& why) {
    if (ok) detail << "first failure: " << why << "; ";
    ok = false;
  }
};

int report_line(int k, const char* name, Verdict& v) {
  std::printf("criterion %d [%s]: %s (%s)\n", k, name, v.ok ? "PASS" : "FAIL", v.detail.str().c_str());
  std::fflush(stdout);
  return v.ok ? 0 : 1;
}

// Trie, top tree and assembled dictionary for one corpus.
struct Built {
  Trie trie;
  std::uint32_t tt_height = 0;
  std::vector<std::size_t> rounds;
  Dictionary dict;
};

Built build_all(std::vector<SymbolString> corpus, std::uint64_t seed, std::size_t sigma) {
  Built b;
  b.trie = Trie::build(std::move(corpus), sigma);
  DictionaryHeader h;
  h.n = b.trie.total_length();
  h.sigma = b.trie.sigma();
  h.n_t = b.trie.size();
  h.num_strings = b.trie.num_strings();
  h.root_terminal = b.trie.node(b.trie.root()).terminal;
  FingerprintContext ctx(seed);
  TopDag dag;
  {
    TopTree tt = TopTree::build(b.trie);
    b.tt_height = tt.height();
    b.rounds = tt.round_sizes();
    dag = TopDag::compress(tt, ctx);
  }
  b.dict = Dictionary::from_parts(h, std::move(dag), std::move(ctx));
  return b;
}

// Shape statistics shared by criteria 1, 4 and 7.
struct ShapeStats {
  std::size_t trees = 0;
  double worst_height_ratio = 0;
  double worst_round_keep = 0;  // after / before over all rounds
  std::string worst_where;
  void add(const Built& b, const std::string& where) {
    ++trees;
    std::size_t nt = b.trie.size();
    if (nt >= 2) {
      double r = b.tt_height / std::log2(static_cast<double>(nt));
      if (r > worst_height_ratio) worst_height_ratio = r, worst_where = where;
    }
    for (std::size_t k = 1; k < b.rounds.size(); ++k)
      worst_round_keep = std::max(worst_round_keep, double(b.rounds[k]) / double(b.rounds[k - 1]));
  }
};

const Engine kEngines[] = {Engine::Fingerprint, Engine::Logn, Engine::Msigma, Engine::Auto};

// Patterns: true prefixes, whole strings, one-symbol perturbations, random.
std::vector<SymbolString> battery_patterns(std::mt19937_64& rng, const std::vector<SymbolString>& corpus,
                                           std::size_t k, Symbol sigma) {
  std::size_t max_len = 1;
  for (const auto& s : corpus) max_len = std::max(max_len, s.size());
  auto out = oracle::random_patterns(rng, corpus, k, sigma, std::min<std::size_t>(max_len + 2, 64));
  for (std::size_t j = 0; j < out.size() && !corpus.empty(); j += 5) out[j] = corpus[rng() % corpus.size()];
  return out;
}

std::vector<SymbolString> battery_corpus(std::mt19937_64& rng, int family, Symbol sigma, std::uint64_t n) {
  switch (family) {
    case 0: return harness::gen_random(n, sigma, 1 + rng() % 200, rng());
    case 1: return harness::gen_unary(n, static_cast<Symbol>(rng() % sigma));
    case 2: return harness::gen_repetitive(n, 1 + rng() % 12, sigma, rng());
    default: {
      std::size_t m = 2 + rng() % 10;
      if (harness::padded_parity_length(sigma, m, n) >= 1) return harness::gen_padded_parity(sigma, m, n);
      return harness::gen_parity(sigma, 1);
    }
  }
}

const char* family_name(int f) {
  static const char* names[] = {"random", "unary", "repetitive", "parity"};
  return names[f];
}

// Criteria 1 and 2 share one battery of corpora and patterns.
void criteria_1_2(Verdict& v1, Verdict& v2, ShapeStats& shape) {
  auto t0 = Clock::now();
  std::mt19937_64 rng(20240601);
  const Symbol sigmas[] = {2, 4, 26, 256};
  std::size_t corpora = 0, queries = 0, reports = 0;
  for (int r = 0; r < 1000; ++r) {
    int family = r % 4;
    Symbol sigma = sigmas[(r / 4) % 4];
    // Log-uniform total length in [1, 10^4].
    std::uint64_t n = static_cast<std::uint64_t>(std::exp(std::uniform_real_distribution<double>(0, std::log(1e4))(rng)));
    n = std::clamp<std::uint64_t>(n, 1, 10000);
    auto corpus = battery_corpus(rng, family, sigma, n);
    std::string where = std::string(family_name(family)) + " sigma=" + std::to_string(sigma) + " n=" + std::to_string(n);
    Built b = build_all(corpus, rng(), sigma);
    shape.add(b, where);
    ++corpora;
    for (const auto& p : battery_patterns(rng, corpus, 100, sigma)) {
      LocusResult want = b.trie.longest_prefix(p);
      std::size_t want_count = oracle::count(corpus, p);
      auto want_report = oracle::report(corpus, p);
      for (Engine e : kEngines) {
        SearchOutcome got = b.dict.query(p, e);
        ++queries;
        if (got.locus.matched_len != want.matched_len || got.locus.is_prefix != want.is_prefix)
          v1.fail(where + " engine=" + engine_name(e) + " matched=" + std::to_string(got.locus.matched_len) +
                  " want " + std::to_string(want.matched_len));
        if (got.count != want_count)
          v2.fail(where + " engine=" + engine_name(e) + " count=" + std::to_string(got.count) + " want " +
                  std::to_string(want_count));
        if (b.dict.report(p, e) != want_report) v2.fail(where + " engine=" + engine_name(e) + " report differs");
        ++reports;
      }
    }
  }
  double secs = seconds_since(t0);
  if (secs > 300) v1.fail("runtime " + std::to_string(secs) + "s over 300s");
  v1.detail << corpora << " corpora, " << queries << " engine queries, " << secs << "s";
  v2.detail << queries << " counts, " << reports << " reports vs linear scan";
}

// Criterion 3 helpers.
struct WTree {
  std::vector<NodeId> parent;
  std::vector<std::uint64_t> weight, dist;
};

WTree random_wtree(std::mt19937_64& rng, std::size_t n) {
  WTree t{std::vector<NodeId>(n, kNoNode), std::vector<std::uint64_t>(n, 0), std::vector<std::uint64_t>(n, 0)};
  for (NodeId v = 1; v < n; ++v) {
    if (rng() % 64 == 0) continue;
    std::uint32_t span = std::min<std::uint32_t>(v, rng() % 4 == 0 ? v : 3);
    t.parent[v] = v - 1 - static_cast<NodeId>(rng() % span);
    t.weight[v] = rng() % 3 == 0 ? 1 + rng() % 2 : 1 + rng() % 1000;
    t.dist[v] = t.dist[t.parent[v]] + t.weight[v];
  }
  return t;
}

void expand_rule(const GappedGrammar& g, NodeId v, SymbolString& out) {
  const auto& r = g.rules[v];
  if (r.children.empty()) {
    out.push_back(r.symbol);
    return;
  }
  for (std::size_t k = 0; k < r.children.size(); ++k) {
    expand_rule(g, r.children[k], out);
    if (k < r.gaps.size()) out.insert(out.end(), r.gaps[k], Symbol{0});
  }
}

GappedGrammar random_grammar(std::mt19937_64& rng, std::size_t rules, std::uint64_t max_len) {
  GappedGrammar g;
  std::vector<std::uint64_t> len;
  for (std::size_t k = 0, t = 1 + rng() % 4; k < t; ++k) {
    g.add_terminal(static_cast<Symbol>(1 + rng() % 9));
    len.push_back(1);
  }
  while (g.size() < rules) {
    unsigned arity = 1 + static_cast<unsigned>(rng() % 4);
    std::vector<NodeId> ch;
    std::vector<std::uint64_t> gaps;
    std::uint64_t total = 0;
    for (unsigned a = 0; a < arity; ++a) {
      std::size_t n = g.size();
      NodeId c = static_cast<NodeId>(rng() % 2 ? n - 1 - rng() % std::min<std::size_t>(n, 4) : rng() % n);
      ch.push_back(c);
      total += len[c];
      if (a + 1 < arity) {
        gaps.push_back(rng() % 3 == 0 ? 0 : rng() % 5);
        total += gaps.back();
      }
    }
    if (total > max_len) continue;
    g.add_rule(ch, gaps);
    len.push_back(total);
  }
  return g;
}

NodeId hentry_of(const TopDag& dag, NodeId x) {
  while (is_vertical(dag.at(x).kind)) x = dag.at(x).left;
  return x;
}

NodeId vdesc_of(const TopDag& dag, NodeId x) {
  for (;;) {
    const auto& d = dag.at(x);
    if (d.kind == ClusterKind::Leaf || is_vertical(d.kind)) return x;
    x = d.kind == ClusterKind::HorizD ? d.right : d.left;
  }
}

// Unfolded H(C): for each leaf label, the root-to-leaf path as
// (parent, slot, T-child) steps.
struct HStep {
  NodeId parent;
  int slot;
  NodeId tchild;
};
void unfold_h(const TopDag& dag, NodeId x, std::vector<HStep>& path, std::map<Symbol, std::vector<HStep>>& out) {
  const auto& d = dag.at(x);
  if (d.kind == ClusterKind::Leaf) {
    out[d.label] = path;
    return;
  }
  for (int s = 0; s < 2; ++s) {
    NodeId t = s == 0 ? d.left : d.right;
    path.push_back({x, s, t});
    unfold_h(dag, hentry_of(dag, t), path, out);
    path.pop_back();
  }
}

template <class Cursor>
SymbolString drain_spine(const VerticalDag& vd, NodeId c) {
  Cursor cur(vd, c, 0);
  SymbolString s;
  Symbol x;
  while (cur.next(x)) s.push_back(x);
  return s;
}

void criterion_3(Verdict& v) {
  std::mt19937_64 rng(3003);

  std::size_t wla_q = 0;
  while (wla_q < 100000) {
    WTree t = random_wtree(rng, 2 + rng() % 10000);
    WlaIndex idx(t.parent, t.weight);
    for (int q = 0; q < 5000; ++q, ++wla_q) {
      NodeId u = static_cast<NodeId>(rng() % t.parent.size());
      if (t.dist[u] == 0) continue;
      std::uint64_t x = 1 + rng() % t.dist[u];
      NodeId want = u;
      while (t.parent[want] != kNoNode && t.dist[t.parent[want]] >= x) want = t.parent[want];
      if (idx.query(u, x) != want) v.fail("wla query mismatch");
    }
  }

  std::size_t ra_q = 0;
  while (ra_q < 10000) {
    GappedGrammar g = random_grammar(rng, 20 + rng() % 400, 100000);
    NodeId top = static_cast<NodeId>(g.size() - 1);
    SymbolString s;
    expand_rule(g, top, s);
    GrammarAccess ra(g);
    for (int q = 0; q < 500; ++q, ++ra_q) {
      NodeId x = rng() % 2 ? top : static_cast<NodeId>(rng() % g.size());
      SymbolString sx;
      if (x != top) expand_rule(g, x, sx);
      const SymbolString& ref = x == top ? s : sx;
      std::uint64_t i = rng() % ref.size();
      if (ra.access(x, i) != ref[i]) v.fail("grammar access mismatch");
    }
  }

  std::size_t pe_q = 0;
  for (int round = 0; round < 20; ++round) {
    std::size_t n = 1 + rng() % 5000;
    std::vector<NodeId> parent(n, kNoNode);
    for (NodeId u = 1; u < n; ++u)
      if (rng() % 100) parent[u] = u - 1 - static_cast<NodeId>(rng() % std::min<std::uint32_t>(u, rng() % 8 ? 3 : u));
    PathExtractIndex idx(parent);
    for (NodeId u = 0; u < n; ++u, ++pe_q) {
      std::vector<NodeId> want;
      for (NodeId w = u; w != kNoNode; w = parent[w]) want.push_back(w);
      std::reverse(want.begin(), want.end());
      auto s = idx.extract(u);
      std::vector<NodeId> got;
      for (NodeId w = s.next(); w != kNoNode; w = s.next()) got.push_back(w);
      if (got != want) v.fail("path extraction mismatch");
    }
  }

  std::size_t spines = 0, hexits = 0;
  for (int round = 0; round < 60; ++round) {
    Symbol sigma = std::vector<Symbol>{2, 4, 26, 256}[round % 4];
    std::vector<SymbolString> corpus =
        round % 3 == 2 ? harness::gen_repetitive(2000, 1 + round % 9, sigma, round)
                       : oracle::random_corpus(rng, 1 + rng() % 80, 30, sigma);
    Dictionary d = Dictionary::build(corpus, round);
    const TopDag& dag = d.dag();
    const VerticalDag& vd = d.core().vd();
    const HorizontalDag& hd = d.core().hd();
    for (NodeId x = 0; x < dag.size(); ++x) {
      if (vd.is_vertical_node(x) && dag.at(x).has_bottom) {
        SymbolString want = spine_of(dag, x);
        if (drain_spine<DfsSpineCursor>(vd, x) != want || drain_spine<FastSpineCursor>(vd, x) != want)
          v.fail("spine extraction mismatch");
        ++spines;
      }
      if (!hd.is_hnode(x)) continue;
      std::map<Symbol, std::vector<HStep>> leaves;
      std::vector<HStep> path;
      unfold_h(dag, x, path, leaves);
      for (Symbol a = 0; a <= leaves.rbegin()->first + 1; ++a) {
        auto e = hd.hexit(x, a);
        ++hexits;
        auto it = leaves.find(a);
        if (it == leaves.end()) {
          if (e.found) v.fail("hexit found a missing label");
          continue;
        }
        const HStep* low = nullptr;
        for (const auto& st : it->second)
          if (st.slot != (dag.at(st.parent).kind == ClusterKind::HorizD ? 1 : 0)) low = &st;
        NodeId want_e = low ? hentry_of(dag, low->tchild) : x;
        NodeId want_resume = low ? vdesc_of(dag, low->tchild) : vdesc_of(dag, x);
        if (!e.found || e.e != want_e || e.resume != want_resume || e.reset_extra != (low != nullptr))
          v.fail("hexit mismatch");
      }
    }
  }
  v.detail << wla_q << " wla, " << ra_q << " grammar access, " << pe_q << " path extractions, " << spines
           << " spines, " << hexits << " hexit queries";
}

// Criterion 4: per-size max ratios.
void criterion_4(Verdict& v, ShapeStats& shape) {
  auto t0 = Clock::now();
  std::mt19937_64 rng(4004);
  std::vector<double> logn_ratio, msigma_ratio;
  std::ostringstream table;
  for (int e = 10; e <= 20; ++e) {
    std::uint64_t n = std::uint64_t{1} << e;
    double worst_l = 0, worst_m = 0;
    struct Fam {
      int family;
      Symbol sigma;
    };
    for (Fam f : {Fam{0, 2}, Fam{0, 26}, Fam{2, 4}, Fam{1, 2}, Fam{3, 2}}) {
      std::vector<SymbolString> corpus;
      if (f.family == 0) corpus = harness::gen_random(n, f.sigma, std::max<std::uint64_t>(1, n / 64), rng());
      else if (f.family == 2) corpus = harness::gen_repetitive(n, 7, f.sigma, rng());
      else if (f.family == 1) corpus = harness::gen_unary(n, 0);
      else corpus = harness::gen_padded_parity(f.sigma, std::max<std::size_t>(2, static_cast<std::size_t>(e) - 4), n);
      Built b = build_all(corpus, rng(), f.sigma);
      shape.add(b, std::string(family_name(f.family)) + " n=2^" + std::to_string(e));
      double logn = std::log2(static_cast<double>(b.trie.total_length() + 1));
      for (const auto& p : battery_patterns(rng, corpus, 200, f.sigma)) {
        OpCounters cl, cm;
        b.dict.query(p, Engine::Logn, &cl);
        b.dict.query(p, Engine::Msigma, &cm);
        double m = static_cast<double>(p.size());
        worst_l = std::max(worst_l, cl.clusters_visited / (m + logn));
        worst_m = std::max(worst_m, cm.char_comparisons / (std::max(1.0, m) * (1 + std::log2(double(f.sigma)))));
      }
    }
    logn_ratio.push_back(worst_l);
    msigma_ratio.push_back(worst_m);
    table << " 2^" << e << ":" << std::setprecision(4) << worst_l << "/" << worst_m;
  }
  const double kC = 16, kSlack = 1.05;
  for (std::size_t k = 0; k < logn_ratio.size(); ++k) {
    if (logn_ratio[k] > kC || msigma_ratio[k] > kC) v.fail("ratio above C=16");
    // A sampled maximum is noisy, so each size is held to the smallest size's
    // ratio with 5% slack; growth with n would show up as a steady climb.
    if (logn_ratio[k] > kSlack * logn_ratio[0]) v.fail("logn ratio grew at 2^" + std::to_string(10 + k));
    if (msigma_ratio[k] > kSlack * msigma_ratio[0]) v.fail("msigma ratio grew at 2^" + std::to_string(10 + k));
  }
  double secs = seconds_since(t0);
  if (secs > 600) v.fail("runtime over 600s");
  v.detail << "max ratio logn/msigma per size:" << table.str() << ", " << secs << "s";
}

// Criterion 5: worst comparisons over in-set membership patterns.
void criterion_5(Verdict& v) {
  std::mt19937_64 rng(5005);
  std::ostringstream worst;
  for (Symbol sigma = 2; sigma <= 4; ++sigma)
    for (std::size_t m = 8; m <= 16; ++m) {
      if (harness::capped_power(sigma, m) > harness::kMaxEnumeration) continue;
      auto corpus = harness::gen_parity(sigma, m);
      Dictionary d = Dictionary::build(corpus, rng());
      std::vector<SymbolString> pats = corpus;
      if (pats.size() > 4000) {
        std::shuffle(pats.begin(), pats.end(), rng);
        pats.resize(4000);
      }
      double bound = 0.5 * double(m) * std::log2(double(sigma));
      for (Engine e : kEngines) {
        std::uint64_t w = 0;
        for (const auto& p : pats) {
          OpCounters c;
          d.query(p, e, &c);
          w = std::max(w, c.char_comparisons);
        }
        if (double(w) < bound)
          v.fail(std::string(engine_name(e)) + " sigma=" + std::to_string(sigma) + " m=" + std::to_string(m) +
                 " worst=" + std::to_string(w) + " < " + std::to_string(bound));
        if (m == 8 || m == 12)
          worst << " " << engine_name(e) << "(" << sigma << "," << m << ")=" << w;
      }
    }
  v.detail << "worst comparisons:" << worst.str();
}

// Criterion 6: unary a^n.
void criterion_6(Verdict& v) {
  std::vector<std::size_t> td;
  for (int e = 10; e <= 21; ++e) {
    std::uint64_t n = std::uint64_t{1} << e;
    Trie trie = Trie::build(harness::gen_unary(n));
    TopDag dag = TopDag::compress(TopTree::build(trie), FingerprintContext(6));
    td.push_back(dag.size());
    if (e <= 20 && trie.minimal_dag_size() < n) v.fail("trie DAG smaller than n at 2^" + std::to_string(e));
  }
  for (std::size_t k = 0; k + 1 < td.size(); ++k)
    if (td[k + 1] - td[k] > 8) v.fail("n_TD grew by " + std::to_string(td[k + 1] - td[k]) + " at 2^" + std::to_string(10 + k));
  v.detail << "n_TD for 2^10..2^21:";
  for (auto x : td) v.detail << " " << x;
  v.detail << "; trie DAG = n+1";
}

void criterion_7(Verdict& v, const ShapeStats& s) {
  if (s.worst_height_ratio > 8) v.fail("height ratio " + std::to_string(s.worst_height_ratio));
  if (s.worst_round_keep > 7.0 / 8.0) v.fail("round kept " + std::to_string(s.worst_round_keep));
  v.detail << s.trees << " top trees, max height/log2 n_T = " << std::setprecision(3) << s.worst_height_ratio
           << " (" << s.worst_where << "), max round after/before = " << s.worst_round_keep;
}

void criterion_8(Verdict& v) {
  std::mt19937_64 rng(8008);
  FingerprintContext ctx(rng());
  // Direct polynomial evaluation, independent of the context's tables.
  auto direct = [&](const SymbolString& s) {
    std::uint64_t acc = 0, pw = 1;
    for (Symbol x : s) {
      acc = FingerprintContext::add(acc, FingerprintContext::mul(x % FingerprintContext::kPrime, pw));
      pw = FingerprintContext::mul(pw, ctx.base());
    }
    return Fp{FingerprintContext::mul(acc, ctx.base()), s.size()};
  };
  std::size_t splits = 0;
  for (int r = 0; r < 200; ++r) {
    SymbolString s(rng() % 257);
    for (auto& x : s) x = static_cast<Symbol>(rng() % 256);
    Fp fx = ctx.of(s);
    if (fx != direct(s)) v.fail("fingerprint differs from direct evaluation");
    for (std::size_t k = 0; k <= s.size(); ++k, ++splits) {
      SymbolString y(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(k)), z(s.begin() + static_cast<std::ptrdiff_t>(k), s.end());
      Fp fy = ctx.of(y), fz = ctx.of(z);
      if (ctx.compose(fy, fz) != fx || ctx.strip_prefix(fx, fy) != fz || ctx.strip_suffix(fx, fz) != fy)
        v.fail("split algebra mismatch");
    }
  }
  std::size_t pairs = 0;
  while (pairs < 100000) {
    std::size_t len = 1 + rng() % 64;
    SymbolString a(len), b(len);
    for (auto& x : a) x = static_cast<Symbol>(rng() % (rng() % 2 ? 2 : 256));
    b = a;
    // Near-identical pairs as well as unrelated ones.
    if (rng() % 2) b[rng() % len] = static_cast<Symbol>(rng() % 256);
    else
      for (auto& x : b) x = static_cast<Symbol>(rng() % 256);
    if (a == b) continue;
    ++pairs;
    if (ctx.of(a) == ctx.of(b)) v.fail("fingerprint collision");
  }
  v.detail << splits << " splits x 3 directions, " << pairs << " distinct pairs";
}

void criterion_9(Verdict& v) {
  std::mt19937_64 rng(9009);
  auto dir = std::filesystem::temp_directory_path() / ("topdict_accept_" + std::to_string(rng()));
  std::filesystem::create_directories(dir);
  std::size_t queries = 0;
  for (int r = 0; r < 20; ++r) {
    Symbol sigma = std::vector<Symbol>{2, 4, 26, 256}[r % 4];
    auto corpus = battery_corpus(rng, r % 4, sigma, 500 + rng() % 5000);
    Dictionary a = Dictionary::build(corpus, rng(), sigma);
    std::string path = (dir / ("d" + std::to_string(r) + ".tdix")).string();
    save(a, path);
    Dictionary b = load(path);
    if (serialize(b) != serialize(a)) v.fail("reserialized bytes differ");
    for (const auto& p : battery_patterns(rng, corpus, 500, sigma)) {
      for (Engine e : kEngines) {
        OpCounters ca, cb;
        SearchOutcome oa = a.query(p, e, &ca), ob = b.query(p, e, &cb);
        if (oa.locus.matched_len != ob.locus.matched_len || oa.locus.is_prefix != ob.locus.is_prefix ||
            oa.locus.locus != ob.locus.locus || oa.count != ob.count || !(ca == cb))
          v.fail("loaded dictionary differs on a query");
        OpCounters ra, rb;
        if (a.report(p, e, &ra) != b.report(p, e, &rb) || !(ra == rb)) v.fail("loaded dictionary differs on report");
      }
      ++queries;
    }
  }
  std::filesystem::remove_all(dir);
  v.detail << queries << " patterns x 4 engines after save/load";
}

}  // namespace

int main() {
  int failed = 0;
  Verdict v[10];
  ShapeStats shape;
  auto run = [&](int k, const char* name, const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      v[k].fail(std::string("exception: ") + e.what());
    }
    failed += report_line(k, name, v[k]);
  };
  try {
    criteria_1_2(v[1], v[2], shape);
  } catch (const std::exception& e) {
    v[1].fail(std::string("exception: ") + e.what());
    v[2].fail(std::string("exception: ") + e.what());
  }
  failed += report_line(1, "oracle equivalence", v[1]);
  failed += report_line(2, "count and report", v[2]);
  run(3, "structure oracles", [&] { criterion_3(v[3]); });
  run(4, "complexity instrumentation", [&] { criterion_4(v[4], shape); });
  run(5, "lower-bound consistency", [&] { criterion_5(v[5]); });
  run(6, "unary compression", [&] { criterion_6(v[6]); });
  run(7, "top tree shape", [&] { criterion_7(v[7], shape); });
  run(8, "fingerprint algebra", [&] { criterion_8(v[8]); });
  run(9, "persistence", [&] { criterion_9(v[9]); });
  std::printf("%d of 9 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}

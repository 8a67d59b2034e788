// topdict command line: build, query, stats, bench, gen.
// Exit codes: 0 ok, 1 usage, 2 input error, 3 internal error.

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include "topdict/corpus_io.hpp"
#include "topdict/harness.hpp"
#include "topdict/serialize.hpp"

using namespace topdict;

namespace {

constexpr std::uint64_t kDefaultSeed = 0x7d1c5eedULL;

std::uint64_t parse_u64(const std::string& s, const char* what) {
  std::size_t pos = 0;
  std::uint64_t v = 0;
  try {
    v = std::stoull(s, &pos, 0);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != s.size()) throw InputError(std::string("bad ") + what + ": " + s);
  return v;
}

// TOPDICT_SEED wins over --seed, which wins over the built-in default.
std::uint64_t effective_seed(const std::optional<std::uint64_t>& flag) {
  if (const char* env = std::getenv("TOPDICT_SEED"); env && *env) return parse_u64(env, "TOPDICT_SEED");
  return flag.value_or(kDefaultSeed);
}

std::vector<Engine> parse_engines(const std::string& s, bool allow_all) {
  if (allow_all && s == "all") return {Engine::Fingerprint, Engine::Logn, Engine::Msigma, Engine::Auto};
  auto e = parse_engine(s);
  if (!e) throw CLI::ValidationError("--engine", "unknown engine " + s);
  return {*e};
}

SymbolString pattern_symbols(const std::string& s) {
  if (s.find('\n') != std::string::npos) throw InputError("pattern contains the line separator");
  return to_symbols(s);
}

void print_counters(std::ostream& out, const OpCounters& c) {
  out << "  comparisons=" << c.char_comparisons << " fingerprint_checks=" << c.fingerprint_checks
      << " clusters_visited=" << c.clusters_visited << " wla_queries=" << c.wla_queries << " wla_work=" << c.wla_work
      << " spine_chars=" << c.spine_chars << " spine_work=" << c.spine_work
      << " horizontal_accesses=" << c.horizontal_accesses << " heavy_hops=" << c.heavy_hops << "\n";
}

struct QueryOptions {
  std::string dict;
  std::vector<std::string> patterns;
  std::string patterns_file;
  std::string engine = "auto";
  bool count = false;
  bool report = false;
  bool verbose = false;
  unsigned threads = 1;
};

std::string answer(const Dictionary& d, const SymbolString& p, Engine e, const QueryOptions& o) {
  std::ostringstream out;
  OpCounters c;
  SearchOutcome r = d.query(p, e, &c);
  out << "matched=" << r.locus.matched_len << " prefix=" << (r.locus.is_prefix ? "true" : "false");
  if (o.count) out << " count=" << r.count;
  out << "\n";
  if (o.verbose) {
    out << "  engine=" << engine_name(d.resolve(e, p.size())) << "\n";
    print_counters(out, c);
  }
  if (o.report)
    for (const auto& s : d.report(p, e)) out << "  " << to_bytes(p) << to_bytes(s) << "\n";
  return out.str();
}

int cmd_query(const QueryOptions& o) {
  Dictionary d = load(o.dict);
  Engine e = parse_engines(o.engine, false)[0];
  std::vector<SymbolString> pats;
  for (const auto& s : o.patterns) pats.push_back(pattern_symbols(s));
  if (!o.patterns_file.empty())
    for (auto& p : read_corpus(o.patterns_file)) pats.push_back(std::move(p));
  std::vector<std::string> out(pats.size());
  unsigned t = std::max(1u, std::min<unsigned>(o.threads, static_cast<unsigned>(pats.size())));
  if (t <= 1) {
    for (std::size_t k = 0; k < pats.size(); ++k) out[k] = answer(d, pats[k], e, o);
  } else {
    // Read-only dictionary shared by all workers; each writes its own slots.
    std::vector<std::thread> workers;
    std::exception_ptr failure;
    std::mutex mu;
    for (unsigned w = 0; w < t; ++w)
      workers.emplace_back([&, w] {
        try {
          for (std::size_t k = w; k < pats.size(); k += t) out[k] = answer(d, pats[k], e, o);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (!failure) failure = std::current_exception();
        }
      });
    for (auto& th : workers) th.join();
    if (failure) std::rethrow_exception(failure);
  }
  for (const auto& s : out) std::cout << s;
  return 0;
}

int cmd_stats(const std::string& path) {
  std::string bytes = read_file(path);
  Dictionary d = deserialize(bytes);
  const auto& h = d.header();
  std::cout << "n=" << h.n << "\n"
            << "sigma=" << h.sigma << "\n"
            << "strings=" << h.num_strings << "\n"
            << "n_T=" << h.n_t << "\n"
            << "n_TD=" << d.n_td() << "\n"
            << "top_tree_height=" << d.height() << "\n"
            << "seed=" << d.seed() << "\n"
            << "file_bytes=" << bytes.size() << "\n";
  return 0;
}

// CSV columns: pattern_len,engine,comparisons,clusters_visited,nanoseconds.
// nanoseconds is 0 unless --measure is given, so default output is deterministic.
int cmd_bench(const std::string& dict, const std::string& patterns, const std::string& engine, bool measure) {
  Dictionary d = load(dict);
  auto engines = engine == "all" ? std::vector<Engine>{Engine::Fingerprint, Engine::Logn, Engine::Msigma}
                                 : parse_engines(engine, true);
  auto pats = read_corpus(patterns);
  std::cout << "pattern_len,engine,comparisons,clusters_visited,nanoseconds\n";
  for (const auto& p : pats)
    for (Engine e : engines) {
      OpCounters c;
      auto t0 = std::chrono::steady_clock::now();
      d.query(p, e, &c);
      auto t1 = std::chrono::steady_clock::now();
      long long ns = measure ? std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count() : 0;
      std::cout << p.size() << "," << engine_name(e) << "," << c.char_comparisons << "," << c.clusters_visited << ","
                << ns << "\n";
    }
  return 0;
}

struct GenOptions {
  std::string family;
  std::uint64_t sigma = 2;
  std::uint64_t m = 8;
  std::uint64_t n = 1024;
  std::uint64_t k = 16;
  std::uint64_t period = 7;
  std::optional<std::uint64_t> seed;
  std::uint64_t base = 97;
  std::string output;
};

int cmd_gen(const GenOptions& o) {
  if (o.sigma < 1 || o.sigma > 256) throw InputError("--sigma must be in [1, 256]");
  std::uint64_t seed = effective_seed(o.seed);
  Symbol sigma = static_cast<Symbol>(o.sigma);
  std::vector<SymbolString> c;
  if (o.family == "parity") c = harness::gen_parity(sigma, o.m);
  else if (o.family == "padded") c = harness::gen_padded_parity(sigma, o.m, o.n);
  else if (o.family == "random") c = harness::gen_random(o.n, sigma, o.k, seed);
  else if (o.family == "unary") c = harness::gen_unary(o.n, 0);
  else if (o.family == "repetitive") c = harness::gen_repetitive(o.n, o.period, sigma, seed);
  else throw CLI::ValidationError("family", "unknown family " + o.family);
  if (o.output.empty()) {
    write_corpus(std::cout, c, static_cast<Symbol>(o.base));
  } else {
    std::ofstream out(o.output, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + o.output);
    write_corpus(out, c, static_cast<Symbol>(o.base));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compressed string dictionary over a top-DAG compressed trie"};
  app.require_subcommand(1);

  std::string build_in, build_out;
  std::optional<std::uint64_t> build_seed;
  std::uint64_t build_sigma = 0;
  auto* build = app.add_subcommand("build", "Build a dictionary file from a corpus (one string per line)");
  build->add_option("input", build_in, "Corpus file")->required();
  build->add_option("-o,--output", build_out, "Dictionary file to write")->required();
  build->add_option("--seed", build_seed, "Fingerprint seed (TOPDICT_SEED overrides)");
  build->add_option("--sigma", build_sigma, "Alphabet size (default: max byte + 1)");

  QueryOptions q;
  auto* query = app.add_subcommand("query", "Longest prefix, count and report queries");
  query->add_option("dict", q.dict, "Dictionary file")->required();
  query->add_option("patterns", q.patterns, "Patterns");
  query->add_option("--patterns-file", q.patterns_file, "File with one pattern per line");
  query->add_option("--engine", q.engine, "fingerprint, logn, msigma or auto")->capture_default_str();
  query->add_flag("--count", q.count, "Print the number of strings with the pattern as prefix");
  query->add_flag("--report", q.report, "Print the strings with the pattern as prefix");
  query->add_flag("--verbose", q.verbose, "Print operation counters");
  query->add_option("--threads", q.threads, "Worker threads for batches")->check(CLI::Range(1u, 256u));

  std::string stats_path;
  auto* stats = app.add_subcommand("stats", "Print dictionary statistics");
  stats->add_option("dict", stats_path, "Dictionary file")->required();

  std::string bench_dict, bench_patterns, bench_engine = "all";
  bool bench_measure = false;
  auto* bench = app.add_subcommand("bench", "Per-pattern counters as CSV");
  bench->add_option("dict", bench_dict, "Dictionary file")->required();
  bench->add_option("patterns", bench_patterns, "File with one pattern per line")->required();
  bench->add_option("--engine", bench_engine, "Engine or all")->capture_default_str();
  bench->add_flag("--measure", bench_measure, "Record wall-clock nanoseconds");

  GenOptions g;
  auto* gen = app.add_subcommand("gen", "Generate a corpus");
  gen->add_option("family", g.family, "parity, padded, random, unary or repetitive")->required();
  gen->add_option("--sigma", g.sigma, "Alphabet size")->capture_default_str();
  gen->add_option("--m", g.m, "String length for parity families")->capture_default_str();
  gen->add_option("--n", g.n, "Total length")->capture_default_str();
  gen->add_option("--k", g.k, "Target string count for random")->capture_default_str();
  gen->add_option("--period", g.period, "Period for repetitive")->capture_default_str();
  gen->add_option("--seed", g.seed, "Generator seed (TOPDICT_SEED overrides)");
  gen->add_option("--base", g.base, "Byte written for symbol code 0")->capture_default_str();
  gen->add_option("-o,--output", g.output, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*build) {
      auto corpus = read_corpus(build_in);
      Dictionary d = Dictionary::build(std::move(corpus), effective_seed(build_seed), build_sigma);
      save(d, build_out);
      return 0;
    }
    if (*query) {
      if (q.patterns.empty() && q.patterns_file.empty()) throw CLI::ValidationError("query", "no patterns given");
      return cmd_query(q);
    }
    if (*stats) return cmd_stats(stats_path);
    if (*bench) return cmd_bench(bench_dict, bench_patterns, bench_engine, bench_measure);
    if (*gen) return cmd_gen(g);
  } catch (const CLI::Error& e) {
    std::cerr << "topdict: " << e.what() << "\n";
    return 1;
  } catch (const InputError& e) {
    std::cerr << "topdict: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "topdict: internal error: " << e.what() << "\n";
    return 3;
  }
  return 1;
}

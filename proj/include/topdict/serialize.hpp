#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include "topdict/corpus_io.hpp"
#include "topdict/query.hpp"

namespace topdict {

// Dictionary file layout, integers little-endian:
//   "TDIX" u32 version
//   u64 n, sigma, n_T, n_TD, seed, p, c, num_strings, root
//   u8 root_terminal
//   n_TD node records:
//     u8 kind, u8 flags (bit0 term, bit1 has_bottom, bit2 bottom_terminal)
//     varint left+1, right+1, label, spine_len, first_spine_label,
//            rightmost_label, size, terminals, height
//     u64 spine fingerprint value
// Auxiliary structures are rebuilt on load.
inline constexpr char kMagic[4] = {'T', 'D', 'I', 'X'};
inline constexpr std::uint32_t kFormatVersion = 1;

namespace detail {

class Writer {
 public:
  void u8(std::uint8_t x) { out_.push_back(static_cast<char>(x)); }
  void u32(std::uint32_t x) {
    for (int k = 0; k < 4; ++k) u8(static_cast<std::uint8_t>(x >> (8 * k)));
  }
  void u64(std::uint64_t x) {
    for (int k = 0; k < 8; ++k) u8(static_cast<std::uint8_t>(x >> (8 * k)));
  }
  void varint(std::uint64_t x) {
    while (x >= 0x80) {
      u8(static_cast<std::uint8_t>(x | 0x80));
      x >>= 7;
    }
    u8(static_cast<std::uint8_t>(x));
  }
  void bytes(std::string_view s) { out_.append(s); }
  std::string take() { return std::move(out_); }

 private:
  std::string out_;
};

class Reader {
 public:
  explicit Reader(std::string_view data) : data_(data) {}
  std::uint8_t u8() {
    if (pos_ >= data_.size()) throw InputError("dictionary file truncated");
    return static_cast<std::uint8_t>(data_[pos_++]);
  }
  std::uint32_t u32() {
    std::uint32_t x = 0;
    for (int k = 0; k < 4; ++k) x |= std::uint32_t{u8()} << (8 * k);
    return x;
  }
  std::uint64_t u64() {
    std::uint64_t x = 0;
    for (int k = 0; k < 8; ++k) x |= std::uint64_t{u8()} << (8 * k);
    return x;
  }
  std::uint64_t varint() {
    std::uint64_t x = 0;
    for (int shift = 0;; shift += 7) {
      if (shift > 63) throw InputError("malformed varint in dictionary file");
      std::uint8_t b = u8();
      x |= std::uint64_t{b & 0x7fu} << shift;
      if (!(b & 0x80)) return x;
    }
  }
  bool at_end() const { return pos_ == data_.size(); }

 private:
  std::string_view data_;
  std::size_t pos_ = 0;
};

inline std::uint32_t narrow_id(std::uint64_t x) {
  if (x > kNoNode) throw InputError("node id out of range in dictionary file");
  return static_cast<std::uint32_t>(x);
}

}  // namespace detail

inline std::string serialize(const Dictionary& d) {
  detail::Writer w;
  const DictionaryHeader& h = d.header();
  const TopDag& dag = d.dag();
  const FingerprintContext& ctx = d.core().ctx();
  w.bytes(std::string_view(kMagic, 4));
  w.u32(kFormatVersion);
  w.u64(h.n);
  w.u64(h.sigma);
  w.u64(h.n_t);
  w.u64(dag.size());
  w.u64(ctx.seed());
  w.u64(ctx.prime());
  w.u64(ctx.base());
  w.u64(h.num_strings);
  w.u64(dag.empty() ? ~std::uint64_t{0} : dag.root());
  w.u8(h.root_terminal);
  for (const DagNode& n : dag.nodes()) {
    w.u8(static_cast<std::uint8_t>(n.kind));
    w.u8(static_cast<std::uint8_t>(n.term | (n.has_bottom << 1) | (n.bottom_terminal << 2)));
    w.varint(n.left == kNoNode ? 0 : std::uint64_t{n.left} + 1);
    w.varint(n.right == kNoNode ? 0 : std::uint64_t{n.right} + 1);
    w.varint(n.label);
    w.varint(n.spine_len);
    w.varint(n.first_spine_label);
    w.varint(n.rightmost_label);
    w.varint(n.size);
    w.varint(n.terminals);
    w.varint(n.height);
    w.u64(n.spine_fp.value);
  }
  return w.take();
}

// Parses and validates a dictionary file; every augmentation is recomputed
// and compared, so corrupted files raise InputError.
inline Dictionary deserialize(std::string_view data) {
  detail::Reader r(data);
  for (char c : kMagic)
    if (static_cast<char>(r.u8()) != c) throw InputError("not a dictionary file (bad magic)");
  std::uint32_t version = r.u32();
  if (version != kFormatVersion) throw InputError("unsupported dictionary format version " + std::to_string(version));
  DictionaryHeader h;
  h.n = r.u64();
  h.sigma = r.u64();
  h.n_t = r.u64();
  std::uint64_t n_td = r.u64();
  std::uint64_t seed = r.u64();
  std::uint64_t p = r.u64();
  std::uint64_t c = r.u64();
  h.num_strings = r.u64();
  std::uint64_t root = r.u64();
  std::uint8_t rt = r.u8();
  if (rt > 1) throw InputError("bad root terminal flag");
  h.root_terminal = rt;
  if (p != FingerprintContext::kPrime) throw InputError("dictionary uses an unsupported fingerprint modulus");
  if (c < 2 || c > p - 2) throw InputError("fingerprint base out of range");
  if (n_td > data.size()) throw InputError("node count exceeds file size");
  std::vector<DagNode> table(n_td);
  for (auto& n : table) {
    std::uint8_t kind = r.u8();
    if (kind > static_cast<std::uint8_t>(ClusterKind::HorizE)) throw InputError("bad cluster kind");
    n.kind = static_cast<ClusterKind>(kind);
    std::uint8_t flags = r.u8();
    if (flags > 7) throw InputError("bad node flags");
    n.term = flags & 1;
    n.has_bottom = flags & 2;
    n.bottom_terminal = flags & 4;
    std::uint64_t l = r.varint(), rr = r.varint();
    n.left = l == 0 ? kNoNode : detail::narrow_id(l - 1);
    n.right = rr == 0 ? kNoNode : detail::narrow_id(rr - 1);
    n.label = detail::narrow_id(r.varint());
    n.spine_len = r.varint();
    n.first_spine_label = detail::narrow_id(r.varint());
    n.rightmost_label = detail::narrow_id(r.varint());
    n.size = r.varint();
    n.terminals = r.varint();
    n.height = detail::narrow_id(r.varint());
    n.spine_fp = {r.u64(), n.spine_len};
  }
  if (!r.at_end()) throw InputError("trailing bytes after node table");
  FingerprintContext ctx(seed, c);
  NodeId root_id = root == ~std::uint64_t{0} ? kNoNode : detail::narrow_id(root);
  TopDag dag = TopDag::from_table(std::move(table), root_id, ctx);
  for (const DagNode& n : dag.nodes())
    if (n.kind == ClusterKind::Leaf && n.label >= h.sigma) throw InputError("edge label outside the alphabet");
  if (!dag.empty()) {
    const DagNode& top = dag.at(dag.root());
    if (top.has_bottom) throw InputError("root cluster has a bottom boundary");
    if (top.size + 1 != h.n_t) throw InputError("header node count disagrees with node table");
    if (top.terminals + h.root_terminal != h.num_strings) throw InputError("header string count disagrees with node table");
  } else if (h.n_t != 1 || h.num_strings != h.root_terminal || h.n != 0) {
    throw InputError("header inconsistent with empty node table");
  }
  return Dictionary::from_parts(h, std::move(dag), std::move(ctx));
}

inline void save(const Dictionary& d, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write " + path);
  std::string data = serialize(d);
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw InputError("write error on " + path);
}

inline Dictionary load(const std::string& path) { return deserialize(read_file(path)); }

}  // namespace topdict

#pragma once

#include <fstream>
#include <iterator>
#include <ostream>
#include <string>
#include <vector>

#include "topdict/common.hpp"

namespace topdict {

// Corpus text: one string per line, raw bytes, '\n' separates and is not
// part of any string. A trailing newline does not start another string.
inline std::vector<SymbolString> parse_corpus(const std::string& text) {
  std::vector<SymbolString> out;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    out.push_back(to_symbols(text.substr(start, end - start)));
    start = end + 1;
  }
  return out;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw InputError("read error on " + path);
  return data;
}

inline std::vector<SymbolString> read_corpus(const std::string& path) { return parse_corpus(read_file(path)); }

// Symbols are written as bytes base + code.
inline void write_corpus(std::ostream& out, const std::vector<SymbolString>& corpus, Symbol base = 0) {
  for (const auto& s : corpus) {
    for (Symbol x : s) {
      std::uint64_t b = std::uint64_t{x} + base;
      if (b > 255 || b == '\n') throw InputError("symbol " + std::to_string(b) + " not representable in corpus text");
      out.put(static_cast<char>(b));
    }
    out.put('\n');
  }
}

}  // namespace topdict

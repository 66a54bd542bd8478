#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <random>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "matt/checker.hpp"
#include "matt/mode_theory.hpp"
#include "matt/parser.hpp"

namespace testing {

inline std::filesystem::path source_dir() { return MATT_SOURCE_DIR; }
inline std::filesystem::path theory_path(const std::string& name) {
  return source_dir() / "bundled" / "theories" / (name + ".mt");
}
// Bundled diagrams, then test fixtures.
inline std::filesystem::path diagram_path(const std::string& name) {
  auto bundled = source_dir() / "bundled" / "diagrams" / (name + ".json");
  if (std::filesystem::exists(bundled)) return bundled;
  return source_dir() / "tests" / "data" / "diagrams" / (name + ".json");
}
inline std::filesystem::path corpus_path(const std::string& name) {
  return source_dir() / "bundled" / "corpus" / name;
}
inline matt::ModeTheory theory(const std::string& name) { return matt::load_mode_theory(theory_path(name)); }

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// A corpus file with the theory named by its leading declaration.
struct Corpus {
  std::string name;
  std::string text;
  std::unique_ptr<matt::ModeTheory> mt;
  matt::Program program;
};

inline Corpus load_corpus(const std::string& file) {
  Corpus c;
  c.name = file;
  c.text = slurp(corpus_path(file));
  auto rel = matt::leading_mode_theory(c.text);
  c.mt = std::make_unique<matt::ModeTheory>(matt::load_mode_theory(corpus_path(*rel)));
  c.program = matt::parse_program(*c.mt, c.text, file);
  return c;
}

// Line number to the code named by a trailing "-- expect: Code".
inline std::map<int, std::string> expectations(const std::string& text) {
  std::map<int, std::string> out;
  std::istringstream in(text);
  std::string line;
  static const std::regex tag(R"(--\s*expect:\s*(\w+))");
  for (int n = 1; std::getline(in, line); ++n) {
    std::smatch m;
    if (std::regex_search(line, m, tag)) out[n] = m[1];
  }
  return out;
}

// "OK" or the error code, one per declaration, checking them in `order`
// and reporting in source order.
inline std::vector<std::string> verdicts(const matt::ModeTheory& mt, const std::vector<matt::Decl>& decls,
                                         const std::vector<std::size_t>& order) {
  matt::Checker ck(mt);
  std::vector<std::string> out(decls.size());
  for (std::size_t i : order) {
    try {
      ck.declare(decls[i]);
      out[i] = "OK";
    } catch (const matt::Error& e) {
      out[i] = std::string(matt::to_string(e.code()));
    }
  }
  return out;
}

inline std::vector<std::size_t> source_order(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

// A random order in which every declaration still follows the earlier
// declarations it mentions, and repeated names keep their relative order.
inline std::vector<std::size_t> shuffled_order(const matt::ModeTheory& mt, const std::vector<matt::Decl>& decls,
                                               std::uint64_t seed) {
  const std::size_t n = decls.size();
  std::vector<std::vector<std::size_t>> deps(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::string text = matt::print_decl(mt, decls[i]);
    for (std::size_t j = 0; j < i; ++j) {
      const std::regex word("(^|[^A-Za-z0-9_'])" + decls[j].name + "($|[^A-Za-z0-9_'])");
      if (decls[j].name == decls[i].name || std::regex_search(text, word)) deps[i].push_back(j);
    }
  }
  std::mt19937_64 rng(seed);
  std::vector<bool> done(n, false);
  std::vector<std::size_t> order;
  while (order.size() < n) {
    std::vector<std::size_t> ready;
    for (std::size_t i = 0; i < n; ++i)
      if (!done[i] && std::all_of(deps[i].begin(), deps[i].end(), [&](std::size_t j) { return done[j]; }))
        ready.push_back(i);
    std::size_t pick = ready[std::uniform_int_distribution<std::size_t>(0, ready.size() - 1)(rng)];
    done[pick] = true;
    order.push_back(pick);
  }
  return order;
}

inline const std::vector<std::string>& corpus_files() {
  static const std::vector<std::string> files = {
      "2ltt_ok.matt",    "reflective_ok.matt", "meet_ok.matt",        "comonad_ok.matt",
      "single_arrow_ok.matt", "trivial_ok.matt", "2ltt_bad.matt",   "reflective_bad.matt",
      "meet_bad.matt",   "comonad_bad.matt",   "2ltt_fibrant.matt"};
  return files;
}

}  // namespace testing

#pragma once

// Exhaustive law suites over the co-dextrification of a finite diagram.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "matt/diagram.hpp"

namespace matt {

enum class LawStatus { Pass, Fail };

struct LawResult {
  std::string law;
  LawStatus status = LawStatus::Pass;
  std::size_t checks = 0;
  std::string detail;  // first counterexample when failed
};

struct LawOptions {
  std::vector<std::string> only;  // empty runs every suite
  std::size_t cap = 1'000'000;
  unsigned jobs = 1;
  std::optional<std::uint64_t> order_seed;
};

// Sorted suite names.
const std::vector<std::string>& law_names();

// Runs the selected suites, each on its own co-dextrification, and returns
// results sorted by name.  Errors inside a suite are reported as failures.
std::vector<LawResult> run_laws(const Diagram& d, const LawOptions& opts = {});
LawResult run_law(const Diagram& d, const std::string& name, const LawOptions& opts = {});

// "name<TAB>PASS<TAB>N checks" or "name<TAB>FAIL<TAB>counterexample".
std::string format_law_result(const LawResult& r);

}  // namespace matt

#include "doctest.h"

#include "matt/laws.hpp"
#include "support.hpp"

using namespace matt;

namespace {

const char* const kPositive[] = {"trivial", "single_arrow", "2ltt", "reflective", "comonad", "meet"};

std::vector<std::string> statuses(const std::vector<LawResult>& rs) {
  std::vector<std::string> out;
  for (const auto& r : rs) out.push_back(r.law + (r.status == LawStatus::Pass ? ":pass" : ":fail"));
  return out;
}

}  // namespace

TEST_CASE("suite names are sorted and unique") {
  const auto& names = law_names();
  CHECK(names.size() == 12);
  CHECK(std::is_sorted(names.begin(), names.end()));
  CHECK(std::adjacent_find(names.begin(), names.end()) == names.end());
}

TEST_CASE("every law holds on the bundled diagrams") {
  LawOptions opts;
  opts.jobs = 4;
  for (const char* name : kPositive) {
    CAPTURE(name);
    Diagram d = load_diagram(testing::diagram_path(name));
    auto results = run_laws(d, opts);
    REQUIRE(results.size() == law_names().size());
    std::size_t checks = 0;
    for (const auto& r : results) {
      CAPTURE(format_law_result(r));
      CHECK(r.status == LawStatus::Pass);
      checks += r.checks;
    }
    CHECK(checks > 0);
  }
}

TEST_CASE("a functor that breaks binary meets fails the limit laws") {
  Diagram d = load_diagram(testing::diagram_path("not_meet_preserving"));
  LawOptions opts;
  opts.jobs = 4;
  auto results = run_laws(d, opts);
  std::map<std::string, LawStatus> by;
  for (const auto& r : results) by[r.law] = r.status;
  CHECK(by["functor-limits"] == LawStatus::Fail);
  CHECK(by["pointwise-limits"] == LawStatus::Fail);
  CHECK(by["codex-axioms"] == LawStatus::Pass);
  LawResult fl = run_law(d, "functor-limits");
  CHECK(fl.detail.find("does not preserve") != std::string::npos);
  CHECK(format_law_result(fl).rfind("functor-limits\tFAIL\t", 0) == 0);
}

TEST_CASE("selection, output format and worker count") {
  Diagram d = load_diagram(testing::diagram_path("reflective"));
  LawOptions one;
  one.only = {"up-ff"};
  auto rs = run_laws(d, one);
  REQUIRE(rs.size() == 1);
  CHECK(rs[0].law == "up-ff");
  const std::string line = format_law_result(rs[0]);
  CHECK(line == "up-ff\tPASS\t" + std::to_string(rs[0].checks) + " checks");

  LawOptions serial, wide;
  wide.jobs = 8;
  auto a = run_laws(d, serial), b = run_laws(d, wide);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].law == b[i].law);
    CHECK(a[i].checks == b[i].checks);
    CHECK(a[i].status == b[i].status);
  }

  LawOptions unknown;
  unknown.only = {"no-such-law"};
  CHECK_THROWS(run_laws(d, unknown));
}

TEST_CASE("limit search order changes no verdict") {
  for (const char* name : {"reflective", "meet", "not_meet_preserving"}) {
    CAPTURE(name);
    Diagram d = load_diagram(testing::diagram_path(name));
    LawOptions base;
    base.jobs = 4;
    auto expected = statuses(run_laws(d, base));
    for (std::uint64_t seed : {1u, 7u, 42u}) {
      LawOptions shuffled = base;
      shuffled.order_seed = seed;
      CHECK(statuses(run_laws(d, shuffled)) == expected);
    }
  }
}

TEST_CASE("a tiny cap is reported as a failure, not a crash") {
  Diagram d = load_diagram(testing::diagram_path("meet"));
  LawOptions opts;
  opts.cap = 3;
  opts.only = {"codex-axioms"};
  auto rs = run_laws(d, opts);
  REQUIRE(rs.size() == 1);
  CHECK(rs[0].status == LawStatus::Fail);
  CHECK(rs[0].detail.rfind("CapExceeded", 0) == 0);
}

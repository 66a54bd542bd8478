#include "doctest.h"

#include "matt/checker.hpp"
#include "matt/error.hpp"
#include "conversion.hpp"
#include "support.hpp"

using namespace matt;

TEST_CASE("positive corpora check cleanly") {
  int total = 0;
  for (const auto& file : testing::corpus_files()) {
    if (file.find("_ok") == std::string::npos) continue;
    CAPTURE(file);
    testing::Corpus c = testing::load_corpus(file);
    Checker ck(*c.mt);
    auto diags = check_programs(ck, {c.program});
    for (const auto& d : diags) MESSAGE(format_diagnostic(d));
    CHECK(diags.empty());
    for (const auto& d : c.program.decls) total += d.kind == Decl::Kind::Def;
  }
  CHECK(total >= 25);
}

TEST_CASE("negative corpora report the predicted codes") {
  int total = 0;
  for (const auto& file : testing::corpus_files()) {
    if (file.find("_bad") == std::string::npos) continue;
    CAPTURE(file);
    testing::Corpus c = testing::load_corpus(file);
    auto expected = testing::expectations(c.text);
    Checker ck(*c.mt);
    std::map<int, std::string> actual;
    for (const auto& d : check_programs(ck, {c.program})) actual[d.span.line] = std::string(to_string(d.code));
    CHECK(actual == expected);
    total += static_cast<int>(expected.size());
  }
  CHECK(total >= 15);
}

TEST_CASE("reflecting outer types into the fibrant level is rejected") {
  testing::Corpus c = testing::load_corpus("2ltt_fibrant.matt");
  Checker ck(*c.mt);
  auto diags = check_programs(ck, {c.program});
  REQUIRE(diags.size() == 1);
  CHECK(diags[0].code == ErrorCode::NotSharp);
}

TEST_CASE("declaration order does not change verdicts") {
  for (const auto& file : testing::corpus_files()) {
    CAPTURE(file);
    testing::Corpus c = testing::load_corpus(file);
    const auto& decls = c.program.decls;
    auto base = testing::verdicts(*c.mt, decls, testing::source_order(decls.size()));
    for (std::uint64_t seed = 1; seed <= 5; ++seed)
      CHECK(testing::verdicts(*c.mt, decls, testing::shuffled_order(*c.mt, decls, seed)) == base);
  }
}

TEST_CASE("conversion suite") {
  auto cases = testing::conversion_cases();
  CHECK(cases.size() >= 10);
  for (const auto& c : cases) {
    CAPTURE(c.label);
    CHECK(c.actual == c.expected);
  }
}

TEST_CASE("the unit key round trips through open and shut") {
  auto trips = testing::round_trips();
  CHECK(trips.size() >= 5);
  for (const auto& t : trips) {
    CAPTURE(t.term);
    CHECK(t.keyed_matches);
    CHECK(t.converts);
  }
}

TEST_CASE("checker error codes") {
  testing::Env e("reflective", "const A : Type @ p; const C : Type @ q; axiom a @ p : A;");
  auto code = [&](const std::string& mode, const std::string& term, const std::string& ty) {
    try {
      e.term(e.ctx(mode, {}), term, ty);
    } catch (const Error& err) {
      return std::string(to_string(err.code()));
    }
    return std::string("OK");
  };
  CHECK(code("p", "a", "A") == "OK");
  CHECK(code("p", "a", "C") == "ModeMismatch");
  CHECK(code("p", "\\x. x", "A") == "ExpectedPi");
  CHECK(code("q", "mod[mu] a", "C") == "ExpectedF");
  CHECK(code("p", "shut[mu] a", "A") == "ExpectedU");
  CHECK(code("p", "b", "A") == "UnknownConstant");
  CHECK(code("p", "a", "F[mu] A") == "ModeMismatch");
}

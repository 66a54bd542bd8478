#include "doctest.h"

#include "matt/diagram.hpp"
#include "matt/error.hpp"
#include "support.hpp"

using namespace matt;
using nlohmann::json;

namespace {

const char* const kDiagrams[] = {"trivial", "single_arrow", "2ltt", "reflective", "comonad", "meet",
                                 "not_meet_preserving"};

json reflective() {
  return json::parse(testing::slurp(testing::diagram_path("reflective")));
}

ErrorCode code_of(const json& doc) {
  try {
    diagram_from_json(doc, testing::diagram_path("reflective").parent_path());
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::MalformedTable;
}

}  // namespace

TEST_CASE("bundled diagrams load and are strict 2-functors") {
  for (const char* name : kDiagrams) {
    CAPTURE(name);
    Diagram d = load_diagram(testing::diagram_path(name));
    auto laws = d.check_laws();
    for (const auto& l : laws) MESSAGE(l);
    CHECK(laws.empty());
  }
}

TEST_CASE("functors are read off the files") {
  Diagram d = load_diagram(testing::diagram_path("reflective"));
  const ModeTheory& mt = d.theory();
  const FinFunctor& mu = d.functor(*mt.find_morphism("mu"));
  CHECK(mu.obj == std::vector<int>{0, 1, 1});
  const FinFunctor& nu_mu = d.functor(*mt.find_morphism("nu_mu"));
  CHECK(nu_mu.obj == std::vector<int>{0, 2, 2});
  CellId eta = *mt.find_cell("eta");
  const FinCat& p = d.cat(*mt.find_mode("p"));
  CHECK(d.cell_at(eta, 1) == p.hom(1, 2)[0]);
  CHECK(d.cell_at(eta, 2) == p.id(2));
}

TEST_CASE("malformed diagrams") {
  SUBCASE("composition witnesses") {
    json doc = reflective();
    doc["witnesses"] = json::array({json::object()});
    CHECK(code_of(doc) == ErrorCode::MalformedDiagram);
  }
  SUBCASE("non-monotone object map") {
    json doc = reflective();
    doc["functors"]["mu"]["objects"] = {{"0", "1"}, {"1", "0"}, {"2", "1"}};
    CHECK(code_of(doc) == ErrorCode::MalformedDiagram);
  }
  SUBCASE("missing functor") {
    json doc = reflective();
    doc["functors"].erase("nu");
    CHECK(code_of(doc) == ErrorCode::MalformedDiagram);
  }
  SUBCASE("composition not strict") {
    json doc = reflective();
    doc["functors"]["nu"]["objects"] = {{"0", "1"}, {"1", "2"}};
    CHECK(code_of(doc) == ErrorCode::MalformedDiagram);
  }
  SUBCASE("cell without components") {
    json doc = reflective();
    doc["functors"]["nu"]["objects"] = {{"0", "0"}, {"1", "1"}};
    CHECK(code_of(doc) == ErrorCode::MalformedDiagram);
  }
  SUBCASE("unknown mode") {
    json doc = reflective();
    doc["categories"]["r"] = {{"chain", 1}};
    CHECK(code_of(doc) == ErrorCode::MalformedDiagram);
  }
  SUBCASE("bad chain") {
    json doc = reflective();
    doc["categories"]["p"] = {{"chain", 0}};
    CHECK(code_of(doc) == ErrorCode::MalformedDiagram);
  }
}

TEST_CASE("explicit categories in diagram files") {
  json doc = json::parse(R"({
    "objects": ["x", "y"],
    "arrows": [{"name": "f", "src": "x", "dst": "y"}, {"name": "g", "src": "x", "dst": "y"}],
    "compose": []
  })");
  FinCat c = fincat_from_json(doc);
  CHECK(c.num_arrows() == 4);
  CHECK(c.find_arrow("g"));
  doc["arrows"][1]["dst"] = "z";
  CHECK_THROWS_AS(fincat_from_json(doc), Error);
}

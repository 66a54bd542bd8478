#include "doctest.h"

#include "matt/error.hpp"
#include "matt/fincat.hpp"
#include "support.hpp"

using namespace matt;

namespace {

FinCat chain(int n) {
  std::vector<std::string> els;
  std::vector<std::pair<int, int>> leq;
  for (int i = 0; i < n; ++i) {
    els.push_back(std::to_string(i));
    if (i) leq.push_back({i - 1, i});
  }
  return FinCat::poset(els, leq);
}

// 00 <= 01, 10 <= 11
FinCat square() { return FinCat::poset({"00", "01", "10", "11"}, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}); }

int obj(const FinCat& c, const std::string& n) { return *c.find_object(n); }

}  // namespace

TEST_CASE("posets are transitively closed") {
  FinCat c = chain(4);
  CHECK(c.num_objects() == 4);
  CHECK(c.num_arrows() == 10);
  CHECK(c.is_poset());
  CHECK(c.check_laws().empty());
  CHECK(c.hom(0, 3).size() == 1);
  CHECK(c.hom(3, 0).empty());
  int f = c.hom(0, 1)[0], g = c.hom(1, 3)[0];
  CHECK(c.compose(g, f) == c.hom(0, 3)[0]);
  CHECK(c.compose(c.id(1), f) == f);
  CHECK_THROWS_AS(c.compose(f, g), Error);
  CHECK_THROWS_AS(FinCat::poset({"a", "b"}, {{0, 1}, {1, 0}}), Error);
}

TEST_CASE("explicit categories") {
  // Two parallel arrows.
  FinCat c({"x", "y"}, {{"f", 0, 1}, {"g", 0, 1}}, {});
  CHECK(c.num_arrows() == 4);
  CHECK_FALSE(c.is_poset());
  CHECK(c.check_laws().empty());
  CHECK(c.hom(0, 1).size() == 2);

  // An idempotent e with e.e = e.
  FinCat idem({"x"}, {{"e", 0, 0}}, {{0, 0, 0}});
  CHECK(idem.compose(0, 0) == 0);
  CHECK_FALSE(idem.is_iso(0));

  // Missing composite.
  CHECK_THROWS_AS(FinCat({"x", "y", "z"}, {{"f", 0, 1}, {"g", 1, 2}}, {}), Error);
}

TEST_CASE("limits in a lattice") {
  FinCat c = square();
  auto top = limit(c, {});
  REQUIRE(top);
  CHECK(c.object_name(top->apex) == "11");

  FinDiagram pair{{obj(c, "01"), obj(c, "10")}, {}};
  auto prod = limit(c, pair);
  REQUIRE(prod);
  CHECK(c.object_name(prod->apex) == "00");
  CHECK(is_limit(c, pair, *prod));

  Cone other{obj(c, "00"), {c.hom(0, 1)[0], c.hom(0, 2)[0]}};
  CHECK(factorizations(c, *prod, other).size() == 1);
  CHECK(cones_at(c, pair, obj(c, "11")).empty());
}

TEST_CASE("absent limits and the search cap") {
  FinCat discrete({"x", "y"}, {}, {});
  CHECK_FALSE(limit(discrete, FinDiagram{{0, 1}, {}}));
  CHECK_FALSE(limit(discrete, FinDiagram{}));

  // three parallel arrows give 3^4 leg tuples over four copies of y
  FinCat c({"x", "y"}, {{"f", 0, 1}, {"g", 0, 1}, {"h", 0, 1}}, {});
  LimitOptions tight;
  tight.cap = 2;
  FinDiagram four{{1, 1, 1, 1}, {}};
  CHECK_THROWS_AS(limit(c, four, tight), Error);
  try {
    limit(c, four, tight);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CapExceeded);
  }
}

TEST_CASE("limit search order does not change the apex up to iso") {
  FinCat c = square();
  for (const auto& probe : probe_diagrams(c)) {
    CAPTURE(probe.label);
    auto base = limit(c, probe.diagram);
    LimitOptions rev;
    rev.order = {3, 2, 1, 0};
    auto other = limit(c, probe.diagram, rev);
    REQUIRE(base.has_value() == other.has_value());
    if (base) CHECK(c.isomorphic(base->apex, other->apex));
  }
}

TEST_CASE("functors and preservation") {
  FinCat c = square();
  FinFunctor id = FinFunctor::identity(c);
  CHECK(id.check_laws().empty());
  // 00 -> 00 and everything else to 11 preserves the order but not binary meets.
  FinFunctor crush{&c, &c, {0, 3, 3, 3}, {}};
  for (int a = 0; a < c.num_arrows(); ++a) crush.arr.push_back(c.hom(crush(c.src(a)), crush(c.dst(a)))[0]);
  CHECK(crush.check_laws().empty());
  FinDiagram pair{{obj(c, "01"), obj(c, "10")}, {}};
  auto prod = limit(c, pair);
  REQUIRE(prod);
  CHECK_FALSE(check_preserves_limit(crush, pair, *prod));
  CHECK(check_preserves_limit(id, pair, *prod));
  CHECK(FinFunctor::compose(crush, id) == crush);

  FinFunctor broken = crush;
  broken.obj[1] = 0;  // 01 -> 00 but 01 <= 11 -> 11: arrows no longer typed
  CHECK_FALSE(broken.check_laws().empty());
}

TEST_CASE("natural transformations") {
  FinCat c = chain(3);
  FinFunctor id = FinFunctor::identity(c);
  FinFunctor top{&c, &c, {2, 2, 2}, {}};
  for (int a = 0; a < c.num_arrows(); ++a) top.arr.push_back(c.id(2));
  FinNat up{&id, &top, {c.hom(0, 2)[0], c.hom(1, 2)[0], c.id(2)}};
  CHECK(up.check_laws().empty());
  FinNat down{&top, &id, {c.id(0), c.id(1), c.id(2)}};
  CHECK_FALSE(down.check_laws().empty());
}

TEST_CASE("probe diagrams cover pairs and cospans") {
  FinCat c = chain(2);
  auto probes = probe_diagrams(c);
  // terminal, three pairs, and the cospans of the single arrow with itself
  CHECK(probes.front().label == "terminal");
  int pairs = 0;
  for (const auto& p : probes) pairs += p.label.rfind("product", 0) == 0;
  CHECK(pairs == 3);
}

TEST_CASE("comma categories of cells") {
  ModeTheory mt = testing::theory("reflective");
  MorId mu = *mt.find_morphism("mu"), nu = *mt.find_morphism("nu");
  CommaCat k = comma(mt, mu, mu);
  // (id:p, id:mu) and (nu_mu, id:mu), joined by eta
  CHECK(k.objects.size() == 2);
  CHECK(k.cat.num_arrows() == 3);
  CHECK(k.cat.check_laws().empty());
  REQUIRE(k.find(mt.identity(*mt.find_mode("p")), mt.identity(mu)));
  CHECK_THROWS_AS(comma(mt, mu, nu), Error);
}

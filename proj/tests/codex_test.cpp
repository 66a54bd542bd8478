#include "doctest.h"

#include <set>

#include "matt/codex.hpp"
#include "matt/error.hpp"
#include "support.hpp"

using namespace matt;

namespace {

struct Count {
  const char* diagram;
  const char* mode;
  int objects;
  int arrows;
};

// Independently brute-forced object and arrow counts.
const Count kCounts[] = {
    {"2ltt", "e", 2, 3},        {"2ltt", "f", 2, 3},        {"comonad", "p", 4, 10},
    {"meet", "p", 7, 25},       {"not_meet_preserving", "p", 4, 9},
    {"not_meet_preserving", "q", 13, 58},
    {"reflective", "p", 4, 10}, {"reflective", "q", 3, 6},  {"single_arrow", "p", 2, 3},
    {"single_arrow", "q", 3, 6}, {"trivial", "p", 3, 6},
};

std::set<std::string> object_names(const CodexCategory& c) {
  std::set<std::string> out;
  for (int o = 0; o < c.cat.num_objects(); ++o) out.insert(c.describe(o));
  return out;
}

bool bijective(const FinFunctor& f) {
  std::set<int> objs(f.obj.begin(), f.obj.end()), arrs(f.arr.begin(), f.arr.end());
  return static_cast<int>(objs.size()) == f.target->num_objects() &&
         static_cast<int>(f.obj.size()) == f.target->num_objects() &&
         static_cast<int>(arrs.size()) == f.target->num_arrows() &&
         static_cast<int>(f.arr.size()) == f.target->num_arrows();
}

}  // namespace

TEST_CASE("object and arrow counts") {
  for (const Count& c : kCounts) {
    CAPTURE(c.diagram);
    CAPTURE(c.mode);
    Diagram d = load_diagram(testing::diagram_path(c.diagram));
    CodexCategory k = enumerate_codex(d, *d.theory().find_mode(c.mode), 1'000'000);
    CHECK(k.cat.num_objects() == c.objects);
    CHECK(k.cat.num_arrows() == c.arrows);
    CHECK(k.cat.check_laws().empty());
    for (const auto& x : k.objects) CHECK(check_oplax_object(d, k.slice, x).empty());
  }
}

TEST_CASE("single arrow") {
  Diagram d = load_diagram(testing::diagram_path("single_arrow"));
  const ModeTheory& mt = d.theory();
  ModeId p = *mt.find_mode("p"), q = *mt.find_mode("q");
  MorId mu = *mt.find_morphism("mu");
  Codex cx(d);
  CHECK(object_names(cx.at(q)) == std::set<std::string>{"(0, 0)", "(0, 1)", "(1, 1)"});
  CHECK(cx.at(q).cat.is_poset());

  SUBCASE("the source mode is unchanged") {
    const FinFunctor& r = cx.reflect(mt.identity(p));
    CHECK(bijective(r));
    CHECK(r.check_laws().empty());
  }
  SUBCASE("reflections read components") {
    const CodexCategory& k = cx.at(q);
    const FinFunctor& r = cx.reflect(mu);
    for (int o = 0; o < k.cat.num_objects(); ++o) CHECK(r(o) == k.component(o, mu));
    CHECK(r(*k.cat.find_object("(0, 1)")) == 1);
    CHECK(cx.reflect(mt.identity(q))(*k.cat.find_object("(0, 1)")) == 0);
  }
  SUBCASE("inclusions are right adjoint to reflections") {
    for (MorId w : {mu, mt.identity(q), mt.identity(p)}) {
      const Inclusion& inc = cx.incl(w);
      auto adj = verify_adjunction(cx.reflect(w), inc.functor, inc.counit);
      for (const auto& f : adj.failures) MESSAGE(f);
      CHECK(adj.failures.empty());
      CHECK(adj.checks > 0);
    }
  }
}

TEST_CASE("lock functors compose strictly") {
  for (const char* name : {"reflective", "comonad", "meet", "2ltt"}) {
    CAPTURE(name);
    Diagram d = load_diagram(testing::diagram_path(name));
    const ModeTheory& mt = d.theory();
    Codex cx(d);
    for (std::size_t a = 0; a < mt.num_morphisms(); ++a)
      for (std::size_t b = 0; b < mt.num_morphisms(); ++b) {
        MorId f{static_cast<std::int32_t>(a)}, g{static_cast<std::int32_t>(b)};
        if (mt.dst(f) != mt.src(g)) continue;
        FinFunctor both = FinFunctor::compose(cx.lock_functor(f), cx.lock_functor(g));
        CHECK(both == cx.lock_functor(mt.compose(g, f)));
      }
    for (std::size_t m = 0; m < mt.num_modes(); ++m) {
      ModeId r{static_cast<std::int32_t>(m)};
      CHECK(cx.lock_functor(mt.identity(r)) == FinFunctor::identity(cx.at(r).cat));
    }
  }
}

TEST_CASE("mates of identity decompositions are identities") {
  Diagram d = load_diagram(testing::diagram_path("reflective"));
  const ModeTheory& mt = d.theory();
  Codex cx(d);
  for (std::size_t m = 0; m < mt.num_modes(); ++m) {
    ModeId r{static_cast<std::int32_t>(m)};
    const Slice& s = cx.at(r).slice;
    for (int i = 0; i < static_cast<int>(s.mors.size()); ++i) {
      const FinCat& src = d.cat(mt.src(s.mors[i]));
      const Inclusion& inc = cx.incl(s.mors[i]);
      for (int g = 0; g < src.num_objects(); ++g) {
        int arrow = cx.mate(r, s.identity_decomp(i), g);
        CHECK(arrow == cx.at(r).cat.id(inc.functor(g)));
      }
    }
  }
}

TEST_CASE("lock adjoints") {
  Diagram d = load_diagram(testing::diagram_path("comonad"));
  const ModeTheory& mt = d.theory();
  Codex cx(d);
  MorId mu = *mt.find_morphism("mu");
  const LockAdjoint& adj = cx.lock_adjoint(mu);
  auto check = verify_adjunction(cx.lock_functor(mu), adj.functor, adj.counit);
  for (const auto& f : check.failures) MESSAGE(f);
  CHECK(check.failures.empty());
}

TEST_CASE("extending the reflections recovers the identity") {
  for (const char* name : {"single_arrow", "comonad"}) {
    CAPTURE(name);
    Diagram d = load_diagram(testing::diagram_path(name));
    Codex cx(d);
    ColaxMap g = reflect_colax(cx);
    for (std::size_t m = 0; m < d.theory().num_modes(); ++m) {
      ModeId r{static_cast<std::int32_t>(m)};
      FinFunctor ext = dextrify_colax(cx, g, r);
      CHECK(ext.check_laws().empty());
      const FinCat& c = cx.at(r).cat;
      for (int o = 0; o < c.num_objects(); ++o) CHECK(c.isomorphic(ext(o), o));
    }
  }
}

TEST_CASE("missing colax components are reported") {
  Diagram d = load_diagram(testing::diagram_path("single_arrow"));
  Codex cx(d);
  ColaxMap g = reflect_colax(cx);
  g.cell = [](MorId, int) { return std::optional<int>{}; };
  ModeId q = *d.theory().find_mode("q");
  try {
    dextrify_colax(cx, g, q);
    FAIL("expected NotColax");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotColax);
  }
}

TEST_CASE("enumeration cap") {
  Diagram d = load_diagram(testing::diagram_path("not_meet_preserving"));
  try {
    enumerate_codex(d, *d.theory().find_mode("q"), 10);
    FAIL("expected CapExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CapExceeded);
  }
}

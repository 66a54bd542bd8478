#include "doctest.h"

#include "matt/cell_expr.hpp"
#include "matt/error.hpp"
#include "matt/mode_theory.hpp"
#include "support.hpp"

using namespace matt;

namespace {

const char* const kBundled[] = {"trivial", "single_arrow", "2ltt", "reflective", "comonad", "meet"};

MorId mor(const ModeTheory& mt, const std::string& n) { return *mt.find_morphism(n); }
CellId cell(const ModeTheory& mt, const std::string& n) { return *mt.find_cell(n); }

}  // namespace

TEST_CASE("every bundled theory validates") {
  for (const char* name : kBundled) {
    CAPTURE(name);
    ModeTheory mt = testing::theory(name);
    ValidationReport r = validate_mode_theory(mt);
    for (const auto& v : r.violations) MESSAGE(v.axiom << ": " << v.detail);
    CHECK(r.ok());
  }
}

TEST_CASE("each mutant reports the axiom it breaks") {
  int seen = 0;
  for (const auto& entry : std::filesystem::directory_iterator(testing::source_dir() / "tests/data/mutants")) {
    const std::string axiom = entry.path().stem().string();
    CAPTURE(axiom);
    ValidationReport r = validate_mode_theory(load_mode_theory(entry.path()));
    CHECK_FALSE(r.ok());
    CHECK(r.has(axiom));
    ++seen;
  }
  CHECK(seen >= 10);
}

TEST_CASE("composition table lookups") {
  ModeTheory mt = testing::theory("reflective");
  MorId mu = mor(mt, "mu"), nu = mor(mt, "nu");
  ModeId q = *mt.find_mode("q");
  CHECK(mt.compose(mt.identity(q), mu) == mu);
  CHECK(mt.compose(mu, nu) == mt.identity(q));
  CHECK(mt.compose(nu, mu) == mor(mt, "nu_mu"));
  CHECK(mt.name(mt.compose(nu, mu)) == "nu_mu");
  CHECK_THROWS_AS(mt.compose(mu, mu), Error);
}

TEST_CASE("composition is associative on every bundled theory") {
  for (const char* name : kBundled) {
    ModeTheory mt = testing::theory(name);
    std::size_t n = mt.num_morphisms();
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c) {
          MorId f{static_cast<std::int32_t>(a)}, g{static_cast<std::int32_t>(b)}, h{static_cast<std::int32_t>(c)};
          if (mt.dst(f) != mt.src(g) || mt.dst(g) != mt.src(h)) continue;
          CHECK(mt.compose(mt.compose(h, g), f) == mt.compose(h, mt.compose(g, f)));
        }
  }
}

TEST_CASE("cell algebra") {
  ModeTheory mt = testing::theory("reflective");
  SUBCASE("identities") {
    CHECK(cell_algebra(mt, "id:mu . id:mu") == mt.identity(mor(mt, "mu")));
  }
  SUBCASE("the unit whiskered by mu is trivial") {
    CHECK(cell_algebra(mt, "mu <| eta") == cell(mt, "id:mu"));
    CHECK(cell_algebra(mt, "eta |> nu") == cell(mt, "id:nu"));
  }
  SUBCASE("bracketings agree") {
    CHECK(cell_algebra(mt, "(nu_mu <| eta) . eta") == cell_algebra(mt, "nu_mu <| eta . eta"));
    CHECK(cell_algebra(mt, "(eta |> nu_mu) . eta") == cell_algebra(mt, "(eta |> nu_mu) . (id:p <| eta)"));
  }
  SUBCASE("errors") {
    auto code = [&](const char* text) {
      try {
        cell_algebra(mt, text);
      } catch (const Error& e) {
        return e.code();
      }
      return ErrorCode::MalformedTable;
    };
    CHECK(code("eta . eta") == ErrorCode::IllTypedCellExpression);
    CHECK(code("mu <| id:mu") == ErrorCode::IllTypedCellExpression);
    CHECK(code("zeta") == ErrorCode::UnknownName);
    CHECK(code("(eta") == ErrorCode::ParseError);
  }
}

TEST_CASE("builder synthesizes identities and rejects ill-typed entries") {
  ModeTheory mt = ModeTheoryBuilder().mode("a").mode("b").morphism("f", "a", "b").sharp("f").build();
  REQUIRE(mt.find_morphism("id:a"));
  REQUIRE(mt.find_cell("id:f"));
  CHECK(mt.compose(mt.identity(*mt.find_mode("b")), mor(mt, "f")) == mor(mt, "f"));
  CHECK(mt.vcompose(cell(mt, "id:f"), cell(mt, "id:f")) == cell(mt, "id:f"));
  CHECK_FALSE(validate_mode_theory(mt).ok());  // identities carry no classes here

  CHECK_THROWS_AS(ModeTheoryBuilder().mode("a").morphism("f", "a", "b").build(), Error);
  CHECK_THROWS_AS(
      ModeTheoryBuilder().mode("a").morphism("f", "a", "a").compose("f", "f", "id:b").build(), Error);
}

TEST_CASE("json round trip preserves the tables") {
  for (const char* name : kBundled) {
    CAPTURE(name);
    ModeTheory mt = testing::theory(name);
    ModeTheory back = mode_theory_from_json(mt.to_json());
    CHECK(back.to_json() == mt.to_json());
    CHECK(back.num_cells() == mt.num_cells());
  }
}

TEST_CASE("validation is pure") {
  ModeTheory mt = load_mode_theory(testing::source_dir() / "tests/data/mutants/vcompose-associativity.mt");
  ValidationReport a = validate_mode_theory(mt), b = validate_mode_theory(mt);
  REQUIRE(a.violations.size() == b.violations.size());
  for (std::size_t i = 0; i < a.violations.size(); ++i) CHECK(a.violations[i].detail == b.violations[i].detail);
}

TEST_CASE("adjoint data of the bundled theories") {
  ModeTheory two = testing::theory("2ltt");
  const Adjoint* a = two.adjoint(mor(two, "iota"));
  REQUIRE(a);
  CHECK(two.name(a->dagger) == "iota_inv");
  CHECK(two.is_identity(a->unit));
  CHECK(two.is_identity(a->counit));
  CHECK(two.sinister(mor(two, "iota")));
  CHECK_FALSE(two.sharp(mor(two, "iota")));

  ModeTheory refl = testing::theory("reflective");
  const Adjoint* b = refl.adjoint(mor(refl, "mu"));
  REQUIRE(b);
  CHECK(refl.name(b->unit) == "eta");
}

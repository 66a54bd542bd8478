#include "doctest.h"

#include "matt/error.hpp"
#include "matt/parser.hpp"
#include "matt/syntax.hpp"
#include "support.hpp"

using namespace matt;

namespace {

MorId mor(const ModeTheory& mt, const std::string& n) { return *mt.find_morphism(n); }

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::MalformedTable;
}

}  // namespace

TEST_CASE("locks compose eagerly and identities vanish") {
  ModeTheory mt = testing::theory("reflective");
  ModeId p = *mt.find_mode("p"), q = *mt.find_mode("q");
  Context g(mt, p);
  Context one = g.push_lock(mor(mt, "nu"));
  CHECK(one.mode() == q);
  CHECK(one.entries().size() == 1);
  Context two = one.push_lock(mor(mt, "mu"));
  CHECK(two.mode() == p);
  CHECK(two.entries().size() == 1);
  CHECK(two.locks() == mor(mt, "nu_mu"));
  CHECK(two.push_lock(mt.identity(p)).entries().size() == 1);
  CHECK(g.push_lock(mt.identity(p)).entries().empty());
}

TEST_CASE("locks after a variable") {
  ModeTheory mt = testing::theory("reflective");
  ModeId p = *mt.find_mode("p");
  Context g = Context(mt, p).extend(mt.identity(p), mk::constant("A"), "x");
  CHECK(g.locks_after(0) == mt.identity(p));
  Context h = g.push_lock(mor(mt, "nu")).push_lock(mor(mt, "mu"));
  CHECK(h.locks_after(0) == mor(mt, "nu_mu"));
  Context k = h.extend(mt.identity(p), mk::constant("A"), "y");
  CHECK(k.locks_after(0) == mor(mt, "nu_mu"));
  CHECK(k.locks_after(1) == mt.identity(p));
}

TEST_CASE("context errors") {
  ModeTheory mt = testing::theory("reflective");
  ModeId p = *mt.find_mode("p");
  CHECK(code_of([&] { Context(mt, p).push_lock(mor(mt, "mu")); }) == ErrorCode::ModeMismatch);
  CHECK(code_of([&] { Context(mt, p).extend(mor(mt, "mu"), mk::constant("A")); }) == ErrorCode::ModeMismatch);
}

TEST_CASE("weakening and substitution on levels") {
  ModeTheory mt = testing::theory("trivial");
  ModeId p = *mt.find_mode("p");
  Context g = Context(mt, p).extend(mt.identity(p), mk::constant("A"), "x");
  CellId key = mt.identity(mt.identity(p));
  ExprPtr body = mk::app(mk::var(1, key), mk::var(0, key), mt.identity(p));
  ExprPtr w = weaken(body, 1, 2);
  CHECK(same(w, mk::app(mk::var(3, key), mk::var(0, key), mt.identity(p))));
  ExprPtr s = subst(g, body, mk::constant("a"));
  CHECK(same(s, mk::app(mk::constant("a"), mk::var(0, key), mt.identity(p))));
}

TEST_CASE("keys are transported along a cell") {
  ModeTheory mt = testing::theory("meet");
  ModeId p = *mt.find_mode("p");
  MorId zero = mor(mt, "zero");
  CellId le = *mt.find_cell("le");
  Context g = Context(mt, p).extend(zero, mk::constant("A"), "x");
  ExprPtr under = mk::var(0, mt.identity(zero));
  CHECK(same(apply_key(g, under, le), mk::var(0, le)));
  CHECK(same(apply_key(g, under, mt.identity(zero)), under));
}

TEST_CASE("parser accepts every construct and printing reparses") {
  for (const char* name : {"2ltt_ok", "reflective_ok", "meet_ok", "comonad_ok", "single_arrow_ok", "trivial_ok",
                           "2ltt_bad", "reflective_bad", "meet_bad", "comonad_bad"}) {
    CAPTURE(name);
    const std::string text = testing::slurp(testing::corpus_path(std::string(name) + ".matt"));
    auto rel = leading_mode_theory(text);
    REQUIRE(rel);
    ModeTheory mt = load_mode_theory(testing::corpus_path(*rel));
    Program prog = parse_program(mt, text, name);
    CHECK(prog.decls.size() > 3);
    std::string printed = print_program(mt, prog);
    Program again = parse_program(mt, printed, name);
    REQUIRE(again.decls.size() == prog.decls.size());
    CHECK(print_program(mt, again) == printed);
    for (std::size_t i = 0; i < prog.decls.size(); ++i) {
      CHECK(again.decls[i].name == prog.decls[i].name);
      if (prog.decls[i].type) CHECK(same(again.decls[i].type, prog.decls[i].type));
      if (prog.decls[i].body) CHECK(same(again.decls[i].body, prog.decls[i].body));
    }
  }
}

TEST_CASE("parse errors") {
  ModeTheory mt = testing::theory("reflective");
  CHECK(code_of([&] { parse_program(mt, "def x @ p : A = ;"); }) == ErrorCode::ParseError);
  CHECK(code_of([&] { parse_program(mt, "const A : Type @ r;"); }) == ErrorCode::UnknownName);
  CHECK(code_of([&] { parse_program(mt, "def f @ p : F[kappa] A = a;"); }) == ErrorCode::UnknownName);
  CHECK(code_of([&] { parse_expr(mt, "\\x."); }) == ErrorCode::ParseError);
  CHECK(parse_expr(mt, "\\x. y")->kids[0]->kind == Kind::Const);
  CHECK(parse_program(mt, "-- only a comment\n").decls.empty());
}

TEST_CASE("expressions parse to the expected shapes") {
  ModeTheory mt = testing::theory("reflective");
  ExprPtr e = parse_expr(mt, "\\x. mod[nu_mu] x^eta");
  REQUIRE(e->kind == Kind::Lam);
  const ExprPtr& m = e->kids[0];
  REQUIRE(m->kind == Kind::ModIntro);
  CHECK(*m->mod == mor(mt, "nu_mu"));
  REQUIRE(m->kids[0]->kind == Kind::Var);
  CHECK(m->kids[0]->level == 0);
  CHECK(*m->kids[0]->key == *mt.find_cell("eta"));

  ExprPtr pi = parse_expr(mt, "(x :^mu A) -> F[mu] A");
  REQUIRE(pi->kind == Kind::Pi);
  CHECK(*pi->mod == mor(mt, "mu"));
  CHECK(pi->kids[1]->kind == Kind::FMod);

  ExprPtr let = parse_expr(mt, "\\y. let[nu, mu] mod x = y in mod[nu_mu] x motive w. F[nu_mu] A");
  REQUIRE(let->kids[0]->kind == Kind::LetMod);
  CHECK(*let->kids[0]->frame == mor(mt, "nu"));
  CHECK(let->kids[0]->kids[0] != nullptr);
}

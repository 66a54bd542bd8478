#pragma once

// Definitional-equality cases shared by the unit tests and the acceptance run.

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "matt/checker.hpp"
#include "support.hpp"

namespace testing {

// A theory with a signature and helpers that elaborate surface text.
struct Env {
  std::unique_ptr<matt::ModeTheory> mt;
  std::unique_ptr<matt::Checker> ck;

  Env(const std::string& theory, const std::string& decls)
      : mt(std::make_unique<matt::ModeTheory>(testing::theory(theory))), ck(std::make_unique<matt::Checker>(*mt)) {
    for (const auto& d : matt::parse_program(*mt, decls).decls) ck->declare(d);
  }

  matt::MorId mor(const std::string& n) const { return *mt->find_morphism(n); }
  matt::CellId cell(const std::string& n) const { return *mt->find_cell(n); }

  static std::vector<std::string> names(const matt::Context& ctx) {
    std::vector<std::string> out;
    for (int i = 0; i < ctx.num_vars(); ++i) out.push_back(ctx.var(i).name);
    return out;
  }

  matt::Context ctx(const std::string& mode, const std::vector<std::pair<std::string, std::string>>& vars) const {
    matt::Context c(*mt, *mt->find_mode(mode));
    for (const auto& [name, ty] : vars) c = c.extend(mt->identity(c.mode()), type(c, ty), name);
    return c;
  }

  matt::Type type(const matt::Context& c, const std::string& text) const {
    return ck->check_type(c, matt::parse_expr(*mt, text, names(c)));
  }

  matt::Term term(const matt::Context& c, const std::string& text, const std::string& ty) const {
    return ck->check(c, matt::parse_expr(*mt, text, names(c)), type(c, ty));
  }

  bool conv(const matt::Context& c, const std::string& ty, const matt::Term& a, const matt::Term& b) const {
    return ck->convert(c, type(c, ty), a, b);
  }
};

struct ConvCase {
  std::string label;
  bool expected;
  bool actual;
};

inline std::vector<ConvCase> conversion_cases() {
  using namespace matt;
  std::vector<ConvCase> out;
  const char* nat =
      "const Nat : Type @ f; axiom zero @ f : Nat; axiom succ @ f : (n : Nat) -> Nat;"
      "const B : Type @ f; axiom b @ f : B; axiom b2 @ f : B;";
  {
    Env e("2ltt", nat);
    Context g = e.ctx("f", {});
    Term fn = e.term(g, "\\n. succ n", "(n : Nat) -> Nat");
    Term lhs = mk::app(fn, e.term(g, "zero", "Nat"), e.mt->identity(g.mode()));
    out.push_back({"beta Pi", true, e.conv(g, "Nat", lhs, e.term(g, "succ zero", "Nat"))});
    out.push_back({"beta Pi, wrong result", false, e.conv(g, "Nat", lhs, e.term(g, "zero", "Nat"))});
  }
  {
    Env e("comonad", "const A : Type @ p; axiom a @ p : A; axiom a2 @ p : A;");
    Context g = e.ctx("p", {});
    MorId mu = e.mor("mu");
    Term scrut = e.term(g, "mod[mu] a", "F[mu] A");
    Term body = e.term(g.extend(mu, e.type(g, "A"), "x"), "x^eps", "A");
    Term lhs = mk::let_mod(e.mt->identity(g.mode()), mu, "x", scrut, body, "", nullptr);
    out.push_back({"beta F", true, e.conv(g, "A", lhs, e.term(g, "a", "A"))});
    out.push_back({"beta F, wrong result", false, e.conv(g, "A", lhs, e.term(g, "a2", "A"))});
  }
  {
    Env e("2ltt", nat);
    Context g = e.ctx("f", {});
    MorId iota = e.mor("iota");
    Term lhs = mk::open(iota, e.term(g.push_lock(iota), "shut[iota] b", "U[iota] B"));
    out.push_back({"beta U", true, e.conv(g, "B", lhs, e.term(g, "b", "B"))});
    out.push_back({"beta U, wrong result", false, e.conv(g, "B", lhs, e.term(g, "b2", "B"))});
  }
  {
    Env e("2ltt", nat);
    Context g = e.ctx("f", {{"h", "(n : Nat) -> Nat"}, {"k", "(n : Nat) -> Nat"}});
    const char* fn = "(n : Nat) -> Nat";
    out.push_back({"eta Pi", true, e.conv(g, fn, e.term(g, "h", fn), e.term(g, "\\n. h n", fn))});
    out.push_back({"eta Pi, other function", false, e.conv(g, fn, e.term(g, "h", fn), e.term(g, "\\n. k n", fn))});
  }
  {
    Env e("2ltt", nat);
    Context g = e.ctx("e", {{"a", "U[iota] Nat"}, {"c", "U[iota] Nat"}});
    const char* u = "U[iota] Nat";
    out.push_back({"eta U", true, e.conv(g, u, e.term(g, "a", u), e.term(g, "shut[iota] (open[iota] a)", u))});
    out.push_back(
        {"eta U, other variable", false, e.conv(g, u, e.term(g, "a", u), e.term(g, "shut[iota] (open[iota] c)", u))});
  }
  {
    Env e("comonad", "const A : Type @ p;");
    Context g = e.ctx("p", {{"y", "F[mu] A"}});
    Term expanded = e.term(g, "let[id:p, mu] mod x = y in mod[mu] x", "F[mu] A");
    out.push_back({"eta F", false, e.conv(g, "F[mu] A", e.term(g, "y", "F[mu] A"), expanded)});
  }
  return out;
}

struct RoundTrip {
  std::string term;
  bool keyed_matches;  // M[key eta] agrees with the hand-keyed term
  bool converts;       // M == shut(open(M[key eta]))
};

// Terms M : U[mu] C over y : U[mu] C in the reflective theory, built from
// y, d and shut[mu] c by applying h and by going through C with g.
inline std::vector<RoundTrip> round_trips() {
  using namespace matt;
  Env e("reflective",
        "const C : Type @ q; axiom c @ q : C; axiom g @ q : (x : C) -> C;"
        "axiom h @ p : (u : U[mu] C) -> U[mu] C; axiom d @ p : U[mu] C;");
  Context ctx = e.ctx("p", {{"y", "U[mu] C"}});
  Context under = ctx.push_lock(e.mor("nu")).push_lock(e.mor("mu"));
  CellId eta = e.cell("eta");

  std::vector<std::pair<std::string, std::string>> terms = {{"y", "y^eta"}, {"d", "d"}, {"shut[mu] c", "shut[mu] c"}};
  auto through = [](const std::string& m) { return "shut[mu] (g (open[mu] (" + m + ")))"; };
  std::vector<std::pair<std::string, std::string>> next;
  for (const auto& [m, keyed] : terms) {
    next.push_back({"h (" + m + ")", "h (" + keyed + ")"});
    // open cannot infer a shut, so only neutral terms go through C
    if (m.rfind("shut", 0) != 0) next.push_back({through(keyed), through(keyed)});
  }
  terms.insert(terms.end(), next.begin(), next.end());

  std::vector<RoundTrip> out;
  for (const auto& [m, keyed] : terms) {
    Term t = e.term(ctx, m, "U[mu] C");
    Term moved = apply_key(ctx, t, eta);
    bool match = same(moved, e.term(under, keyed, "U[mu] C"));
    Term round = mk::shut(e.mor("mu"), mk::open(e.mor("mu"), moved));
    out.push_back({m, match, e.conv(ctx, "U[mu] C", t, round)});
  }
  return out;
}

}  // namespace testing

#pragma once

// Core syntax: one expression family for terms and types, contexts with
// eagerly normalized locks, and the admissible operations on syntax
// (weakening, key transport, substitution).
//
// Variables are de Bruijn levels counting variable entries only; locks are
// not indexable.  A variable occurrence carries a key, a 2-cell from its
// annotation to the locks crossed between binder and use.

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "matt/mode_theory.hpp"

namespace matt {

enum class Kind : std::uint8_t {
  Var,
  Lam,
  App,
  ModIntro,
  LetMod,
  Shut,
  Open,
  Const,
  Pi,
  FMod,
  UMod,
  TConst,
  Univ,  // tail of a type-constant telescope; never a type of terms
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;
using Term = ExprPtr;
using Type = ExprPtr;

// Child layout by kind:
//   Lam {body}           App {fn, arg}        ModIntro {body}
//   LetMod {motive?, scrutinee, body}         Shut {body}      Open {body}
//   Pi {domain, codomain}  FMod {A}  UMod {A}  TConst {args...}
//
// Optional fields are filled in by the checker: the modality of an App, a
// Pi's default identity annotation, a Var's default identity key, and the
// parameter modalities of a TConst spine.
struct Expr {
  Kind kind = Kind::Var;
  Span span;
  int level = 0;
  std::optional<CellId> key;
  std::optional<MorId> mod;    // mu of App, ModIntro, LetMod, Shut, Open, Pi, FMod, UMod
  std::optional<MorId> frame;  // nu of LetMod
  std::string name;            // binder name, or constant name
  std::string name2;           // LetMod motive binder
  std::vector<ExprPtr> kids;
  std::vector<MorId> spine_mods;
};

namespace mk {
ExprPtr var(int level, std::optional<CellId> key = {}, std::string name = {}, Span span = {});
ExprPtr lam(std::string name, ExprPtr body, Span span = {});
ExprPtr app(ExprPtr fn, ExprPtr arg, std::optional<MorId> mu = {}, Span span = {});
ExprPtr mod_intro(MorId mu, ExprPtr body, Span span = {});
ExprPtr let_mod(MorId frame, MorId mu, std::string x, ExprPtr scrutinee, ExprPtr body,
                std::string y, ExprPtr motive, Span span = {});
ExprPtr shut(MorId mu, ExprPtr body, Span span = {});
ExprPtr open(MorId mu, ExprPtr body, Span span = {});
ExprPtr constant(std::string name, Span span = {});
ExprPtr pi(std::optional<MorId> mu, std::string name, ExprPtr dom, ExprPtr cod, Span span = {});
ExprPtr fmod(MorId mu, ExprPtr a, Span span = {});
ExprPtr umod(MorId mu, ExprPtr a, Span span = {});
ExprPtr tconst(std::string name, std::vector<MorId> mods, std::vector<ExprPtr> args,
               Span span = {});
ExprPtr univ(Span span = {});
}  // namespace mk

// Copy of `e` with new children; all other fields are kept.
ExprPtr with_kids(const ExprPtr& e, std::vector<ExprPtr> kids);

// Structural equality up to binder names and spans.
bool same(const ExprPtr& a, const ExprPtr& b);

// --------------------------------------------------------------------------
// Contexts

struct VarEntry {
  MorId mod;
  Type type;
  std::string name;
};

struct LockEntry {
  MorId mod;
};

using Entry = std::variant<VarEntry, LockEntry>;

class Context {
public:
  Context(const ModeTheory& mt, ModeId mode) : mt_(&mt), mode_(mode), start_(mode) {}

  const ModeTheory& theory() const { return *mt_; }
  ModeId mode() const { return mode_; }
  ModeId start_mode() const { return start_; }
  const std::vector<Entry>& entries() const { return entries_; }
  int num_vars() const { return static_cast<int>(var_pos_.size()); }
  const VarEntry& var(int level) const;

  // Gamma / mu.  Identity locks vanish; a trailing lock nu becomes nu . mu.
  // Throws ModeMismatch unless dst(mu) == mode().
  Context push_lock(MorId mu) const;

  // Gamma, x :^mu A.  Throws ModeMismatch unless dst(mu) == mode() and
  // NotTangible unless mu is tangible.
  Context extend(MorId mu, Type a, std::string name = {}) const;

  // The context before variable `level`.
  Context prefix(int level) const;

  // Composite of the locks after variable `level` (identity if none).
  MorId locks_after(int level) const;
  // Composite of all locks in the context.
  MorId locks() const;

private:
  const ModeTheory* mt_;
  ModeId mode_;
  ModeId start_;
  std::vector<Entry> entries_;
  std::vector<ModeId> mode_after_;  // mode after each entry
  std::vector<std::size_t> var_pos_;
};

// locks() of the segment `entries` read from a context at mode `start`:
// locks(empty) = 1, locks(G, x) = locks(G), locks(G / mu) = locks(G) . mu.
MorId locks_of(const ModeTheory& mt, ModeId start, const std::vector<Entry>& entries);

// --------------------------------------------------------------------------
// Operations on syntax

// Levels >= from shift by `by`; keys are unchanged.
ExprPtr weaken(const ExprPtr& e, int from, int by);

// Moves `t`, well-formed in pre / rho, along beta : rho => L . rho' into a
// context pre, ext / rho' whose extension ext adds `extra` variables and has
// lock composite L.  A free variable j of `pre` whose key is gamma at a
// position under locks K inside t gets the key
//     (locks_after(j) <| (beta |> K)) . gamma
// and variables bound inside t shift by `extra`.
ExprPtr transport(const Context& pre, const ExprPtr& t, CellId beta, int extra);

// t[key beta] for t in gamma / rho and beta : rho => rho', giving a term in
// gamma / rho'.  Identity keys act as the identity.
inline ExprPtr apply_key(const Context& gamma, const ExprPtr& t, CellId beta) {
  return transport(gamma, t, beta, 0);
}

// body[x <- a] for body in gamma, x :^mu A and a in gamma / mu.
ExprPtr subst(const Context& gamma, const ExprPtr& body, const ExprPtr& a);

// --------------------------------------------------------------------------
// Printing

// Surface rendering.  `names` gives display names for levels in scope;
// binder names are freshened so that the output reparses to the same
// structure.
std::string print(const ModeTheory& mt, const ExprPtr& e, std::vector<std::string> names = {});
std::string print(const Context& ctx, const ExprPtr& e);
std::string print(const Context& ctx);

}  // namespace matt

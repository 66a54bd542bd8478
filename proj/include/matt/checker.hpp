#pragma once

// Bidirectional checking and conversion.
//
// check_type, infer and check return elaborated syntax: every optional field
// of the input (App modalities, default keys, default Pi annotations, TConst
// spine modalities) is filled in, and a head applied to arguments becomes a
// TConst when it names a type constant.  Only elaborated syntax is stored in
// contexts and the signature.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "matt/parser.hpp"
#include "matt/syntax.hpp"

namespace matt {

struct TypeConstInfo {
  std::string name;
  ModeId mode;
  Type telescope;  // closed Pi chain ending in Univ
};

struct TermConstInfo {
  std::string name;
  ModeId mode;
  Type type;  // closed
  Term body;  // null for axioms
};

class Signature {
public:
  const TypeConstInfo* type_const(const std::string& name) const;
  const TermConstInfo* term_const(const std::string& name) const;
  bool contains(const std::string& name) const;
  void add(TypeConstInfo info);
  void add(TermConstInfo info);

private:
  std::map<std::string, TypeConstInfo> types_;
  std::map<std::string, TermConstInfo> terms_;
};

class Checker {
public:
  explicit Checker(const ModeTheory& mt) : mt_(mt) {}

  const ModeTheory& theory() const { return mt_; }
  const Signature& signature() const { return sig_; }
  Context empty(ModeId mode) const { return Context(mt_, mode); }

  Type check_type(const Context& ctx, const Type& a);
  std::pair<Term, Type> infer(const Context& ctx, const Term& t);
  Term check(const Context& ctx, const Term& t, const Type& a);

  // Weak-head normal form: beta for functions, let on mod, open on shut,
  // and unfolding of definitions.
  Term whnf(const Context& ctx, const Term& t);

  // Type-directed definitional equality of two terms of type `a`, with eta
  // at Pi and U.
  bool convert(const Context& ctx, const Type& a, const Term& t, const Term& u);
  bool convert_types(const Context& ctx, const Type& a, const Type& b);

  // Checks a declaration in the empty context of its mode and adds it to
  // the signature.  A failed declaration is not added.
  void declare(const Decl& d);

  // When set, conversion failures carry the chain of comparisons that led
  // to them as Error notes.
  void set_trace(bool on) { trace_ = on; }

private:
  std::pair<Term, Type> infer_var(const Context& ctx, const Term& t);
  std::pair<Term, Type> infer_let(const Context& ctx, const Term& t, const Type* expected);
  Type elaborate_spine(const Context& ctx, const Type& a);
  Type instantiate(const Context& ctx, const Type& closed) const;
  // motive[y <- mod_mu(x)] in xctx = ctx, x :^{frame . mu} A, for a motive
  // in ctx, y :^frame F_mu A.
  Term motive_instance(const Context& xctx, MorId mu, const Type& motive) const;
  Type check_telescope(const Context& ctx, const Type& tele);

  bool compare_whnf(const Context& ctx, const Type& a, const Term& t, const Term& u);
  std::optional<Type> compare_neutral(const Context& ctx, const Term& t, const Term& u);
  bool convert_spine(const Context& ctx, const Type& telescope, const std::vector<ExprPtr>& xs,
                     const std::vector<ExprPtr>& ys);
  bool note(bool ok, const Context& ctx, const char* what, const ExprPtr& x, const ExprPtr& y);

  MorId require_sharp(MorId mu, Span span) const;
  const Adjoint& require_sinister(MorId mu, Span span) const;

  const ModeTheory& mt_;
  Signature sig_;
  bool trace_ = false;
  std::vector<std::string> trail_;
};

// One diagnostic per failed declaration, in source order.
struct Diagnostic {
  ErrorCode code;
  std::string file;
  Span span;
  std::string message;
  std::vector<std::string> notes;
};

std::string format_diagnostic(const Diagnostic& d);

// Checks every declaration of every program in order against one shared
// signature; continues after failures.
std::vector<Diagnostic> check_programs(Checker& checker, const std::vector<Program>& programs);

}  // namespace matt

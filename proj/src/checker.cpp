#include "matt/checker.hpp"

namespace matt {

// --------------------------------------------------------------------------
// Signature

const TypeConstInfo* Signature::type_const(const std::string& name) const {
  auto it = types_.find(name);
  return it == types_.end() ? nullptr : &it->second;
}

const TermConstInfo* Signature::term_const(const std::string& name) const {
  auto it = terms_.find(name);
  return it == terms_.end() ? nullptr : &it->second;
}

bool Signature::contains(const std::string& name) const {
  return types_.count(name) || terms_.count(name);
}

void Signature::add(TypeConstInfo info) {
  std::string key = info.name;
  types_.emplace(std::move(key), std::move(info));
}

void Signature::add(TermConstInfo info) {
  std::string key = info.name;
  terms_.emplace(std::move(key), std::move(info));
}

// --------------------------------------------------------------------------
// Helpers

namespace {

[[noreturn]] void fail(ErrorCode code, const std::string& msg, Span span = {}) {
  throw Error(code, msg, span);
}

// Attaches the span of the innermost syntax node to errors escaping a rule.
template <class F>
auto at(const ExprPtr& e, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (Error& err) {
    if (e) err.set_span_if_missing(e->span);
    throw;
  }
}

bool is_neutral_head(Kind k) {
  return k == Kind::Var || k == Kind::Const || k == Kind::App || k == Kind::Open ||
         k == Kind::LetMod;
}

}  // namespace

MorId Checker::require_sharp(MorId mu, Span span) const {
  if (!mt_.sharp(mu)) fail(ErrorCode::NotSharp, "modality " + mt_.name(mu) + " is not sharp", span);
  return mu;
}

const Adjoint& Checker::require_sinister(MorId mu, Span span) const {
  const Adjoint* adj = mt_.adjoint(mu);
  if (!mt_.sinister(mu) || !adj)
    fail(ErrorCode::NotSinister, "modality " + mt_.name(mu) + " is not sinister", span);
  return *adj;
}

Type Checker::instantiate(const Context& ctx, const Type& closed) const {
  return weaken(closed, 0, ctx.num_vars());
}

Term Checker::motive_instance(const Context& xctx, MorId mu, const Type& motive) const {
  const int n = xctx.num_vars() - 1;
  const VarEntry& x = xctx.var(n);
  Type shifted = weaken(motive, n, 1);
  Term modx = mk::mod_intro(mu, mk::var(n, mt_.identity(x.mod), x.name));
  return subst(xctx, shifted, modx);
}

// --------------------------------------------------------------------------
// Types

Type Checker::check_type(const Context& ctx, const Type& a) {
  return at(a, [&]() -> Type {
    switch (a->kind) {
      case Kind::Pi: {
        MorId mu = a->mod.value_or(mt_.identity(ctx.mode()));
        Context locked = ctx.push_lock(mu);
        require_sharp(mu, a->span);
        Type dom = check_type(locked, a->kids[0]);
        Type cod = check_type(ctx.extend(mu, dom, a->name), a->kids[1]);
        return mk::pi(mu, a->name, dom, cod, a->span);
      }
      case Kind::FMod: {
        MorId mu = *a->mod;
        Context locked = ctx.push_lock(mu);
        require_sharp(mu, a->span);
        return mk::fmod(mu, check_type(locked, a->kids[0]), a->span);
      }
      case Kind::UMod: {
        MorId mu = *a->mod;
        const Adjoint& adj = require_sinister(mu, a->span);
        if (mt_.src(mu) != ctx.mode())
          fail(ErrorCode::ModeMismatch, "U[" + mt_.name(mu) + "] forms types at mode " +
                                            mt_.mode_name(mt_.src(mu)) + ", not " +
                                            mt_.mode_name(ctx.mode()));
        return mk::umod(mu, check_type(ctx.push_lock(adj.dagger), a->kids[0]), a->span);
      }
      case Kind::Const:
      case Kind::App:
      case Kind::TConst: return elaborate_spine(ctx, a);
      case Kind::Univ:
        fail(ErrorCode::CannotInfer, "Type may only end the telescope of a type constant");
      default: fail(ErrorCode::CannotInfer, "expected a type, found the term " + print(ctx, a));
    }
  });
}

Type Checker::elaborate_spine(const Context& ctx, const Type& a) {
  std::vector<ExprPtr> args;
  ExprPtr head = a;
  if (a->kind == Kind::TConst) {
    args = a->kids;
    head = mk::constant(a->name, a->span);
  } else {
    while (head->kind == Kind::App) {
      args.push_back(head->kids[1]);
      head = head->kids[0];
    }
    std::reverse(args.begin(), args.end());
  }
  if (head->kind != Kind::Const)
    fail(ErrorCode::CannotInfer, "expected a type, found the term " + print(ctx, a));
  const TypeConstInfo* info = sig_.type_const(head->name);
  if (!info) {
    if (sig_.term_const(head->name))
      fail(ErrorCode::CannotInfer, "'" + head->name + "' is a term, not a type", head->span);
    fail(ErrorCode::UnknownConstant, "unknown type constant '" + head->name + "'", head->span);
  }
  if (info->mode != ctx.mode())
    fail(ErrorCode::ModeMismatch, "type constant " + info->name + " lives at mode " +
                                      mt_.mode_name(info->mode) + ", used at mode " +
                                      mt_.mode_name(ctx.mode()),
         head->span);
  Type cur = instantiate(ctx, info->telescope);
  std::vector<MorId> mods;
  std::vector<ExprPtr> elab;
  for (const auto& arg : args) {
    if (cur->kind != Kind::Pi)
      fail(ErrorCode::ExpectedPi, "type constant " + info->name + " takes " +
                                      std::to_string(mods.size()) + " argument(s)", arg->span);
    MorId mu = *cur->mod;
    Term e = check(ctx.push_lock(mu), arg, cur->kids[0]);
    mods.push_back(mu);
    elab.push_back(e);
    cur = subst(ctx, cur->kids[1], e);
  }
  if (cur->kind != Kind::Univ)
    fail(ErrorCode::CannotInfer, "type constant " + info->name + " is not fully applied");
  return mk::tconst(info->name, std::move(mods), std::move(elab), a->span);
}

Type Checker::check_telescope(const Context& ctx, const Type& tele) {
  return at(tele, [&]() -> Type {
    if (tele->kind == Kind::Univ) return tele;
    if (tele->kind != Kind::Pi) fail(ErrorCode::ParseError, "malformed telescope");
    MorId mu = tele->mod.value_or(mt_.identity(ctx.mode()));
    Context locked = ctx.push_lock(mu);
    if (!mt_.tangible(mu))
      fail(ErrorCode::NotTangible, "parameter annotation " + mt_.name(mu) + " is not tangible");
    Type dom = check_type(locked, tele->kids[0]);
    Type rest = check_telescope(ctx.extend(mu, dom, tele->name), tele->kids[1]);
    return mk::pi(mu, tele->name, dom, rest, tele->span);
  });
}

// --------------------------------------------------------------------------
// Inference

std::pair<Term, Type> Checker::infer_var(const Context& ctx, const Term& t) {
  if (t->level < 0 || t->level >= ctx.num_vars())
    fail(ErrorCode::UnknownName, "variable out of scope");
  const VarEntry& x = ctx.var(t->level);
  MorId locks = ctx.locks_after(t->level);
  CellId key = t->key.value_or(mt_.identity(x.mod));
  if (mt_.src(key) != x.mod || mt_.dst(key) != locks) {
    std::string name = t->name.empty() ? x.name : t->name;
    fail(ErrorCode::KeyTypeMismatch,
         "key " + mt_.name(key) + " : " + mt_.name(mt_.src(key)) + " => " +
             mt_.name(mt_.dst(key)) + " does not fit " + name + " :^" + mt_.name(x.mod) +
             " used under locks " + mt_.name(locks) + "; expected a cell " + mt_.name(x.mod) +
             " => " + mt_.name(locks));
  }
  Type ty = transport(ctx.prefix(t->level), x.type, key, ctx.num_vars() - t->level);
  return {mk::var(t->level, key, t->name, t->span), ty};
}

std::pair<Term, Type> Checker::infer(const Context& ctx, const Term& t) {
  return at(t, [&]() -> std::pair<Term, Type> {
    switch (t->kind) {
      case Kind::Var: return infer_var(ctx, t);
      case Kind::Const: {
        if (const TermConstInfo* info = sig_.term_const(t->name)) {
          if (info->mode != ctx.mode())
            fail(ErrorCode::ModeMismatch, "constant " + info->name + " lives at mode " +
                                              mt_.mode_name(info->mode) + ", used at mode " +
                                              mt_.mode_name(ctx.mode()));
          return {t, instantiate(ctx, info->type)};
        }
        if (sig_.type_const(t->name))
          fail(ErrorCode::CannotInfer, "'" + t->name + "' is a type, not a term");
        fail(ErrorCode::UnknownConstant, "unknown constant '" + t->name + "'");
      }
      case Kind::App: {
        auto [f, fty] = infer(ctx, t->kids[0]);
        if (fty->kind != Kind::Pi)
          fail(ErrorCode::ExpectedPi, "applying a term of type " + print(ctx, fty) +
                                          ", which is not a function type");
        MorId mu = *fty->mod;
        Term a = check(ctx.push_lock(mu), t->kids[1], fty->kids[0]);
        return {mk::app(f, a, mu, t->span), subst(ctx, fty->kids[1], a)};
      }
      case Kind::Open: {
        MorId mu = *t->mod;
        const Adjoint& adj = require_sinister(mu, t->span);
        Context locked = ctx.push_lock(mu);
        auto [m, mty] = infer(locked, t->kids[0]);
        if (mty->kind != Kind::UMod)
          fail(ErrorCode::ExpectedU, "open[" + mt_.name(mu) + "] of a term of type " +
                                         print(locked, mty));
        if (*mty->mod != mu)
          fail(ErrorCode::ConversionFailure, "open[" + mt_.name(mu) + "] of a term of type " +
                                                 print(locked, mty));
        return {mk::open(mu, m, t->span), apply_key(ctx, mty->kids[0], adj.counit)};
      }
      case Kind::LetMod: return infer_let(ctx, t, nullptr);
      case Kind::Lam:
      case Kind::ModIntro:
      case Kind::Shut:
        fail(ErrorCode::CannotInfer,
             "cannot infer the type of an introduction form; check it against a type");
      default: fail(ErrorCode::CannotInfer, "a type is not a term");
    }
  });
}

std::pair<Term, Type> Checker::infer_let(const Context& ctx, const Term& t, const Type* expected) {
  MorId nu = *t->frame, mu = *t->mod;
  if (!mt_.transparent(nu))
    fail(ErrorCode::NotTransparent, "frame " + mt_.name(nu) + " is not transparent");
  require_sharp(mu, t->span);
  Context dctx = ctx.push_lock(nu);
  auto [d, dty] = infer(dctx, t->kids[1]);
  if (dty->kind != Kind::FMod)
    fail(ErrorCode::ExpectedF, "let[" + mt_.name(nu) + ", " + mt_.name(mu) +
                                   "] scrutinee has type " + print(dctx, dty),
         t->kids[1]->span);
  if (*dty->mod != mu)
    fail(ErrorCode::ConversionFailure, "let[" + mt_.name(nu) + ", " + mt_.name(mu) +
                                           "] scrutinee has type " + print(dctx, dty),
         t->kids[1]->span);
  Type a = dty->kids[0];
  Type motive;
  if (t->kids[0]) {
    motive = check_type(ctx.extend(nu, mk::fmod(mu, a), t->name2), t->kids[0]);
  } else if (expected) {
    motive = weaken(*expected, ctx.num_vars(), 1);
  } else {
    fail(ErrorCode::CannotInfer, "let needs a motive when its type cannot be inferred");
  }
  Context xctx = ctx.extend(mt_.compose(nu, mu), a, t->name);
  Term b = check(xctx, t->kids[2], motive_instance(xctx, mu, motive));
  Term out = mk::let_mod(nu, mu, t->name, d, b, t->name2.empty() ? "_" : t->name2, motive, t->span);
  return {out, subst(ctx, motive, d)};
}

// --------------------------------------------------------------------------
// Checking

Term Checker::check(const Context& ctx, const Term& t, const Type& a) {
  return at(t, [&]() -> Term {
    // an introduction form against a type of a different former
    auto mismatch = [&](const char* form, Kind former, ErrorCode code) {
      fail(a->kind == former ? ErrorCode::ConversionFailure : code,
           std::string(form) + " checked against " + print(ctx, a));
    };
    switch (t->kind) {
      case Kind::Lam: {
        if (a->kind != Kind::Pi) mismatch("a lambda", Kind::Pi, ErrorCode::ExpectedPi);
        Term body = check(ctx.extend(*a->mod, a->kids[0], t->name), t->kids[0], a->kids[1]);
        return mk::lam(t->name, body, t->span);
      }
      case Kind::ModIntro: {
        if (a->kind != Kind::FMod || *a->mod != *t->mod) mismatch(("mod[" + mt_.name(*t->mod) + "]").c_str(), Kind::FMod, ErrorCode::ExpectedF);
        Term body = check(ctx.push_lock(*t->mod), t->kids[0], a->kids[0]);
        return mk::mod_intro(*t->mod, body, t->span);
      }
      case Kind::Shut: {
        if (a->kind != Kind::UMod || *a->mod != *t->mod) mismatch(("shut[" + mt_.name(*t->mod) + "]").c_str(), Kind::UMod, ErrorCode::ExpectedU);
        const Adjoint& adj = require_sinister(*t->mod, t->span);
        Term body = check(ctx.push_lock(adj.dagger), t->kids[0], a->kids[0]);
        return mk::shut(*t->mod, body, t->span);
      }
      case Kind::LetMod:
        if (!t->kids[0]) {
          auto [out, ty] = infer_let(ctx, t, &a);
          return out;
        }
        [[fallthrough]];
      default: {
        auto [out, ty] = infer(ctx, t);
        trail_.clear();
        if (!convert_types(ctx, ty, a)) {
          Error err(ErrorCode::ConversionFailure,
                    "expected " + print(ctx, a) + " but the term has type " + print(ctx, ty));
          for (auto& n : trail_) err.add_note(n);
          throw err;
        }
        return out;
      }
    }
  });
}

// --------------------------------------------------------------------------
// Evaluation

Term Checker::whnf(const Context& ctx, const Term& t0) {
  Term t = t0;
  while (true) {
    switch (t->kind) {
      case Kind::App: {
        Term f = whnf(ctx, t->kids[0]);
        if (f->kind == Kind::Lam) {
          t = subst(ctx, f->kids[0], t->kids[1]);
          continue;
        }
        return f == t->kids[0] ? t : with_kids(t, {f, t->kids[1]});
      }
      case Kind::LetMod: {
        Term d = whnf(ctx.push_lock(*t->frame), t->kids[1]);
        if (d->kind == Kind::ModIntro) {
          t = subst(ctx, t->kids[2], d->kids[0]);
          continue;
        }
        return d == t->kids[1] ? t : with_kids(t, {t->kids[0], d, t->kids[2]});
      }
      case Kind::Open: {
        MorId mu = *t->mod;
        Term m = whnf(ctx.push_lock(mu), t->kids[0]);
        if (m->kind == Kind::Shut) {
          t = apply_key(ctx, m->kids[0], mt_.adjoint(mu)->counit);
          continue;
        }
        return m == t->kids[0] ? t : with_kids(t, {m});
      }
      case Kind::Const: {
        const TermConstInfo* info = sig_.term_const(t->name);
        if (info && info->body) {
          t = instantiate(ctx, info->body);
          continue;
        }
        return t;
      }
      default: return t;
    }
  }
}

// --------------------------------------------------------------------------
// Conversion

bool Checker::note(bool ok, const Context& ctx, const char* what, const ExprPtr& x,
                   const ExprPtr& y) {
  if (!ok && trace_)
    trail_.push_back(std::string(what) + ": " + print(ctx, x) + "  vs  " + print(ctx, y) +
                     "  in " + print(ctx));
  return ok;
}

bool Checker::convert_types(const Context& ctx, const Type& a, const Type& b) {
  if (same(a, b)) return true;
  bool ok = false;
  if (a->kind == b->kind && a->mod == b->mod) {
    switch (a->kind) {
      case Kind::Pi: {
        MorId mu = *a->mod;
        ok = convert_types(ctx.push_lock(mu), a->kids[0], b->kids[0]) &&
             convert_types(ctx.extend(mu, a->kids[0], a->name), a->kids[1], b->kids[1]);
        break;
      }
      case Kind::FMod: ok = convert_types(ctx.push_lock(*a->mod), a->kids[0], b->kids[0]); break;
      case Kind::UMod:
        ok = convert_types(ctx.push_lock(mt_.adjoint(*a->mod)->dagger), a->kids[0], b->kids[0]);
        break;
      case Kind::TConst:
        if (a->name == b->name && a->kids.size() == b->kids.size()) {
          const TypeConstInfo* info = sig_.type_const(a->name);
          ok = info && convert_spine(ctx, instantiate(ctx, info->telescope), a->kids, b->kids);
        }
        break;
      case Kind::Univ: ok = true; break;
      default: break;
    }
  }
  return note(ok, ctx, "types differ", a, b);
}

bool Checker::convert_spine(const Context& ctx, const Type& telescope, const std::vector<ExprPtr>& xs,
                            const std::vector<ExprPtr>& ys) {
  Type cur = telescope;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    MorId mu = *cur->mod;
    if (!convert(ctx.push_lock(mu), cur->kids[0], xs[i], ys[i])) return false;
    cur = subst(ctx, cur->kids[1], xs[i]);
  }
  return true;
}

bool Checker::convert(const Context& ctx, const Type& a, const Term& t, const Term& u) {
  if (same(t, u)) return true;
  bool ok;
  switch (a->kind) {
    case Kind::Pi: {
      MorId mu = *a->mod;
      const int n = ctx.num_vars();
      Context xctx = ctx.extend(mu, a->kids[0], a->name);
      Term x = mk::var(n, mt_.identity(mu), a->name);
      ok = convert(xctx, a->kids[1], mk::app(weaken(t, n, 1), x, mu),
                   mk::app(weaken(u, n, 1), x, mu));
      break;
    }
    case Kind::UMod: {
      MorId mu = *a->mod;
      const Adjoint& adj = *mt_.adjoint(mu);
      Context lctx = ctx.push_lock(adj.dagger);
      ok = convert(lctx, a->kids[0], mk::open(mu, apply_key(ctx, t, adj.unit)),
                   mk::open(mu, apply_key(ctx, u, adj.unit)));
      break;
    }
    default: ok = compare_whnf(ctx, a, whnf(ctx, t), whnf(ctx, u)); break;
  }
  return note(ok, ctx, "terms differ", t, u);
}

bool Checker::compare_whnf(const Context& ctx, const Type& a, const Term& t, const Term& u) {
  if (same(t, u)) return true;
  if (a->kind == Kind::FMod && t->kind == Kind::ModIntro && u->kind == Kind::ModIntro)
    return t->mod == u->mod && convert(ctx.push_lock(*a->mod), a->kids[0], t->kids[0], u->kids[0]);
  if (!is_neutral_head(t->kind) || !is_neutral_head(u->kind)) return false;
  return compare_neutral(ctx, t, u).has_value();
}

std::optional<Type> Checker::compare_neutral(const Context& ctx, const Term& t, const Term& u) {
  if (t->kind != u->kind) return std::nullopt;
  switch (t->kind) {
    case Kind::Var:
      if (t->level != u->level || t->key != u->key) return std::nullopt;
      return infer_var(ctx, t).second;
    case Kind::Const: {
      if (t->name != u->name) return std::nullopt;
      const TermConstInfo* info = sig_.term_const(t->name);
      if (!info) return std::nullopt;
      return instantiate(ctx, info->type);
    }
    case Kind::App: {
      if (t->mod != u->mod) return std::nullopt;
      auto fty = compare_neutral(ctx, t->kids[0], u->kids[0]);
      if (!fty || (*fty)->kind != Kind::Pi) return std::nullopt;
      MorId mu = *(*fty)->mod;
      if (!convert(ctx.push_lock(mu), (*fty)->kids[0], t->kids[1], u->kids[1])) return std::nullopt;
      return subst(ctx, (*fty)->kids[1], t->kids[1]);
    }
    case Kind::Open: {
      if (t->mod != u->mod) return std::nullopt;
      MorId mu = *t->mod;
      auto mty = compare_neutral(ctx.push_lock(mu), t->kids[0], u->kids[0]);
      if (!mty || (*mty)->kind != Kind::UMod) return std::nullopt;
      return apply_key(ctx, (*mty)->kids[0], mt_.adjoint(mu)->counit);
    }
    case Kind::LetMod: {
      if (t->mod != u->mod || t->frame != u->frame) return std::nullopt;
      MorId nu = *t->frame, mu = *t->mod;
      auto dty = compare_neutral(ctx.push_lock(nu), t->kids[1], u->kids[1]);
      if (!dty || (*dty)->kind != Kind::FMod) return std::nullopt;
      Type a = (*dty)->kids[0];
      if (!convert_types(ctx.extend(nu, mk::fmod(mu, a), t->name2), t->kids[0], u->kids[0]))
        return std::nullopt;
      Context xctx = ctx.extend(mt_.compose(nu, mu), a, t->name);
      if (!convert(xctx, motive_instance(xctx, mu, t->kids[0]), t->kids[2], u->kids[2]))
        return std::nullopt;
      return subst(ctx, t->kids[0], t->kids[1]);
    }
    default: return std::nullopt;
  }
}

// --------------------------------------------------------------------------
// Declarations

void Checker::declare(const Decl& d) {
  if (d.kind == Decl::Kind::ModeTheory) return;
  try {
    if (sig_.contains(d.name))
      fail(ErrorCode::DuplicateDeclaration, "'" + d.name + "' is already declared");
    Context ctx = empty(d.mode);
    switch (d.kind) {
      case Decl::Kind::TypeConst:
        sig_.add(TypeConstInfo{d.name, d.mode, check_telescope(ctx, d.type)});
        break;
      case Decl::Kind::Axiom:
        sig_.add(TermConstInfo{d.name, d.mode, check_type(ctx, d.type), nullptr});
        break;
      case Decl::Kind::Def: {
        Type ty = check_type(ctx, d.type);
        Term body = check(ctx, d.body, ty);
        sig_.add(TermConstInfo{d.name, d.mode, ty, body});
        break;
      }
      default: break;
    }
  } catch (Error& e) {
    e.set_span_if_missing(d.span);
    throw;
  }
}

std::string format_diagnostic(const Diagnostic& d) {
  std::string s = "ERROR " + std::string(to_string(d.code)) + " @ " + d.file + ":" +
                  std::to_string(d.span.line) + ":" + std::to_string(d.span.col) + ": " + d.message;
  for (const auto& n : d.notes) s += "\n  trace: " + n;
  return s;
}

std::vector<Diagnostic> check_programs(Checker& checker, const std::vector<Program>& programs) {
  std::vector<Diagnostic> out;
  for (const auto& prog : programs)
    for (const auto& d : prog.decls) {
      try {
        checker.declare(d);
      } catch (const Error& e) {
        out.push_back(Diagnostic{e.code(), prog.file, e.span(), e.what(), e.notes()});
      }
    }
  return out;
}

}  // namespace matt

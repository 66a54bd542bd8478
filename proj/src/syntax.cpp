#include "matt/syntax.hpp"

#include <algorithm>

#include "matt/cell_expr.hpp"

namespace matt {

namespace {

std::shared_ptr<Expr> node(Kind k, Span span) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  e->span = span;
  return e;
}

}  // namespace

namespace mk {

ExprPtr var(int level, std::optional<CellId> key, std::string name, Span span) {
  auto e = node(Kind::Var, span);
  e->level = level;
  e->key = key;
  e->name = std::move(name);
  return e;
}

ExprPtr lam(std::string name, ExprPtr body, Span span) {
  auto e = node(Kind::Lam, span);
  e->name = std::move(name);
  e->kids = {std::move(body)};
  return e;
}

ExprPtr app(ExprPtr fn, ExprPtr arg, std::optional<MorId> mu, Span span) {
  auto e = node(Kind::App, span);
  e->mod = mu;
  e->kids = {std::move(fn), std::move(arg)};
  return e;
}

ExprPtr mod_intro(MorId mu, ExprPtr body, Span span) {
  auto e = node(Kind::ModIntro, span);
  e->mod = mu;
  e->kids = {std::move(body)};
  return e;
}

ExprPtr let_mod(MorId frame, MorId mu, std::string x, ExprPtr scrutinee, ExprPtr body,
                std::string y, ExprPtr motive, Span span) {
  auto e = node(Kind::LetMod, span);
  e->frame = frame;
  e->mod = mu;
  e->name = std::move(x);
  e->name2 = std::move(y);
  e->kids = {std::move(motive), std::move(scrutinee), std::move(body)};
  return e;
}

ExprPtr shut(MorId mu, ExprPtr body, Span span) {
  auto e = node(Kind::Shut, span);
  e->mod = mu;
  e->kids = {std::move(body)};
  return e;
}

ExprPtr open(MorId mu, ExprPtr body, Span span) {
  auto e = node(Kind::Open, span);
  e->mod = mu;
  e->kids = {std::move(body)};
  return e;
}

ExprPtr constant(std::string name, Span span) {
  auto e = node(Kind::Const, span);
  e->name = std::move(name);
  return e;
}

ExprPtr pi(std::optional<MorId> mu, std::string name, ExprPtr dom, ExprPtr cod, Span span) {
  auto e = node(Kind::Pi, span);
  e->mod = mu;
  e->name = std::move(name);
  e->kids = {std::move(dom), std::move(cod)};
  return e;
}

ExprPtr fmod(MorId mu, ExprPtr a, Span span) {
  auto e = node(Kind::FMod, span);
  e->mod = mu;
  e->kids = {std::move(a)};
  return e;
}

ExprPtr umod(MorId mu, ExprPtr a, Span span) {
  auto e = node(Kind::UMod, span);
  e->mod = mu;
  e->kids = {std::move(a)};
  return e;
}

ExprPtr tconst(std::string name, std::vector<MorId> mods, std::vector<ExprPtr> args, Span span) {
  auto e = node(Kind::TConst, span);
  e->name = std::move(name);
  e->spine_mods = std::move(mods);
  e->kids = std::move(args);
  return e;
}

ExprPtr univ(Span span) { return node(Kind::Univ, span); }

}  // namespace mk

ExprPtr with_kids(const ExprPtr& e, std::vector<ExprPtr> kids) {
  auto copy = std::make_shared<Expr>(*e);
  copy->kids = std::move(kids);
  return copy;
}

bool same(const ExprPtr& a, const ExprPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->level != b->level || a->key != b->key || a->mod != b->mod ||
      a->frame != b->frame || a->spine_mods != b->spine_mods || a->kids.size() != b->kids.size())
    return false;
  if ((a->kind == Kind::Const || a->kind == Kind::TConst) && a->name != b->name) return false;
  for (std::size_t i = 0; i < a->kids.size(); ++i)
    if (!same(a->kids[i], b->kids[i])) return false;
  return true;
}

// --------------------------------------------------------------------------
// Contexts

const VarEntry& Context::var(int level) const {
  return std::get<VarEntry>(entries_.at(var_pos_.at(static_cast<std::size_t>(level))));
}

Context Context::push_lock(MorId mu) const {
  const ModeTheory& mt = *mt_;
  if (mt.dst(mu) != mode_)
    throw Error(ErrorCode::ModeMismatch, "cannot lock a context at mode " + mt.mode_name(mode_) +
                                             " with " + mt.name(mu) + " : " +
                                             mt.mode_name(mt.src(mu)) + " -> " +
                                             mt.mode_name(mt.dst(mu)));
  Context out = *this;
  out.mode_ = mt.src(mu);
  if (mt.is_identity(mu)) return out;
  if (!out.entries_.empty()) {
    if (auto* lock = std::get_if<LockEntry>(&out.entries_.back())) {
      MorId merged = mt.compose(lock->mod, mu);
      out.entries_.pop_back();
      out.mode_after_.pop_back();
      if (!mt.is_identity(merged)) {
        out.entries_.push_back(LockEntry{merged});
        out.mode_after_.push_back(out.mode_);
      }
      return out;
    }
  }
  out.entries_.push_back(LockEntry{mu});
  out.mode_after_.push_back(out.mode_);
  return out;
}

Context Context::extend(MorId mu, Type a, std::string name) const {
  const ModeTheory& mt = *mt_;
  if (mt.dst(mu) != mode_)
    throw Error(ErrorCode::ModeMismatch, "variable annotation " + mt.name(mu) + " lands in " +
                                             mt.mode_name(mt.dst(mu)) + ", context is at mode " +
                                             mt.mode_name(mode_));
  if (!mt.tangible(mu))
    throw Error(ErrorCode::NotTangible,
                "variable annotation " + mt.name(mu) + " is not tangible");
  Context out = *this;
  out.var_pos_.push_back(out.entries_.size());
  out.entries_.push_back(VarEntry{mu, std::move(a), std::move(name)});
  out.mode_after_.push_back(mode_);
  return out;
}

Context Context::prefix(int level) const {
  Context out(*mt_, start_);
  std::size_t pos = var_pos_.at(static_cast<std::size_t>(level));
  out.entries_.assign(entries_.begin(), entries_.begin() + static_cast<std::ptrdiff_t>(pos));
  out.mode_after_.assign(mode_after_.begin(), mode_after_.begin() + static_cast<std::ptrdiff_t>(pos));
  out.var_pos_.assign(var_pos_.begin(), var_pos_.begin() + level);
  out.mode_ = pos == 0 ? start_ : mode_after_[pos - 1];
  return out;
}

MorId locks_of(const ModeTheory& mt, ModeId start, const std::vector<Entry>& entries) {
  MorId acc = mt.identity(start);
  for (const auto& e : entries)
    if (const auto* lock = std::get_if<LockEntry>(&e)) acc = mt.compose(acc, lock->mod);
  return acc;
}

MorId Context::locks_after(int level) const {
  std::size_t pos = var_pos_.at(static_cast<std::size_t>(level));
  std::vector<Entry> tail(entries_.begin() + static_cast<std::ptrdiff_t>(pos) + 1, entries_.end());
  return locks_of(*mt_, mode_after_[pos], tail);
}

MorId Context::locks() const { return locks_of(*mt_, start_, entries_); }

// --------------------------------------------------------------------------
// Traversal

namespace {

// Walks `e`, tracking the number of binders crossed and, when a theory is
// given, the composite K of locks crossed since the root.  `on_var` returns
// the replacement for a variable occurrence.
template <class OnVar>
class VarMap {
public:
  VarMap(const ModeTheory* mt, OnVar on_var) : mt_(mt), on_var_(std::move(on_var)) {}

  ExprPtr run(const ExprPtr& e, std::optional<MorId> k, int depth) {
    if (!e) return e;
    switch (e->kind) {
      case Kind::Var: return on_var_(e, k, depth);
      case Kind::Const:
      case Kind::Univ: return e;
      case Kind::Lam: return rebuild(e, {run(e->kids[0], k, depth + 1)});
      case Kind::App:
        return rebuild(e, {run(e->kids[0], k, depth), run(e->kids[1], lock(k, e->mod, e), depth)});
      case Kind::ModIntro:
      case Kind::FMod:
      case Kind::Open: return rebuild(e, {run(e->kids[0], lock(k, e->mod, e), depth)});
      case Kind::Shut:
      case Kind::UMod: return rebuild(e, {run(e->kids[0], lock(k, dagger(e), e), depth)});
      case Kind::LetMod:
        return rebuild(e, {run(e->kids[0], k, depth + 1), run(e->kids[1], lock(k, e->frame, e), depth),
                           run(e->kids[2], k, depth + 1)});
      case Kind::Pi:
        return rebuild(e, {run(e->kids[0], lock(k, e->mod, e), depth), run(e->kids[1], k, depth + 1)});
      case Kind::TConst: {
        std::vector<ExprPtr> kids;
        kids.reserve(e->kids.size());
        for (std::size_t i = 0; i < e->kids.size(); ++i) {
          std::optional<MorId> m;
          if (i < e->spine_mods.size()) m = e->spine_mods[i];
          kids.push_back(run(e->kids[i], lock(k, m, e), depth));
        }
        return rebuild(e, std::move(kids));
      }
    }
    return e;
  }

private:
  std::optional<MorId> lock(std::optional<MorId> k, std::optional<MorId> mu, const ExprPtr& e) {
    if (!mt_ || !k) return k;
    if (!mu) {
      // An unelaborated Pi defaults to the identity, which does not move K.
      if (e->kind == Kind::Pi) return k;
      throw std::logic_error("key transport on an unelaborated term");
    }
    return mt_->compose(*k, *mu);
  }

  std::optional<MorId> dagger(const ExprPtr& e) {
    if (!mt_) return std::nullopt;
    const Adjoint* adj = mt_->adjoint(*e->mod);
    if (!adj) throw std::logic_error("negative modality without a right adjoint");
    return adj->dagger;
  }

  static ExprPtr rebuild(const ExprPtr& e, std::vector<ExprPtr> kids) {
    bool changed = false;
    for (std::size_t i = 0; i < kids.size(); ++i) changed |= kids[i] != e->kids[i];
    return changed ? with_kids(e, std::move(kids)) : e;
  }

  const ModeTheory* mt_;
  OnVar on_var_;
};

template <class OnVar>
ExprPtr map_vars(const ModeTheory* mt, const ExprPtr& e, std::optional<MorId> k0, OnVar on_var) {
  return VarMap<OnVar>(mt, std::move(on_var)).run(e, k0, 0);
}

ExprPtr with_level_key(const ExprPtr& v, int level, std::optional<CellId> key) {
  if (v->level == level && v->key == key) return v;
  auto copy = std::make_shared<Expr>(*v);
  copy->level = level;
  copy->key = key;
  return copy;
}

}  // namespace

ExprPtr weaken(const ExprPtr& e, int from, int by) {
  if (by == 0) return e;
  return map_vars(nullptr, e, std::nullopt, [&](const ExprPtr& v, std::optional<MorId>, int) {
    return v->level >= from ? with_level_key(v, v->level + by, v->key) : v;
  });
}

ExprPtr transport(const Context& pre, const ExprPtr& t, CellId beta, int extra) {
  const ModeTheory& mt = pre.theory();
  if (mt.is_identity(beta) && extra == 0) return t;
  const int n = pre.num_vars();
  std::vector<MorId> after(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) after[static_cast<std::size_t>(j)] = pre.locks_after(j);
  ModeId root = mt.src(mt.src(beta));
  return map_vars(&mt, t, mt.identity(root), [&](const ExprPtr& v, std::optional<MorId> k, int) {
    if (v->level >= n) return with_level_key(v, v->level + extra, v->key);
    if (!v->key) throw std::logic_error("key transport on an unelaborated variable");
    CellId moved = mt.whisker_left(after[static_cast<std::size_t>(v->level)], mt.whisker_right(beta, *k));
    return with_level_key(v, v->level, mt.vcompose(moved, *v->key));
  });
}

ExprPtr subst(const Context& gamma, const ExprPtr& body, const ExprPtr& a) {
  const ModeTheory& mt = gamma.theory();
  const int n = gamma.num_vars();
  return map_vars(&mt, body, mt.identity(gamma.mode()),
                  [&](const ExprPtr& v, std::optional<MorId>, int depth) -> ExprPtr {
                    if (v->level < n) return v;
                    if (v->level > n) return with_level_key(v, v->level - 1, v->key);
                    if (!v->key) throw std::logic_error("substitution into an unelaborated variable");
                    return transport(gamma, a, *v->key, depth);
                  });
}

// --------------------------------------------------------------------------
// Printing

namespace {

class Printer {
public:
  Printer(const ModeTheory& mt, std::vector<std::string> names) : mt_(mt), names_(std::move(names)) {}

  std::string show(const ExprPtr& e, int prec) {
    std::string s;
    int own = precedence(e);
    bool wrap = own < prec;
    if (wrap) s += "(";
    s += body(e);
    if (wrap) s += ")";
    return s;
  }

private:
  static int precedence(const ExprPtr& e) {
    switch (e->kind) {
      case Kind::Var:
      case Kind::Const:
      case Kind::Univ: return 2;
      case Kind::TConst: return e->kids.empty() ? 2 : 1;
      case Kind::App:
      case Kind::FMod:
      case Kind::UMod: return 1;
      default: return 0;
    }
  }

  std::string fresh(const std::string& hint) {
    std::string base = hint.empty() ? "x" : hint;
    if (base == "_") return base;
    std::string name = base;
    while (std::find(names_.begin(), names_.end(), name) != names_.end()) name += "'";
    return name;
  }

  std::string mor(std::optional<MorId> m) { return m ? mt_.name(*m) : "?"; }

  std::string key(CellId c) {
    const std::string& n = mt_.name(c);
    if (scan_identifier(n, 0) == n.size()) return n;
    return "(" + n + ")";
  }

  std::string bind(const std::string& hint, const ExprPtr& e, int prec, std::string* chosen) {
    *chosen = fresh(hint);
    names_.push_back(*chosen);
    std::string s = show(e, prec);
    names_.pop_back();
    return s;
  }

  std::string body(const ExprPtr& e) {
    switch (e->kind) {
      case Kind::Var: {
        std::string s = e->level >= 0 && static_cast<std::size_t>(e->level) < names_.size()
                            ? names_[static_cast<std::size_t>(e->level)]
                            : "#" + std::to_string(e->level);
        if (e->key) s += "^" + key(*e->key);
        return s;
      }
      case Kind::Const: return e->name;
      case Kind::Univ: return "Type";
      case Kind::Lam: {
        std::string x;
        std::string b = bind(e->name, e->kids[0], 0, &x);
        return "\\" + x + ". " + b;
      }
      case Kind::App: return show(e->kids[0], 1) + " " + show(e->kids[1], 2);
      case Kind::ModIntro: return "mod[" + mor(e->mod) + "] " + show(e->kids[0], 0);
      case Kind::Shut: return "shut[" + mor(e->mod) + "] " + show(e->kids[0], 0);
      case Kind::Open: return "open[" + mor(e->mod) + "] " + show(e->kids[0], 0);
      case Kind::LetMod: {
        std::string d = show(e->kids[1], 0);
        std::string x, y;
        std::string b = bind(e->name, e->kids[2], 0, &x);
        std::string s = "let[" + mor(e->frame) + ", " + mor(e->mod) + "] mod " + x + " = " + d +
                        " in " + b;
        if (e->kids[0]) {
          std::string m = bind(e->name2, e->kids[0], 0, &y);
          s += " motive " + y + ". " + m;
        }
        return s;
      }
      case Kind::Pi: {
        std::string dom = show(e->kids[0], e->name == "_" && !e->mod ? 1 : 0);
        std::string x;
        std::string cod = bind(e->name, e->kids[1], 0, &x);
        if (x == "_" && !e->mod) return dom + " -> " + cod;
        std::string ann = e->mod ? " :^" + mt_.name(*e->mod) + " " : " : ";
        return "(" + x + ann + dom + ") -> " + cod;
      }
      case Kind::FMod: return "F[" + mor(e->mod) + "] " + show(e->kids[0], 1);
      case Kind::UMod: return "U[" + mor(e->mod) + "] " + show(e->kids[0], 1);
      case Kind::TConst: {
        std::string s = e->name;
        for (const auto& k : e->kids) s += " " + show(k, 2);
        return s;
      }
    }
    return "?";
  }

  const ModeTheory& mt_;
  std::vector<std::string> names_;
};

std::vector<std::string> context_names(const Context& ctx) {
  std::vector<std::string> names;
  for (int i = 0; i < ctx.num_vars(); ++i) {
    std::string n = ctx.var(i).name.empty() ? "x" + std::to_string(i) : ctx.var(i).name;
    while (std::find(names.begin(), names.end(), n) != names.end()) n += "'";
    names.push_back(n);
  }
  return names;
}

}  // namespace

std::string print(const ModeTheory& mt, const ExprPtr& e, std::vector<std::string> names) {
  if (!e) return "<none>";
  return Printer(mt, std::move(names)).show(e, 0);
}

std::string print(const Context& ctx, const ExprPtr& e) {
  return print(ctx.theory(), e, context_names(ctx));
}

std::string print(const Context& ctx) {
  const ModeTheory& mt = ctx.theory();
  std::vector<std::string> names = context_names(ctx);
  std::vector<std::string> scope;
  std::string s = "<" + mt.mode_name(ctx.start_mode()) + ">";
  for (const auto& entry : ctx.entries()) {
    if (const auto* lock = std::get_if<LockEntry>(&entry)) {
      s += " / " + mt.name(lock->mod);
    } else {
      const auto& v = std::get<VarEntry>(entry);
      const std::string& n = names[scope.size()];
      s += ", " + n + " :^" + mt.name(v.mod) + " " + print(mt, v.type, scope);
      scope.push_back(n);
    }
  }
  return s;
}

}  // namespace matt

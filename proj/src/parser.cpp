#include "matt/parser.hpp"

#include <algorithm>
#include <cctype>

#include "matt/cell_expr.hpp"

namespace matt {

namespace {

struct Token {
  enum class Type { Ident, String, Sym, End };
  Type type = Type::End;
  std::string text;
  std::size_t begin = 0, end = 0;
};

class Lexer {
public:
  explicit Lexer(std::string_view src) : src_(src) {
    line_starts_.push_back(0);
    for (std::size_t i = 0; i < src.size(); ++i)
      if (src[i] == '\n') line_starts_.push_back(i + 1);
  }

  Span span_at(std::size_t off) const {
    auto it = std::upper_bound(line_starts_.begin(), line_starts_.end(), off);
    std::size_t line = static_cast<std::size_t>(it - line_starts_.begin());
    return Span{static_cast<int>(line), static_cast<int>(off - line_starts_[line - 1]) + 1};
  }

  Token peek(int ahead = 0) const {
    std::size_t p = pos_;
    Token t = scan(p);
    for (int i = 0; i < ahead; ++i) t = scan(p);
    return t;
  }

  Token next() { return scan(pos_); }

  [[noreturn]] void fail(std::size_t off, const std::string& msg) const {
    throw Error(ErrorCode::ParseError, msg, span_at(off));
  }

  // Raw text of a morphism or key: an identifier or a balanced parenthesis.
  std::pair<std::string_view, std::size_t> raw_atom() {
    skip(pos_);
    std::size_t start = pos_;
    if (pos_ < src_.size() && src_[pos_] == '(') {
      int depth = 0;
      do {
        if (src_[pos_] == '(') ++depth;
        if (src_[pos_] == ')') --depth;
        ++pos_;
      } while (pos_ < src_.size() && depth > 0);
      if (depth > 0) fail(start, "unbalanced '('");
    } else {
      pos_ = scan_identifier(src_, pos_);
      if (pos_ == start) fail(start, "expected a morphism or cell name");
    }
    return {src_.substr(start, pos_ - start), start};
  }

  // Raw text up to (not including) the next top-level ']' or ','.
  std::pair<std::string_view, std::size_t> raw_bracket() {
    skip(pos_);
    std::size_t start = pos_;
    int depth = 0;
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '(') ++depth;
      if (c == ')') --depth;
      if (depth == 0 && (c == ']' || c == ',')) break;
      if (c == '\n' || c == ';') break;
      ++pos_;
    }
    if (pos_ >= src_.size() || (src_[pos_] != ']' && src_[pos_] != ','))
      fail(start, "unterminated '['");
    std::size_t end = pos_;
    while (end > start && std::isspace(static_cast<unsigned char>(src_[end - 1]))) --end;
    return {src_.substr(start, end - start), start};
  }

private:
  void skip(std::size_t& p) const {
    while (p < src_.size()) {
      if (std::isspace(static_cast<unsigned char>(src_[p]))) {
        ++p;
      } else if (src_.substr(p, 2) == "--") {
        while (p < src_.size() && src_[p] != '\n') ++p;
      } else {
        break;
      }
    }
  }

  Token scan(std::size_t& p) const {
    skip(p);
    Token t;
    t.begin = p;
    if (p >= src_.size()) {
      t.end = p;
      return t;
    }
    if (src_.substr(p, 11) == "mode-theory") {
      t.type = Token::Type::Ident;
      t.text = "mode-theory";
      p += 11;
    } else if (std::size_t e = scan_identifier(src_, p); e != p) {
      t.type = Token::Type::Ident;
      t.text = std::string(src_.substr(p, e - p));
      p = e;
    } else if (src_[p] == '"') {
      std::size_t e = p + 1;
      while (e < src_.size() && src_[e] != '"' && src_[e] != '\n') ++e;
      if (e >= src_.size() || src_[e] != '"') fail(p, "unterminated string");
      t.type = Token::Type::String;
      t.text = std::string(src_.substr(p + 1, e - p - 1));
      p = e + 1;
    } else if (src_.substr(p, 2) == "->") {
      t.type = Token::Type::Sym;
      t.text = "->";
      p += 2;
    } else if (std::string_view("()[].,;:^\\=@").find(src_[p]) != std::string_view::npos) {
      t.type = Token::Type::Sym;
      t.text = std::string(1, src_[p]);
      p += 1;
    } else {
      fail(p, "unexpected character '" + std::string(1, src_[p]) + "'");
    }
    t.end = p;
    return t;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::vector<std::size_t> line_starts_;
};

bool is_sym(const Token& t, std::string_view s) { return t.type == Token::Type::Sym && t.text == s; }
bool is_word(const Token& t, std::string_view s) { return t.type == Token::Type::Ident && t.text == s; }

bool reserved(const std::string& w) {
  static const char* words[] = {"let", "in", "motive", "mod", "shut", "open",
                                "const", "axiom", "def", "mode-theory"};
  return std::any_of(std::begin(words), std::end(words), [&](const char* k) { return w == k; });
}

class Parser {
public:
  Parser(const ModeTheory* mt, std::string_view text) : mt_(mt), lex_(text) {}

  Program program(std::string file) {
    Program prog;
    prog.file = std::move(file);
    while (lex_.peek().type != Token::Type::End) {
      prog.decls.push_back(decl());
      expect(";");
    }
    return prog;
  }

  Decl decl() {
    Token t = lex_.next();
    Decl d;
    d.span = lex_.span_at(t.begin);
    if (is_word(t, "mode-theory")) {
      Token path = lex_.next();
      if (path.type != Token::Type::String) lex_.fail(path.begin, "expected a quoted path");
      d.kind = Decl::Kind::ModeTheory;
      d.name = path.text;
      return d;
    }
    if (!mt_) lex_.fail(t.begin, "no mode theory: pass --mode-theory or start with mode-theory \"path\"");
    if (is_word(t, "const")) {
      d.kind = Decl::Kind::TypeConst;
      d.name = name();
      expect(":");
      d.type = expr();
      d.mode = mode_after_at();
      const Expr* e = d.type.get();
      while (e->kind == Kind::Pi) e = e->kids[1].get();
      if (e->kind != Kind::Univ)
        throw Error(ErrorCode::ParseError, "a type constant's telescope must end in Type", d.type->span);
      return d;
    }
    if (is_word(t, "axiom") || is_word(t, "def")) {
      d.kind = is_word(t, "def") ? Decl::Kind::Def : Decl::Kind::Axiom;
      d.name = name();
      d.mode = mode_after_at();
      expect(":");
      d.type = expr();
      if (d.kind == Decl::Kind::Def) {
        expect("=");
        d.body = expr();
      }
      return d;
    }
    lex_.fail(t.begin, "expected a declaration (const, axiom, def or mode-theory)");
  }

  ExprPtr expr() {
    Token t = lex_.peek();
    Span at = lex_.span_at(t.begin);
    if (is_sym(t, "\\")) {
      lex_.next();
      std::vector<std::string> xs;
      do {
        xs.push_back(name());
      } while (lex_.peek().type == Token::Type::Ident);
      expect(".");
      for (const auto& x : xs) scope_.push_back(x);
      ExprPtr body = expr();
      for (std::size_t i = 0; i < xs.size(); ++i) scope_.pop_back();
      for (auto it = xs.rbegin(); it != xs.rend(); ++it) body = mk::lam(*it, body, at);
      return body;
    }
    if ((is_word(t, "mod") || is_word(t, "shut") || is_word(t, "open")) && is_sym(lex_.peek(1), "[")) {
      lex_.next();
      lex_.next();
      MorId mu = bracket_morphism();
      expect("]");
      ExprPtr body = expr();
      if (t.text == "mod") return mk::mod_intro(mu, body, at);
      if (t.text == "shut") return mk::shut(mu, body, at);
      return mk::open(mu, body, at);
    }
    if (is_word(t, "let")) return let_expr();
    if (binder_ahead()) {
      struct Group {
        std::string name;
        std::optional<MorId> mod;
        ExprPtr dom;
        Span span;
      };
      std::vector<Group> groups;
      while (binder_ahead()) {
        Span gs = lex_.span_at(lex_.next().begin);
        Group g;
        g.span = gs;
        g.name = name_or_blank();
        expect(":");
        if (is_sym(lex_.peek(), "^")) {
          lex_.next();
          g.mod = atom_morphism();
        }
        g.dom = expr();
        expect(")");
        scope_.push_back(g.name);
        groups.push_back(std::move(g));
      }
      expect("->");
      ExprPtr cod = expr();
      for (auto it = groups.rbegin(); it != groups.rend(); ++it) {
        scope_.pop_back();
        cod = mk::pi(it->mod, it->name, it->dom, cod, it->span);
      }
      return cod;
    }
    ExprPtr lhs = app();
    if (is_sym(lex_.peek(), "->")) {
      lex_.next();
      scope_.push_back("_");
      ExprPtr cod = expr();
      scope_.pop_back();
      return mk::pi(std::nullopt, "_", lhs, cod, at);
    }
    return lhs;
  }

private:
  ExprPtr let_expr() {
    Span at = lex_.span_at(lex_.next().begin);
    expect("[");
    MorId frame = bracket_morphism();
    expect(",");
    MorId mu = bracket_morphism();
    expect("]");
    Token m = lex_.next();
    if (!is_word(m, "mod")) lex_.fail(m.begin, "expected 'mod' after let[...]");
    std::string x = name_or_blank();
    expect("=");
    ExprPtr d = expr();
    Token in = lex_.next();
    if (!is_word(in, "in")) lex_.fail(in.begin, "expected 'in'");
    scope_.push_back(x);
    ExprPtr b = expr();
    scope_.pop_back();
    std::string y = "_";
    ExprPtr motive;
    if (is_word(lex_.peek(), "motive")) {
      lex_.next();
      y = name_or_blank();
      expect(".");
      scope_.push_back(y);
      motive = expr();
      scope_.pop_back();
    }
    return mk::let_mod(frame, mu, x, d, b, y, motive, at);
  }

  bool prefix_ahead() const {
    Token t = lex_.peek();
    if (is_sym(t, "\\") || is_word(t, "let")) return true;
    return (is_word(t, "mod") || is_word(t, "shut") || is_word(t, "open")) && is_sym(lex_.peek(1), "[");
  }

  bool atom_ahead() const {
    Token t = lex_.peek();
    if (is_sym(t, "(")) return true;
    if (t.type != Token::Type::Ident || reserved(t.text)) return false;
    if ((t.text == "F" || t.text == "U") && is_sym(lex_.peek(1), "[")) return false;
    return true;
  }

  bool binder_ahead() const {
    return is_sym(lex_.peek(), "(") && lex_.peek(1).type == Token::Type::Ident &&
           !reserved(lex_.peek(1).text) && is_sym(lex_.peek(2), ":");
  }

  ExprPtr app() {
    Token t = lex_.peek();
    Span at = lex_.span_at(t.begin);
    if ((is_word(t, "F") || is_word(t, "U")) && is_sym(lex_.peek(1), "[")) {
      lex_.next();
      lex_.next();
      MorId mu = bracket_morphism();
      expect("]");
      ExprPtr a = app();
      return t.text == "F" ? mk::fmod(mu, a, at) : mk::umod(mu, a, at);
    }
    if (!atom_ahead()) {
      if (prefix_ahead()) return expr();
      lex_.fail(t.begin, t.type == Token::Type::End ? "unexpected end of input"
                                                    : "unexpected '" + t.text + "'");
    }
    ExprPtr head = atom();
    while (true) {
      if (binder_ahead()) break;
      if (atom_ahead()) {
        Span as = lex_.span_at(lex_.peek().begin);
        head = mk::app(head, atom(), std::nullopt, as);
      } else if (prefix_ahead()) {
        Span as = lex_.span_at(lex_.peek().begin);
        head = mk::app(head, expr(), std::nullopt, as);
        break;
      } else {
        break;
      }
    }
    return head;
  }

  ExprPtr atom() {
    Token t = lex_.next();
    Span at = lex_.span_at(t.begin);
    if (is_sym(t, "(")) {
      ExprPtr e = expr();
      expect(")");
      return e;
    }
    if (t.text == "Type") return mk::univ(at);
    if (t.text == "_") lex_.fail(t.begin, "'_' cannot be referenced");
    auto it = std::find(scope_.rbegin(), scope_.rend(), t.text);
    std::optional<CellId> key;
    bool keyed = is_sym(lex_.peek(), "^");
    if (keyed) {
      lex_.next();
      auto [raw, off] = lex_.raw_atom();
      key = eval_at(raw, off, [&](const CellExpr& e) { return eval_cell(*mt_, e); });
    }
    if (it == scope_.rend()) {
      if (keyed) lex_.fail(t.begin, "only variables carry keys; '" + t.text + "' is not bound");
      return mk::constant(t.text, at);
    }
    int level = static_cast<int>(scope_.rend() - it) - 1;
    return mk::var(level, key, t.text, at);
  }

  template <class Eval>
  auto eval_at(std::string_view raw, std::size_t off, Eval eval)
      -> decltype(eval(std::declval<const CellExpr&>())) {
    try {
      return eval(*parse_cell_expr(raw));
    } catch (Error& e) {
      Span inner = e.span();
      Span abs = lex_.span_at(off + static_cast<std::size_t>(std::max(inner.col, 1) - 1));
      Error moved(e.code(), e.what(), abs);
      throw moved;
    }
  }

  MorId bracket_morphism() {
    auto [raw, off] = lex_.raw_bracket();
    return eval_at(raw, off, [&](const CellExpr& e) { return eval_morphism(*mt_, e); });
  }

  MorId atom_morphism() {
    auto [raw, off] = lex_.raw_atom();
    return eval_at(raw, off, [&](const CellExpr& e) { return eval_morphism(*mt_, e); });
  }

  ModeId mode_after_at() {
    expect("@");
    Token t = lex_.next();
    if (t.type != Token::Type::Ident) lex_.fail(t.begin, "expected a mode name");
    if (auto m = mt_->find_mode(t.text)) return *m;
    throw Error(ErrorCode::UnknownName, "unknown mode '" + t.text + "'", lex_.span_at(t.begin));
  }

  std::string name() {
    Token t = lex_.next();
    if (t.type != Token::Type::Ident || reserved(t.text) || t.text == "_")
      lex_.fail(t.begin, "expected a name");
    return t.text;
  }

  std::string name_or_blank() {
    Token t = lex_.next();
    if (t.type != Token::Type::Ident || reserved(t.text)) lex_.fail(t.begin, "expected a name");
    return t.text;
  }

  void expect(std::string_view sym) {
    Token t = lex_.next();
    if (!is_sym(t, sym))
      lex_.fail(t.begin, "expected '" + std::string(sym) + "'" +
                             (t.type == Token::Type::End ? " at end of input" : " before '" + t.text + "'"));
  }

  const ModeTheory* mt_;
  Lexer lex_;
  std::vector<std::string> scope_;

  friend ExprPtr matt::parse_expr(const ModeTheory&, std::string_view, std::vector<std::string>);
};

}  // namespace

std::optional<std::string> leading_mode_theory(std::string_view text) {
  Lexer lex(text);
  if (!is_word(lex.peek(), "mode-theory")) return std::nullopt;
  Parser p(nullptr, text);
  Decl d = p.decl();
  return d.name;
}

Program parse_program(const ModeTheory& mt, std::string_view text, std::string file) {
  return Parser(&mt, text).program(std::move(file));
}

ExprPtr parse_expr(const ModeTheory& mt, std::string_view text, std::vector<std::string> scope) {
  Parser p(&mt, text);
  p.scope_ = std::move(scope);
  ExprPtr e = p.expr();
  Token t = p.lex_.peek();
  if (t.type != Token::Type::End) p.lex_.fail(t.begin, "trailing input '" + t.text + "'");
  return e;
}

std::string print_decl(const ModeTheory& mt, const Decl& d) {
  switch (d.kind) {
    case Decl::Kind::ModeTheory: return "mode-theory \"" + d.name + "\"";
    case Decl::Kind::TypeConst:
      return "const " + d.name + " : " + print(mt, d.type) + " @ " + mt.mode_name(d.mode);
    case Decl::Kind::Axiom:
      return "axiom " + d.name + " @ " + mt.mode_name(d.mode) + " : " + print(mt, d.type);
    case Decl::Kind::Def:
      return "def " + d.name + " @ " + mt.mode_name(d.mode) + " : " + print(mt, d.type) + " = " +
             print(mt, d.body);
  }
  return {};
}

std::string print_program(const ModeTheory& mt, const Program& p) {
  std::string out;
  for (const auto& d : p.decls) out += print_decl(mt, d) + ";\n";
  return out;
}

}  // namespace matt

#include "matt/cell_expr.hpp"

#include <cctype>

namespace matt {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

class CellParser {
public:
  explicit CellParser(std::string_view text) : text_(text) {}

  CellExprPtr parse() {
    auto e = expr();
    skip();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

private:
  [[noreturn]] void fail(const std::string& msg) {
    throw Error(ErrorCode::ParseError, "in cell expression: " + msg,
                Span{1, static_cast<int>(pos_) + 1});
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(std::string_view tok) {
    skip();
    if (text_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  CellExprPtr node(CellExpr::Op op, CellExprPtr l, CellExprPtr r, Span span) {
    auto e = std::make_shared<CellExpr>();
    e->op = op;
    e->lhs = std::move(l);
    e->rhs = std::move(r);
    e->span = span;
    return e;
  }

  Span here() const { return Span{1, static_cast<int>(pos_) + 1}; }

  CellExprPtr expr() {
    auto e = wterm();
    while (true) {
      skip();
      Span at = here();
      if (!eat(".")) break;
      e = node(CellExpr::Op::Compose, e, wterm(), at);
    }
    return e;
  }

  CellExprPtr wterm() {
    auto e = unit();
    while (true) {
      skip();
      Span at = here();
      if (eat("<|")) return node(CellExpr::Op::WhiskerLeft, e, wterm(), at);
      if (eat("|>")) {
        e = node(CellExpr::Op::WhiskerRight, e, unit(), at);
        continue;
      }
      return e;
    }
  }

  CellExprPtr unit() {
    skip();
    if (eat("(")) {
      auto e = expr();
      if (!eat(")")) fail("expected ')'");
      return e;
    }
    Span at = here();
    std::size_t start = pos_;
    pos_ = scan_identifier(text_, pos_);
    if (start == pos_) fail(pos_ < text_.size() ? "unexpected '" + std::string(1, text_[pos_]) + "'"
                                                : "unexpected end of input");
    auto e = std::make_shared<CellExpr>();
    e->name = std::string(text_.substr(start, pos_ - start));
    e->span = at;
    return e;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

[[noreturn]] void ill_typed(const CellExpr& e, const std::string& msg) {
  throw Error(ErrorCode::IllTypedCellExpression, msg + " in '" + to_string(e) + "'", e.span);
}

}  // namespace

std::size_t scan_identifier(std::string_view text, std::size_t pos) {
  if (pos >= text.size() || !ident_start(text[pos])) return pos;
  std::size_t start = pos;
  while (pos < text.size() && ident_char(text[pos])) ++pos;
  // reserved identity names: id:<mode>, id:<morphism>, id:id:<mode>
  while (text.substr(start, pos - start) == "id" || text.substr(start, pos - start) == "id:id") {
    if (pos + 1 < text.size() && text[pos] == ':' && ident_start(text[pos + 1])) {
      ++pos;
      while (pos < text.size() && ident_char(text[pos])) ++pos;
    } else {
      break;
    }
  }
  return pos;
}

CellExprPtr parse_cell_expr(std::string_view text) { return CellParser(text).parse(); }

std::string to_string(const CellExpr& e) {
  switch (e.op) {
    case CellExpr::Op::Name: return e.name;
    case CellExpr::Op::Compose: return "(" + to_string(*e.lhs) + " . " + to_string(*e.rhs) + ")";
    case CellExpr::Op::WhiskerLeft: return "(" + to_string(*e.lhs) + " <| " + to_string(*e.rhs) + ")";
    case CellExpr::Op::WhiskerRight: return "(" + to_string(*e.lhs) + " |> " + to_string(*e.rhs) + ")";
  }
  return {};
}

MorId eval_morphism(const ModeTheory& mt, const CellExpr& e) {
  switch (e.op) {
    case CellExpr::Op::Name:
      if (auto m = mt.find_morphism(e.name)) return *m;
      throw Error(ErrorCode::UnknownName, "unknown morphism '" + e.name + "'", e.span);
    case CellExpr::Op::Compose: {
      MorId g = eval_morphism(mt, *e.lhs), f = eval_morphism(mt, *e.rhs);
      if (mt.dst(f) != mt.src(g))
        ill_typed(e, mt.name(f) + " lands in " + mt.mode_name(mt.dst(f)) + " but " + mt.name(g) +
                         " starts at " + mt.mode_name(mt.src(g)));
      return mt.compose(g, f);
    }
    default:
      ill_typed(e, "a whiskering denotes a cell, not a morphism");
  }
}

CellId eval_cell(const ModeTheory& mt, const CellExpr& e) {
  switch (e.op) {
    case CellExpr::Op::Name:
      if (auto c = mt.find_cell(e.name)) return *c;
      throw Error(ErrorCode::UnknownName, "unknown cell '" + e.name + "'", e.span);
    case CellExpr::Op::Compose: {
      CellId b = eval_cell(mt, *e.lhs), a = eval_cell(mt, *e.rhs);
      if (mt.dst(a) != mt.src(b))
        ill_typed(e, mt.name(a) + " ends at " + mt.name(mt.dst(a)) + " but " + mt.name(b) +
                         " starts at " + mt.name(mt.src(b)));
      return mt.vcompose(b, a);
    }
    case CellExpr::Op::WhiskerLeft: {
      MorId mu = eval_morphism(mt, *e.lhs);
      CellId beta = eval_cell(mt, *e.rhs);
      if (mt.dst(mt.src(beta)) != mt.src(mu))
        ill_typed(e, mt.name(beta) + " lands in " + mt.mode_name(mt.dst(mt.src(beta))) + " but " +
                         mt.name(mu) + " starts at " + mt.mode_name(mt.src(mu)));
      return mt.whisker_left(mu, beta);
    }
    case CellExpr::Op::WhiskerRight: {
      CellId alpha = eval_cell(mt, *e.lhs);
      MorId nu = eval_morphism(mt, *e.rhs);
      if (mt.src(mt.src(alpha)) != mt.dst(nu))
        ill_typed(e, mt.name(nu) + " lands in " + mt.mode_name(mt.dst(nu)) + " but " +
                         mt.name(alpha) + " starts at " + mt.mode_name(mt.src(mt.src(alpha))));
      return mt.whisker_right(alpha, nu);
    }
  }
  ill_typed(e, "malformed expression");
}

CellId cell_algebra(const ModeTheory& mt, std::string_view text) {
  return eval_cell(mt, *parse_cell_expr(text));
}

}  // namespace matt

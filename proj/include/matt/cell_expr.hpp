#pragma once

// Formal expressions over a mode theory: morphism composites and 2-cell
// expressions built from vertical composition and the two whiskerings.
//
//   expr  := wterm ('.' wterm)*
//   wterm := unit ('<|' wterm | '|>' unit)*
//   unit  := name | '(' expr ')'
//
// '.' is composition in the sense of the enclosing position: vertical
// composition of cells, or composition of morphisms.  `m <| c` and
// `c |> m` are the left and right whiskerings.

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "matt/mode_theory.hpp"

namespace matt {

struct CellExpr {
  enum class Op { Name, Compose, WhiskerLeft, WhiskerRight };
  Op op = Op::Name;
  std::string name;
  std::shared_ptr<const CellExpr> lhs, rhs;
  Span span;
};
using CellExprPtr = std::shared_ptr<const CellExpr>;

// End of the identifier starting at `pos` (== pos if none).  Identifiers
// are [A-Za-z_][A-Za-z0-9_']*, extended through the reserved identity
// prefixes "id:" and "id:id:".
std::size_t scan_identifier(std::string_view text, std::size_t pos);

// Standalone parser for the grammar above.  Throws ParseError.
CellExprPtr parse_cell_expr(std::string_view text);

std::string to_string(const CellExpr& e);

// Evaluates left to right through the tables.  Unknown names raise
// UnknownName; boundary mismatches raise IllTypedCellExpression.
CellId eval_cell(const ModeTheory& mt, const CellExpr& e);
MorId eval_morphism(const ModeTheory& mt, const CellExpr& e);

// Convenience: parse then evaluate.
CellId cell_algebra(const ModeTheory& mt, std::string_view text);

}  // namespace matt

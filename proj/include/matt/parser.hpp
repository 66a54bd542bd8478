#pragma once

// Surface language.
//
//   file  := (decl ';')*
//   decl  := 'mode-theory' STRING
//          | 'const' NAME ':' telescope '@' MODE      -- telescope ends in Type
//          | 'axiom' NAME '@' MODE ':' expr
//          | 'def' NAME '@' MODE ':' expr '=' expr
//   expr  := '\' NAME+ '.' expr
//          | ('mod' | 'shut' | 'open') '[' mor ']' expr
//          | 'let' '[' mor ',' mor ']' 'mod' NAME '=' expr 'in' expr
//                ('motive' NAME '.' expr)?
//          | ('(' NAME ':' ('^' mor)? expr ')')+ '->' expr
//          | app ('->' expr)?
//   app   := ('F' | 'U') '[' mor ']' app | atom atom* prefix?
//   atom  := NAME ('^' key)? | 'Type' | '(' expr ')'
//
// mor and key are cell expressions (see cell_expr.hpp), written either as a
// single name or in parentheses.  Comments run from "--" to end of line.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "matt/syntax.hpp"

namespace matt {

struct Decl {
  enum class Kind { ModeTheory, TypeConst, Axiom, Def };
  Kind kind = Kind::Axiom;
  std::string name;  // the path for ModeTheory
  ModeId mode{};
  Span span;
  ExprPtr type;  // TypeConst: a Pi chain ending in Type
  ExprPtr body;  // Def only
};

struct Program {
  std::string file;
  std::vector<Decl> decls;
};

// Path named by a leading `mode-theory` declaration, if any.  Needs no mode
// theory; throws ParseError on a malformed first declaration.
std::optional<std::string> leading_mode_theory(std::string_view text);

// Throws ParseError, or UnknownName for undeclared modes, morphisms and cells.
Program parse_program(const ModeTheory& mt, std::string_view text, std::string file = "<input>");

// A single expression with `scope` naming levels 0..n-1.
ExprPtr parse_expr(const ModeTheory& mt, std::string_view text, std::vector<std::string> scope = {});

std::string print_decl(const ModeTheory& mt, const Decl& d);
std::string print_program(const ModeTheory& mt, const Program& p);

}  // namespace matt

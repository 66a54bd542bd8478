#pragma once

// Finite presentations of adjoint mode theories.
//
// A mode theory is a strict 2-category given by closed tables: every
// composite of morphisms, every vertical composite of 2-cells and every
// whiskering is a named element.  Equality of 2-cells is therefore identity
// of table elements.  Horizontal composition of 2-cells is not represented.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "matt/error.hpp"

namespace matt {

enum class ModeId : std::int32_t {};
enum class MorId : std::int32_t {};
enum class CellId : std::int32_t {};

constexpr std::size_t idx(ModeId m) { return static_cast<std::size_t>(m); }
constexpr std::size_t idx(MorId m) { return static_cast<std::size_t>(m); }
constexpr std::size_t idx(CellId c) { return static_cast<std::size_t>(c); }

struct MorClasses {
  bool tangible = false;
  bool sharp = false;
  bool transparent = false;
  bool sinister = false;
};

struct Morphism {
  std::string name;
  ModeId src;
  ModeId dst;
  MorClasses classes;
};

struct Cell {
  std::string name;
  MorId src;
  MorId dst;
};

// Chosen right adjoint of a sinister morphism mu : p -> q, with
// unit : 1_p => dagger . mu and counit : mu . dagger => 1_q.
struct Adjoint {
  MorId dagger;
  CellId unit;
  CellId counit;
};

class ModeTheoryBuilder;

class ModeTheory {
public:
  std::size_t num_modes() const { return modes_.size(); }
  std::size_t num_morphisms() const { return mors_.size(); }
  std::size_t num_cells() const { return cells_.size(); }

  const std::string& mode_name(ModeId m) const { return modes_.at(idx(m)); }
  const Morphism& morphism(MorId m) const { return mors_.at(idx(m)); }
  const Cell& cell(CellId c) const { return cells_.at(idx(c)); }
  const std::string& name(MorId m) const { return morphism(m).name; }
  const std::string& name(CellId c) const { return cell(c).name; }

  ModeId src(MorId m) const { return morphism(m).src; }
  ModeId dst(MorId m) const { return morphism(m).dst; }
  MorId src(CellId c) const { return cell(c).src; }
  MorId dst(CellId c) const { return cell(c).dst; }

  std::optional<ModeId> find_mode(const std::string& name) const;
  std::optional<MorId> find_morphism(const std::string& name) const;
  std::optional<CellId> find_cell(const std::string& name) const;

  MorId identity(ModeId m) const { return id_mor_.at(idx(m)); }
  CellId identity(MorId m) const { return id_cell_.at(idx(m)); }
  bool is_identity(MorId m) const { return identity(src(m)) == m; }
  bool is_identity(CellId c) const { return identity(src(c)) == c; }

  bool tangible(MorId m) const { return morphism(m).classes.tangible; }
  bool sharp(MorId m) const { return morphism(m).classes.sharp; }
  bool transparent(MorId m) const { return morphism(m).classes.transparent; }
  bool sinister(MorId m) const { return morphism(m).classes.sinister; }
  const Adjoint* adjoint(MorId m) const;

  // g . f; requires dst(f) == src(g).  Throws NotComposable or, when the
  // table has no entry, MalformedTable.
  MorId compose(MorId g, MorId f) const;
  // b . a for a : f => g, b : g => h.
  CellId vcompose(CellId b, CellId a) const;
  // mu <| beta : mu . rho => mu . sigma for beta : rho => sigma.
  CellId whisker_left(MorId mu, CellId beta) const;
  // alpha |> nu : mu . nu => mu' . nu for alpha : mu => mu'.
  CellId whisker_right(CellId alpha, MorId nu) const;

  // Raw table lookups: nullopt when the entry is absent.
  std::optional<MorId> compose_entry(MorId g, MorId f) const;
  std::optional<CellId> vcompose_entry(CellId b, CellId a) const;
  std::optional<CellId> whisker_left_entry(MorId mu, CellId beta) const;
  std::optional<CellId> whisker_right_entry(CellId alpha, MorId nu) const;

  // All morphisms a -> b, identity first when a == b.
  std::vector<MorId> hom(ModeId a, ModeId b) const;
  // All morphisms with the given target.
  std::vector<MorId> into(ModeId target) const;
  // All cells f => g.
  std::vector<CellId> cells_between(MorId f, MorId g) const;
  bool parallel(MorId f, MorId g) const { return src(f) == src(g) && dst(f) == dst(g); }

  nlohmann::json to_json() const;

private:
  friend class ModeTheoryBuilder;

  std::vector<std::string> modes_;
  std::vector<Morphism> mors_;
  std::vector<Cell> cells_;
  std::vector<MorId> id_mor_;
  std::vector<CellId> id_cell_;
  std::map<std::string, ModeId> mode_index_;
  std::map<std::string, MorId> mor_index_;
  std::map<std::string, CellId> cell_index_;
  // dense tables, -1 for "no entry"
  std::vector<std::int32_t> compose_;   // num_mor * num_mor, [g][f]
  std::vector<std::int32_t> vcompose_;  // num_cell * num_cell, [b][a]
  std::vector<std::int32_t> wleft_;     // num_mor * num_cell
  std::vector<std::int32_t> wright_;    // num_cell * num_mor
  std::map<MorId, Adjoint> adjoints_;
};

// Builds a ModeTheory by name.  Identity morphisms "id:<mode>" and identity
// cells "id:<morphism>" are synthesized, together with every table entry
// that involves an identity, unless the user supplied that entry.
class ModeTheoryBuilder {
public:
  ModeTheoryBuilder& mode(const std::string& name);
  ModeTheoryBuilder& morphism(const std::string& name, const std::string& src,
                              const std::string& dst);
  ModeTheoryBuilder& cell(const std::string& name, const std::string& src,
                          const std::string& dst);
  ModeTheoryBuilder& compose(const std::string& g, const std::string& f,
                             const std::string& gf);
  ModeTheoryBuilder& vcompose(const std::string& b, const std::string& a,
                              const std::string& ba);
  ModeTheoryBuilder& whisker_left(const std::string& mu, const std::string& beta,
                                  const std::string& result);
  ModeTheoryBuilder& whisker_right(const std::string& alpha, const std::string& nu,
                                   const std::string& result);
  ModeTheoryBuilder& classes(const std::string& mor, MorClasses classes);
  ModeTheoryBuilder& tangible(const std::string& mor);
  ModeTheoryBuilder& sharp(const std::string& mor);
  ModeTheoryBuilder& transparent(const std::string& mor);
  ModeTheoryBuilder& sinister(const std::string& mor);
  ModeTheoryBuilder& adjoint(const std::string& mor, const std::string& dagger,
                             const std::string& unit, const std::string& counit);

  // Throws MalformedTable when an entry is ill-typed or names something
  // undeclared.
  ModeTheory build() const;

private:
  struct MorDecl {
    std::string name, src, dst;
  };
  struct Triple {
    std::string a, b, c;
  };
  struct AdjDecl {
    std::string mor, dagger, unit, counit;
  };
  std::vector<std::string> modes_;
  std::vector<MorDecl> mors_;
  std::vector<MorDecl> cells_;
  std::vector<Triple> compose_, vcompose_, wleft_, wright_;
  std::vector<std::pair<std::string, MorClasses>> classes_;
  std::vector<AdjDecl> adjoints_;
};

// Loading from the JSON-compatible mode theory document.  Structural
// problems (missing keys, wrong shapes) and ill-typed entries raise
// MalformedTable.
ModeTheory mode_theory_from_json(const nlohmann::json& doc);
ModeTheory load_mode_theory(const std::filesystem::path& path);

// One violated axiom.  `axiom` is a stable identifier such as
// "triangle-left" or "compose-associativity".
struct Violation {
  std::string axiom;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  bool has(const std::string& axiom) const;
};

// Exhaustive scan of the adjoint-mode-theory axioms and the strict
// 2-category table laws.  Pure; never throws on a built theory.
ValidationReport validate_mode_theory(const ModeTheory& mt);

}  // namespace matt

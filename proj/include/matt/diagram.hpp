#pragma once

// A strict 2-functor from a mode theory to finite categories: one category
// per mode, one functor per morphism, one natural transformation per cell.
//
// Diagram file (JSON):
//   {
//     "mode_theory": "theory.mt"            -- path relative to the file, or inline
//     "categories": {
//       "p": {"chain": 3},                   -- 0 <= 1 <= 2
//       "q": {"poset": {"elements": ["a", "b"], "leq": [["a", "b"]]}},
//       "r": {"objects": [...], "arrows": [{"name": "f", "src": "x", "dst": "y"}],
//             "compose": [["g", "f", "gf"]]}
//     },
//     "functors": {"mu": {"objects": {"0": "a", ...}, "arrows": {"f": "g", ...}}},
//     "cells": {"eta": {"components": {"0": "0<=1", ...}}},
//     "witnesses": []
//   }
//
// Identity morphisms and cells act as identities.  A functor may omit its
// arrow map when its target is a poset, and a cell may be omitted entirely
// when the target category is a poset.  A functor for a composite morphism
// may be omitted; it is then read off the composition table.  Composition
// witnesses must be identities, so "witnesses" must be absent or empty.

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "matt/fincat.hpp"
#include "matt/mode_theory.hpp"

namespace matt {

class Diagram {
public:
  Diagram(ModeTheory mt, std::vector<FinCat> cats);
  Diagram(const Diagram&) = delete;
  Diagram& operator=(const Diagram&) = delete;
  Diagram(Diagram&&) = default;

  std::string name;

  const ModeTheory& theory() const { return mt_; }
  const FinCat& cat(ModeId m) const { return cats_.at(idx(m)); }
  const FinFunctor& functor(MorId m) const { return functors_.at(idx(m)); }
  // Component of the cell's transformation at an object of its source mode.
  int cell_at(CellId c, int x) const { return cells_.at(idx(c)).at(x); }
  const std::vector<int>& cell(CellId c) const { return cells_.at(idx(c)); }

  void set_functor(MorId m, FinFunctor f) { functors_.at(idx(m)) = std::move(f); }
  void set_cell(CellId c, std::vector<int> comps) { cells_.at(idx(c)) = std::move(comps); }

  // Exhaustive check of functor and transformation laws and of strict
  // 2-functoriality against the mode theory's tables.
  std::vector<std::string> check_laws() const;

private:
  ModeTheory mt_;
  std::vector<FinCat> cats_;
  std::vector<FinFunctor> functors_;
  std::vector<std::vector<int>> cells_;
};

// Throws MalformedDiagram (or MalformedTable for the embedded theory).
Diagram diagram_from_json(const nlohmann::json& doc, const std::filesystem::path& base = {});
Diagram load_diagram(const std::filesystem::path& path);

FinCat fincat_from_json(const nlohmann::json& doc);

}  // namespace matt

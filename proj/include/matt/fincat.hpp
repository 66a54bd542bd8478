#pragma once

// Finite 1-categories, functors, natural transformations, limits by
// exhaustive terminal-cone search, and comma categories of 2-cells.

#include <cstddef>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "matt/mode_theory.hpp"

namespace matt {

// Objects and arrows are dense indices.  Identities are synthesized and
// named "id:<object>"; composition is a total table on composable pairs.
class FinCat {
public:
  struct Arrow {
    std::string name;
    int src = 0;
    int dst = 0;
  };

  FinCat() = default;

  // `arrows` are the non-identity arrows; `compose` lists (g, f, g.f) by
  // arrow index into `arrows`, where an index >= arrows.size() refers to
  // the identity of object (index - arrows.size()).  Every composable pair
  // of non-identity arrows needs an entry.  Throws MalformedDiagram.
  FinCat(std::vector<std::string> objects, std::vector<Arrow> arrows,
         const std::vector<std::tuple<int, int, int>>& compose);

  // The preorder generated by `leq`; throws MalformedDiagram unless it is
  // antisymmetric.  Arrows are named "a<=b".
  static FinCat poset(std::vector<std::string> elements,
                      const std::vector<std::pair<int, int>>& leq);

  int num_objects() const { return static_cast<int>(objects_.size()); }
  int num_arrows() const { return static_cast<int>(arrows_.size()); }
  const std::string& object_name(int o) const { return objects_.at(o); }
  const Arrow& arrow(int a) const { return arrows_.at(a); }
  int src(int a) const { return arrows_.at(a).src; }
  int dst(int a) const { return arrows_.at(a).dst; }
  int id(int o) const { return identity_.at(o); }
  bool is_identity(int a) const { return id(src(a)) == a; }
  // g . f; throws NotComposable unless dst(f) == src(g).
  int compose(int g, int f) const;
  const std::vector<int>& hom(int a, int b) const { return hom_[a * objects_.size() + b]; }
  std::optional<int> find_object(const std::string& name) const;
  std::optional<int> find_arrow(const std::string& name) const;

  bool is_poset() const;
  bool is_iso(int a) const;
  bool isomorphic(int a, int b) const;

  // Exhaustive associativity and unit check; empty when lawful.
  std::vector<std::string> check_laws() const;

private:
  void index();

  std::vector<std::string> objects_;
  std::vector<Arrow> arrows_;
  std::vector<int> identity_;
  std::vector<int> comp_;  // [g * n + f], -1 when not composable
  std::vector<std::vector<int>> hom_;
};

// Functor between categories owned elsewhere.
struct FinFunctor {
  const FinCat* source = nullptr;
  const FinCat* target = nullptr;
  std::vector<int> obj;
  std::vector<int> arr;

  int operator()(int o) const { return obj.at(o); }
  int map(int a) const { return arr.at(a); }

  static FinFunctor identity(const FinCat& c);
  // g . f
  static FinFunctor compose(const FinFunctor& g, const FinFunctor& f);
  // Exhaustive check of typing, identities and composition.
  std::vector<std::string> check_laws() const;
  bool operator==(const FinFunctor& o) const {
    return source == o.source && target == o.target && obj == o.obj && arr == o.arr;
  }
};

// Natural transformation F => G; comp[x] : F x -> G x.
struct FinNat {
  const FinFunctor* source = nullptr;
  const FinFunctor* target = nullptr;
  std::vector<int> comp;

  std::vector<std::string> check_laws() const;
};

// A finite diagram in a category: nodes are objects, edges are arrows
// between the nodes they connect.
struct FinDiagram {
  struct Edge {
    int from = 0;
    int to = 0;
    int arrow = 0;
  };
  std::vector<int> nodes;
  std::vector<Edge> edges;
};

struct Cone {
  int apex = 0;
  std::vector<int> legs;
};

struct LimitOptions {
  // Upper bound on the number of candidate leg tuples examined.
  std::size_t cap = 1'000'000;
  // Order in which candidate apices are tried; empty means 0..n-1.
  std::vector<int> order;
};

// All cones over `d` with the given apex.
std::vector<Cone> cones_at(const FinCat& c, const FinDiagram& d, int apex,
                           std::size_t cap = LimitOptions{}.cap);

// Arrows f : other.apex -> limit.apex with limit.legs[i] . f == other.legs[i].
std::vector<int> factorizations(const FinCat& c, const Cone& limit, const Cone& other);

// Terminal cone over `d`, or nullopt.  Throws CapExceeded when the search
// would examine more than opts.cap leg tuples.
std::optional<Cone> limit(const FinCat& c, const FinDiagram& d, const LimitOptions& opts = {});

// Whether `cone` is terminal among all cones over `d`.
bool is_limit(const FinCat& c, const FinDiagram& d, const Cone& cone,
              std::size_t cap = LimitOptions{}.cap);

FinDiagram image(const FinFunctor& f, const FinDiagram& d);
Cone image(const FinFunctor& f, const Cone& cone);

// Whether f sends the limit cone `cone` over `d` to a limit cone over f.d.
bool check_preserves_limit(const FinFunctor& f, const FinDiagram& d, const Cone& cone,
                           std::size_t cap = LimitOptions{}.cap);

// The finite diagrams used to probe limits: the empty diagram, every pair of
// objects, and every cospan of non-identity arrows.
struct ProbeDiagram {
  std::string label;
  FinDiagram diagram;
};
std::vector<ProbeDiagram> probe_diagrams(const FinCat& c);

// --------------------------------------------------------------------------
// Comma categories of 2-cells

// For w : r -> s and n : p -> s, the category of pairs
// (sigma : r -> p, beta : w => n . sigma), with arrows gamma : sigma => sigma'
// such that (n <| gamma) . beta == beta'.
struct CommaCat {
  struct Object {
    MorId sigma;
    CellId beta;
  };
  struct Arrow {
    int from = 0;
    int to = 0;
    CellId gamma;
  };
  MorId over;   // w
  MorId under;  // n
  std::vector<Object> objects;
  std::vector<Arrow> arrows;  // includes identities
  FinCat cat;

  std::optional<int> find(MorId sigma, CellId beta) const;
};

// Throws ModeMismatch unless dst(w) == dst(n).
CommaCat comma(const ModeTheory& mt, MorId w, MorId n);

}  // namespace matt

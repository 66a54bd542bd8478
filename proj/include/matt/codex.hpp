#pragma once

// The co-dextrification of a finite diagram: for each mode r the category
// of oplax families over the lax slice at r, its lock functors, the
// reflections onto the base categories and their right adjoints, right
// adjoints to the lock functors, and the pseudo-inverse that extends a
// colax map out of the co-dextrification.

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "matt/diagram.hpp"
#include "matt/fincat.hpp"

namespace matt {

// The lax slice over a mode r: every morphism mu : p -> r, and every
// decomposition alpha : mu => nu . rho with nu : q -> r and rho : p -> q.
struct Slice {
  struct Decomp {
    MorId mu, nu, rho;
    CellId alpha;
    int mu_i = 0;  // positions of mu and nu in `mors`
    int nu_i = 0;
  };

  ModeId mode{};
  std::vector<MorId> mors;
  std::vector<Decomp> decomps;

  int pos(MorId mu) const;
  std::optional<int> find(MorId nu, MorId rho, CellId alpha) const;
  // The decomposition 1_mu : mu => mu . 1.
  int identity_decomp(int mu_i) const;

  std::map<MorId, int> pos_;
  std::map<std::tuple<MorId, MorId, CellId>, int> decomp_pos_;
  std::vector<MorId> identity_rho_;
  std::vector<CellId> identity_cell_;
};

Slice make_slice(const ModeTheory& mt, ModeId r);

// An object of the co-dextrification at r: comp[i] lives in the category
// of src(mors[i]); maps[d] is the structure arrow for decomposition d,
// from comp[nu_i] to C_rho(comp[mu_i]).
struct OplaxObject {
  std::vector<int> comp;
  std::vector<int> maps;
  auto operator<=>(const OplaxObject&) const = default;
};

// Violations of the identity, cocycle and cell-action axioms.
std::vector<std::string> check_oplax_object(const Diagram& d, const Slice& s, const OplaxObject& x);
// Violations of the commuting squares for a family of components.
std::vector<std::string> check_oplax_morphism(const Diagram& d, const Slice& s, const OplaxObject& from,
                                              const OplaxObject& to, const std::vector<int>& comps);

class CodexCategory {
public:
  const Diagram* diagram = nullptr;
  Slice slice;
  std::vector<OplaxObject> objects;
  std::vector<std::vector<int>> arrows;  // components, in cat's arrow order
  FinCat cat;

  ModeId mode() const { return slice.mode; }
  std::optional<int> find(const OplaxObject& x) const;
  std::optional<int> find_arrow(int from, int to, const std::vector<int>& comps) const;
  int component(int object, MorId mu) const { return objects.at(object).comp.at(slice.pos(mu)); }
  std::string describe(int object) const { return cat.object_name(object); }

  void reindex();

private:
  std::map<OplaxObject, int> index_;
};

// Exhaustive enumeration of objects and morphisms.  Throws CapExceeded
// when the search space estimate exceeds `cap`.
CodexCategory enumerate_codex(const Diagram& d, ModeId r, std::size_t cap);

struct CodexOptions {
  std::size_t cap = 1'000'000;
  // When set, every limit search tries apices in a shuffled order.
  std::optional<std::uint64_t> order_seed;
};

// Right adjoint incl_w : C_r -> Chat_s of reflect_w, for w : r -> s.
struct Inclusion {
  MorId over;
  FinFunctor functor;
  std::vector<int> counit;                 // per object of C_r: (incl G)^w -> G
  std::vector<std::vector<Cone>> cones;    // [object][position in slice of s]
  std::vector<CommaCat> commas;            // per position in slice of s
};

// Right adjoint Chat_w : Chat_r -> Chat_s of the lock functor Chat^w.
struct LockAdjoint {
  MorId over;
  FinFunctor functor;
  std::vector<int> counit;  // per object D of Chat_r: Chat^w Chat_w D -> D
  std::vector<FinDiagram> diagrams;
  std::vector<Cone> cones;
};

class Codex {
public:
  explicit Codex(const Diagram& d, CodexOptions opts = {});
  Codex(const Codex&) = delete;
  Codex& operator=(const Codex&) = delete;

  const Diagram& diagram() const { return d_; }
  const ModeTheory& theory() const { return d_.theory(); }
  const CodexCategory& at(ModeId r) const { return *cats_.at(idx(r)); }

  // Chat^mu : Chat_r -> Chat_q for mu : q -> r.
  const FinFunctor& lock_functor(MorId mu);
  // reflect_mu : Chat_r -> C_p for mu : p -> r.
  const FinFunctor& reflect(MorId mu);
  const Inclusion& incl(MorId w);
  // The mate incl_mu(G) -> incl_nu(C_rho G) of decomposition `decomp` in
  // the slice at r, as an arrow of Chat_r.
  int mate(ModeId r, int decomp, int gamma);
  // Chat^alpha(G) : Chat^{nu.rho} G -> Chat^mu G for alpha : mu => nu . rho,
  // as an arrow of Chat_p.
  int cell_action(ModeId r, int decomp, int gamma);
  const LockAdjoint& lock_adjoint(MorId w);

  // Limit search honouring the configured cap and search order.
  std::optional<Cone> limit(const FinCat& c, const FinDiagram& d);
  std::size_t cap() const { return opts_.cap; }

private:
  const Diagram& d_;
  CodexOptions opts_;
  std::uint64_t draws_ = 0;
  std::vector<std::unique_ptr<CodexCategory>> cats_;
  std::map<MorId, FinFunctor> locks_, reflects_;
  std::map<MorId, std::unique_ptr<Inclusion>> incls_;
  std::map<MorId, std::unique_ptr<LockAdjoint>> lock_adjoints_;
  std::map<std::tuple<int, int, int>, int> mates_;
};

// --------------------------------------------------------------------------
// Adjunctions between finite categories

struct AdjunctionCheck {
  std::size_t checks = 0;
  std::vector<std::string> failures;
  std::vector<int> unit;  // per object b: b -> R L b, or -1
};

// Verifies L -| R (L : B -> A, R : A -> B) with the given counit
// L R a -> a: counit naturality, the natural bijection
// Hom_B(b, R a) ~ Hom_A(L b, a) via transposition through the counit,
// and both triangle identities for the induced unit.
AdjunctionCheck verify_adjunction(const FinFunctor& left, const FinFunctor& right,
                                  const std::vector<int>& counit);

// --------------------------------------------------------------------------
// Extension of colax maps

// A colax map G from the co-dextrification (viewed through its right
// adjoints) to the base diagram: G_p : Chat_p -> C_p per mode and, for
// rho : p -> q and D in Chat_p, G_rho(D) : G_q(Chat_rho D) -> C_rho(G_p D).
struct ColaxMap {
  std::vector<FinFunctor> at_mode;
  std::function<std::optional<int>(MorId rho, int delta)> cell;
};

// The reflections with their canonical colax cells.
ColaxMap reflect_colax(Codex& cx);

// The extension G^ : Chat_r -> Chat_r with (G^ G)^mu = G_p(Chat^mu G).
// Throws NotColax when a required component of G is missing.
FinFunctor dextrify_colax(Codex& cx, const ColaxMap& g, ModeId r);

}  // namespace matt

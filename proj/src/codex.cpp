#include "matt/codex.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace matt {

namespace {

Error cap_exceeded(const std::string& what, std::size_t estimate, std::size_t cap) {
  return Error(ErrorCode::CapExceeded, what + " needs " + std::to_string(estimate) +
                                           " candidates, above the cap of " + std::to_string(cap));
}

std::size_t saturating_mul(std::size_t a, std::size_t b) {
  if (a != 0 && b > std::numeric_limits<std::size_t>::max() / a) return std::numeric_limits<std::size_t>::max();
  return a * b;
}

template <class T>
T unique_or_throw(const std::vector<T>& xs, ErrorCode code, const std::string& what) {
  if (xs.size() != 1)
    throw Error(code, what + (xs.empty() ? ": none exists" : ": not unique (" + std::to_string(xs.size()) + ")"));
  return xs.front();
}

}  // namespace

// --------------------------------------------------------------------------
// Slices

int Slice::pos(MorId mu) const {
  auto it = pos_.find(mu);
  if (it == pos_.end()) throw Error(ErrorCode::ModeMismatch, "morphism does not land in the slice's mode");
  return it->second;
}

std::optional<int> Slice::find(MorId nu, MorId rho, CellId alpha) const {
  auto it = decomp_pos_.find({nu, rho, alpha});
  if (it == decomp_pos_.end()) return std::nullopt;
  return it->second;
}

Slice make_slice(const ModeTheory& mt, ModeId r) {
  Slice s;
  s.mode = r;
  s.mors = mt.into(r);
  for (std::size_t i = 0; i < s.mors.size(); ++i) {
    s.pos_[s.mors[i]] = static_cast<int>(i);
    s.identity_rho_.push_back(mt.identity(mt.src(s.mors[i])));
    s.identity_cell_.push_back(mt.identity(s.mors[i]));
  }
  for (MorId nu : s.mors)
    for (MorId rho : mt.into(mt.src(nu))) {
      MorId composite = mt.compose(nu, rho);
      for (std::size_t c = 0; c < mt.num_cells(); ++c) {
        CellId alpha{static_cast<std::int32_t>(c)};
        if (mt.dst(alpha) != composite) continue;
        MorId mu = mt.src(alpha);
        s.decomp_pos_[{nu, rho, alpha}] = static_cast<int>(s.decomps.size());
        s.decomps.push_back({mu, nu, rho, alpha, s.pos(mu), s.pos(nu)});
      }
    }
  return s;
}

int Slice::identity_decomp(int mu_i) const {
  for (std::size_t k = 0; k < decomps.size(); ++k) {
    const auto& d = decomps[k];
    if (d.mu_i == mu_i && d.nu_i == mu_i && d.rho == identity_rho_.at(mu_i) && d.alpha == identity_cell_.at(mu_i))
      return static_cast<int>(k);
  }
  throw Error(ErrorCode::MalformedTable, "slice has no identity decomposition");
}

// --------------------------------------------------------------------------
// Oplax axioms

namespace {

struct Axioms {
  // cocycle: C_sigma(x[d1]) . x[d2] == x[d3]
  struct Cocycle {
    int d1, d2, d3;
    MorId sigma;
  };
  // cell action: C_beta(x.comp[mu_i]) . x[d1] == x[d3]
  struct Action {
    int d1, d3;
    CellId beta;
  };
  std::vector<int> identity;  // per decomposition: is it 1_mu : mu => mu . 1
  std::vector<Cocycle> cocycles;
  std::vector<Action> actions;
};

Axioms axioms_of(const ModeTheory& mt, const Slice& s) {
  Axioms ax;
  for (const auto& d : s.decomps)
    ax.identity.push_back(d.mu == d.nu && mt.is_identity(d.rho) && mt.is_identity(d.alpha));
  const int n = static_cast<int>(s.decomps.size());
  for (int d1 = 0; d1 < n; ++d1) {
    const auto& a = s.decomps[d1];
    for (int d2 = 0; d2 < n; ++d2) {
      const auto& b = s.decomps[d2];
      if (b.mu != a.nu) continue;
      CellId composite = mt.vcompose(mt.whisker_right(b.alpha, a.rho), a.alpha);
      auto d3 = s.find(b.nu, mt.compose(b.rho, a.rho), composite);
      if (!d3) throw Error(ErrorCode::MalformedTable, "slice is not closed under composition");
      ax.cocycles.push_back({d1, d2, *d3, b.rho});
    }
    for (std::size_t c = 0; c < mt.num_cells(); ++c) {
      CellId beta{static_cast<std::int32_t>(c)};
      if (mt.src(beta) != a.rho) continue;
      CellId composite = mt.vcompose(mt.whisker_left(a.nu, beta), a.alpha);
      auto d3 = s.find(a.nu, mt.dst(beta), composite);
      if (!d3) throw Error(ErrorCode::MalformedTable, "slice is not closed under whiskering");
      ax.actions.push_back({d1, *d3, beta});
    }
  }
  return ax;
}

}  // namespace

std::vector<std::string> check_oplax_object(const Diagram& dg, const Slice& s, const OplaxObject& x) {
  const ModeTheory& mt = dg.theory();
  std::vector<std::string> out;
  if (x.comp.size() != s.mors.size() || x.maps.size() != s.decomps.size()) {
    out.push_back("family has the wrong shape");
    return out;
  }
  for (std::size_t i = 0; i < s.mors.size(); ++i) {
    const FinCat& c = dg.cat(mt.src(s.mors[i]));
    if (x.comp[i] < 0 || x.comp[i] >= c.num_objects()) {
      out.push_back("component at " + mt.name(s.mors[i]) + " is not an object");
      return out;
    }
  }
  for (std::size_t k = 0; k < s.decomps.size(); ++k) {
    const auto& d = s.decomps[k];
    const FinCat& c = dg.cat(mt.src(d.nu));
    int from = x.comp[d.nu_i], to = dg.functor(d.rho)(x.comp[d.mu_i]);
    const auto& h = c.hom(from, to);
    if (std::find(h.begin(), h.end(), x.maps[k]) == h.end()) {
      out.push_back("structure map at " + mt.name(d.alpha) + " : " + mt.name(d.mu) + " => " + mt.name(d.nu) +
                    " . " + mt.name(d.rho) + " has the wrong type");
      return out;
    }
  }
  for (std::size_t k = 0; k < s.decomps.size(); ++k) {
    const auto& d = s.decomps[k];
    if (d.mu == d.nu && mt.is_identity(d.rho) && mt.is_identity(d.alpha) &&
        x.maps[k] != dg.cat(mt.src(d.mu)).id(x.comp[d.mu_i]))
      out.push_back("identity decomposition of " + mt.name(d.mu) + " has a non-identity map");
  }
  for (std::size_t k1 = 0; k1 < s.decomps.size(); ++k1) {
    const auto& a = s.decomps[k1];
    const FinCat& cq = dg.cat(mt.src(a.nu));
    for (std::size_t k2 = 0; k2 < s.decomps.size(); ++k2) {
      const auto& b = s.decomps[k2];
      if (b.mu != a.nu) continue;
      auto k3 = s.find(b.nu, mt.compose(b.rho, a.rho), mt.vcompose(mt.whisker_right(b.alpha, a.rho), a.alpha));
      const FinCat& cs = dg.cat(mt.src(b.nu));
      if (!k3 || cs.compose(dg.functor(b.rho).map(x.maps[k1]), x.maps[k2]) != x.maps[*k3])
        out.push_back("cocycle fails for " + mt.name(a.alpha) + " then " + mt.name(b.alpha));
    }
    for (std::size_t c = 0; c < mt.num_cells(); ++c) {
      CellId beta{static_cast<std::int32_t>(c)};
      if (mt.src(beta) != a.rho) continue;
      auto k3 = s.find(a.nu, mt.dst(beta), mt.vcompose(mt.whisker_left(a.nu, beta), a.alpha));
      if (!k3 || cq.compose(dg.cell_at(beta, x.comp[a.mu_i]), x.maps[k1]) != x.maps[*k3])
        out.push_back("cell action fails for " + mt.name(beta) + " after " + mt.name(a.alpha));
    }
  }
  return out;
}

std::vector<std::string> check_oplax_morphism(const Diagram& dg, const Slice& s, const OplaxObject& from,
                                              const OplaxObject& to, const std::vector<int>& comps) {
  const ModeTheory& mt = dg.theory();
  std::vector<std::string> out;
  if (comps.size() != s.mors.size()) {
    out.push_back("morphism has the wrong number of components");
    return out;
  }
  for (std::size_t i = 0; i < s.mors.size(); ++i) {
    const FinCat& c = dg.cat(mt.src(s.mors[i]));
    const auto& h = c.hom(from.comp[i], to.comp[i]);
    if (std::find(h.begin(), h.end(), comps[i]) == h.end()) {
      out.push_back("component at " + mt.name(s.mors[i]) + " has the wrong type");
      return out;
    }
  }
  for (std::size_t k = 0; k < s.decomps.size(); ++k) {
    const auto& d = s.decomps[k];
    const FinCat& c = dg.cat(mt.src(d.nu));
    int lhs = c.compose(dg.functor(d.rho).map(comps[d.mu_i]), from.maps[k]);
    int rhs = c.compose(to.maps[k], comps[d.nu_i]);
    if (lhs != rhs) out.push_back("square at " + mt.name(d.alpha) + " does not commute");
  }
  return out;
}

// --------------------------------------------------------------------------
// Enumeration

std::optional<int> CodexCategory::find(const OplaxObject& x) const {
  auto it = index_.find(x);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> CodexCategory::find_arrow(int from, int to, const std::vector<int>& comps) const {
  for (int a : cat.hom(from, to))
    if (arrows[a] == comps) return a;
  return std::nullopt;
}

void CodexCategory::reindex() {
  index_.clear();
  for (std::size_t i = 0; i < objects.size(); ++i) index_[objects[i]] = static_cast<int>(i);
}

CodexCategory enumerate_codex(const Diagram& dg, ModeId r, std::size_t cap) {
  const ModeTheory& mt = dg.theory();
  CodexCategory out;
  out.diagram = &dg;
  out.slice = make_slice(mt, r);
  const Slice& s = out.slice;
  const std::size_t n = s.mors.size(), nd = s.decomps.size();
  Axioms ax = axioms_of(mt, s);

  std::size_t estimate = 1;
  for (MorId mu : s.mors) estimate = saturating_mul(estimate, dg.cat(mt.src(mu)).num_objects());
  if (estimate > cap) throw cap_exceeded("enumerating the co-dextrification at " + mt.mode_name(r), estimate, cap);

  // constraints become checkable once their largest decomposition is set
  std::vector<std::vector<const Axioms::Cocycle*>> cocycles_at(nd);
  std::vector<std::vector<const Axioms::Action*>> actions_at(nd);
  for (const auto& c : ax.cocycles) cocycles_at[std::max({c.d1, c.d2, c.d3})].push_back(&c);
  for (const auto& a : ax.actions) actions_at[std::max(a.d1, a.d3)].push_back(&a);

  std::size_t work = 0;
  OplaxObject x{std::vector<int>(n, 0), std::vector<int>(nd, -1)};
  auto maps = [&](auto&& self, std::size_t k) -> void {
    if (k == nd) {
      out.objects.push_back(x);
      return;
    }
    const auto& d = s.decomps[k];
    const FinCat& c = dg.cat(mt.src(d.nu));
    int from = x.comp[d.nu_i], to = dg.functor(d.rho)(x.comp[d.mu_i]);
    std::vector<int> candidates;
    if (ax.identity[k]) {
      candidates.push_back(c.id(from));
    } else {
      candidates = c.hom(from, to);
    }
    for (int m : candidates) {
      if (++work > cap) throw cap_exceeded("enumerating structure maps at " + mt.mode_name(r), work, cap);
      x.maps[k] = m;
      bool ok = true;
      for (const auto* cc : cocycles_at[k]) {
        const FinCat& cs = dg.cat(mt.src(s.decomps[cc->d2].nu));
        if (cs.compose(dg.functor(cc->sigma).map(x.maps[cc->d1]), x.maps[cc->d2]) != x.maps[cc->d3]) {
          ok = false;
          break;
        }
      }
      for (std::size_t i = 0; ok && i < actions_at[k].size(); ++i) {
        const auto* a = actions_at[k][i];
        const auto& d1 = s.decomps[a->d1];
        const FinCat& cq = dg.cat(mt.src(d1.nu));
        ok = cq.compose(dg.cell_at(a->beta, x.comp[d1.mu_i]), x.maps[a->d1]) == x.maps[a->d3];
      }
      if (ok) self(self, k + 1);
    }
    x.maps[k] = -1;
  };
  auto comps = [&](auto&& self, std::size_t i) -> void {
    if (i == n) {
      maps(maps, 0);
      return;
    }
    for (int o = 0; o < dg.cat(mt.src(s.mors[i])).num_objects(); ++o) {
      x.comp[i] = o;
      self(self, i + 1);
    }
  };
  comps(comps, 0);
  std::sort(out.objects.begin(), out.objects.end());

  // morphisms
  struct Raw {
    int from, to;
    std::vector<int> comps;
  };
  std::vector<Raw> raw;
  std::vector<std::vector<int>> identities(out.objects.size());
  work = 0;
  for (std::size_t a = 0; a < out.objects.size(); ++a)
    for (std::size_t b = 0; b < out.objects.size(); ++b) {
      const OplaxObject &xa = out.objects[a], &xb = out.objects[b];
      std::vector<int> th(n, -1);
      auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == n) {
          for (std::size_t k = 0; k < nd; ++k) {
            const auto& d = s.decomps[k];
            const FinCat& c = dg.cat(mt.src(d.nu));
            if (c.compose(dg.functor(d.rho).map(th[d.mu_i]), xa.maps[k]) != c.compose(xb.maps[k], th[d.nu_i]))
              return;
          }
          bool ident = a == b;
          for (std::size_t j = 0; ident && j < n; ++j)
            ident = th[j] == dg.cat(mt.src(s.mors[j])).id(xa.comp[j]);
          if (ident) identities[a] = th;
          else raw.push_back({static_cast<int>(a), static_cast<int>(b), th});
          return;
        }
        for (int f : dg.cat(mt.src(s.mors[i])).hom(xa.comp[i], xb.comp[i])) {
          if (++work > cap) throw cap_exceeded("enumerating morphisms at " + mt.mode_name(r), work, cap);
          th[i] = f;
          self(self, i + 1);
        }
      };
      rec(rec, 0);
    }

  std::vector<std::string> names;
  std::map<std::string, int> seen;
  for (const auto& o : out.objects) {
    std::string name = "(";
    for (std::size_t i = 0; i < n; ++i)
      name += (i ? ", " : "") + dg.cat(mt.src(s.mors[i])).object_name(o.comp[i]);
    name += ")";
    int k = seen[name]++;
    if (k > 0) name += "#" + std::to_string(k);
    names.push_back(name);
  }
  std::vector<FinCat::Arrow> arrows;
  std::map<std::tuple<int, int, std::vector<int>>, int> where;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    arrows.push_back({"theta" + std::to_string(i) + ":" + names[raw[i].from] + "->" + names[raw[i].to],
                      raw[i].from, raw[i].to});
    where[{raw[i].from, raw[i].to, raw[i].comps}] = static_cast<int>(i);
  }
  const int plain = static_cast<int>(raw.size());
  for (std::size_t o = 0; o < out.objects.size(); ++o)
    where[{static_cast<int>(o), static_cast<int>(o), identities[o]}] = plain + static_cast<int>(o);
  std::vector<std::tuple<int, int, int>> compose;
  for (int f = 0; f < plain; ++f)
    for (int g = 0; g < plain; ++g) {
      if (raw[f].to != raw[g].from) continue;
      std::vector<int> gf(n);
      for (std::size_t i = 0; i < n; ++i) gf[i] = dg.cat(mt.src(s.mors[i])).compose(raw[g].comps[i], raw[f].comps[i]);
      auto it = where.find({raw[f].from, raw[g].to, gf});
      if (it == where.end()) throw Error(ErrorCode::MalformedDiagram, "co-dextrification is not closed under composition");
      compose.emplace_back(g, f, it->second);
    }
  out.cat = FinCat(names, arrows, compose);
  for (const auto& r0 : raw) out.arrows.push_back(r0.comps);
  for (const auto& id : identities) out.arrows.push_back(id);
  out.reindex();
  return out;
}

// --------------------------------------------------------------------------
// Codex

Codex::Codex(const Diagram& d, CodexOptions opts) : d_(d), opts_(std::move(opts)) {
  for (std::size_t m = 0; m < theory().num_modes(); ++m)
    cats_.push_back(std::make_unique<CodexCategory>(enumerate_codex(d_, ModeId{static_cast<std::int32_t>(m)}, opts_.cap)));
}

std::optional<Cone> Codex::limit(const FinCat& c, const FinDiagram& dgm) {
  LimitOptions lo;
  lo.cap = opts_.cap;
  if (opts_.order_seed) {
    lo.order.resize(c.num_objects());
    std::iota(lo.order.begin(), lo.order.end(), 0);
    std::mt19937_64 rng(*opts_.order_seed + 0x9e3779b97f4a7c15ULL * ++draws_);
    std::shuffle(lo.order.begin(), lo.order.end(), rng);
  }
  return matt::limit(c, dgm, lo);
}

const FinFunctor& Codex::lock_functor(MorId mu) {
  if (auto it = locks_.find(mu); it != locks_.end()) return it->second;
  const ModeTheory& mt = theory();
  const CodexCategory& src = at(mt.dst(mu));
  const CodexCategory& dst = at(mt.src(mu));
  const Slice &sr = src.slice, &sq = dst.slice;
  std::vector<int> comp_pos, map_pos;
  for (MorId nu : sq.mors) comp_pos.push_back(sr.pos(mt.compose(mu, nu)));
  for (const auto& d : sq.decomps) {
    auto k = sr.find(mt.compose(mu, d.nu), d.rho, mt.whisker_left(mu, d.alpha));
    if (!k) throw Error(ErrorCode::MalformedTable, "lock functor: missing decomposition");
    map_pos.push_back(*k);
  }
  FinFunctor f{&src.cat, &dst.cat, {}, {}};
  for (const auto& x : src.objects) {
    OplaxObject y;
    for (int p : comp_pos) y.comp.push_back(x.comp[p]);
    for (int p : map_pos) y.maps.push_back(x.maps[p]);
    auto o = dst.find(y);
    if (!o) throw Error(ErrorCode::MalformedDiagram, "lock functor " + mt.name(mu) + " leaves the category");
    f.obj.push_back(*o);
  }
  for (int a = 0; a < src.cat.num_arrows(); ++a) {
    std::vector<int> comps;
    for (int p : comp_pos) comps.push_back(src.arrows[a][p]);
    auto b = dst.find_arrow(f(src.cat.src(a)), f(src.cat.dst(a)), comps);
    if (!b) throw Error(ErrorCode::MalformedDiagram, "lock functor " + mt.name(mu) + " loses an arrow");
    f.arr.push_back(*b);
  }
  return locks_.emplace(mu, std::move(f)).first->second;
}

const FinFunctor& Codex::reflect(MorId mu) {
  if (auto it = reflects_.find(mu); it != reflects_.end()) return it->second;
  const ModeTheory& mt = theory();
  const CodexCategory& src = at(mt.dst(mu));
  int p = src.slice.pos(mu);
  FinFunctor f{&src.cat, &d_.cat(mt.src(mu)), {}, {}};
  for (const auto& x : src.objects) f.obj.push_back(x.comp[p]);
  for (const auto& a : src.arrows) f.arr.push_back(a[p]);
  return reflects_.emplace(mu, std::move(f)).first->second;
}

const Inclusion& Codex::incl(MorId w) {
  if (auto it = incls_.find(w); it != incls_.end()) return *it->second;
  const ModeTheory& mt = theory();
  const ModeId r = mt.src(w), s = mt.dst(w);
  const CodexCategory& hat = at(s);
  const Slice& ss = hat.slice;
  const FinCat& cr = d_.cat(r);
  auto inc = std::make_unique<Inclusion>();
  inc->over = w;
  for (MorId nu : ss.mors) inc->commas.push_back(comma(mt, w, nu));

  auto diagram_for = [&](int gamma, std::size_t i) {
    const CommaCat& cm = inc->commas[i];
    FinDiagram dgm;
    for (const auto& o : cm.objects) dgm.nodes.push_back(d_.functor(o.sigma)(gamma));
    for (const auto& a : cm.arrows) dgm.edges.push_back({a.from, a.to, d_.cell_at(a.gamma, gamma)});
    return dgm;
  };

  inc->functor = FinFunctor{&cr, &hat.cat, {}, {}};
  inc->cones.resize(cr.num_objects());
  for (int g = 0; g < cr.num_objects(); ++g) {
    std::vector<FinDiagram> dgms;
    for (std::size_t i = 0; i < ss.mors.size(); ++i) {
      dgms.push_back(diagram_for(g, i));
      auto cone = limit(d_.cat(mt.src(ss.mors[i])), dgms.back());
      if (!cone)
        throw Error(ErrorCode::LimitAbsent, "incl along " + mt.name(w) + " of " + cr.object_name(g) +
                                                ": no limit over the comma category at " + mt.name(ss.mors[i]));
      inc->cones[g].push_back(*cone);
    }
    OplaxObject x;
    for (const auto& c : inc->cones[g]) x.comp.push_back(c.apex);
    for (const auto& d : ss.decomps) {
      const FinFunctor& frho = d_.functor(d.rho);
      const FinCat& cq = d_.cat(mt.src(d.nu));
      const Cone& cmu = inc->cones[g][d.mu_i];
      Cone target = image(frho, cmu);
      if (!is_limit(cq, image(frho, dgms[d.mu_i]), target, opts_.cap))
        throw Error(ErrorCode::LimitNotPreserved,
                    "functor of " + mt.name(d.rho) + " does not preserve the limit defining incl along " +
                        mt.name(w) + " of " + cr.object_name(g) + " at " + mt.name(d.mu));
      Cone source{inc->cones[g][d.nu_i].apex, {}};
      const CommaCat& cm_mu = inc->commas[d.mu_i];
      const CommaCat& cm_nu = inc->commas[d.nu_i];
      for (const auto& o : cm_mu.objects) {
        auto j = cm_nu.find(mt.compose(d.rho, o.sigma), mt.vcompose(mt.whisker_right(d.alpha, o.sigma), o.beta));
        if (!j) throw Error(ErrorCode::MalformedTable, "comma categories are not closed under reindexing");
        source.legs.push_back(inc->cones[g][d.nu_i].legs[*j]);
      }
      x.maps.push_back(unique_or_throw(factorizations(cq, target, source), ErrorCode::LimitNotPreserved,
                                       "structure map of incl along " + mt.name(w)));
    }
    auto o = hat.find(x);
    if (!o)
      throw Error(ErrorCode::MalformedDiagram,
                  "incl along " + mt.name(w) + " of " + cr.object_name(g) + " is not an oplax family");
    inc->functor.obj.push_back(*o);
    int wi = ss.pos(w);
    auto k = inc->commas[wi].find(mt.identity(r), mt.identity(w));
    inc->counit.push_back(inc->cones[g][wi].legs.at(*k));
  }
  for (int a = 0; a < cr.num_arrows(); ++a) {
    int g = cr.src(a), h = cr.dst(a);
    std::vector<int> comps;
    for (std::size_t i = 0; i < ss.mors.size(); ++i) {
      const FinCat& cp = d_.cat(mt.src(ss.mors[i]));
      Cone source{inc->cones[g][i].apex, {}};
      for (std::size_t k = 0; k < inc->commas[i].objects.size(); ++k)
        source.legs.push_back(
            cp.compose(d_.functor(inc->commas[i].objects[k].sigma).map(a), inc->cones[g][i].legs[k]));
      comps.push_back(unique_or_throw(factorizations(cp, inc->cones[h][i], source), ErrorCode::LimitAbsent,
                                      "incl along " + mt.name(w) + " of " + cr.arrow(a).name));
    }
    auto b = hat.find_arrow(inc->functor(g), inc->functor(h), comps);
    if (!b) throw Error(ErrorCode::MalformedDiagram, "incl along " + mt.name(w) + " loses an arrow");
    inc->functor.arr.push_back(*b);
  }
  return *incls_.emplace(w, std::move(inc)).first->second;
}

int Codex::mate(ModeId r, int decomp, int gamma) {
  if (auto it = mates_.find({static_cast<int>(idx(r)), decomp, gamma}); it != mates_.end()) return it->second;
  const ModeTheory& mt = theory();
  const CodexCategory& hat = at(r);
  const auto& d = hat.slice.decomps.at(decomp);
  const Inclusion& imu = incl(d.mu);
  const Inclusion& inu = incl(d.nu);
  const FinFunctor& frho = d_.functor(d.rho);
  const FinCat& cq = d_.cat(mt.src(d.nu));
  int from = imu.functor(gamma), to = inu.functor(frho(gamma));
  int target = cq.compose(frho.map(imu.counit[gamma]), hat.objects[from].maps[decomp]);
  std::vector<int> found;
  for (int t : hat.cat.hom(from, to))
    if (cq.compose(inu.counit[frho(gamma)], hat.arrows[t][d.nu_i]) == target) found.push_back(t);
  int m = unique_or_throw(found, ErrorCode::MalformedDiagram, "mate of " + mt.name(d.alpha));
  mates_[{static_cast<int>(idx(r)), decomp, gamma}] = m;
  return m;
}

int Codex::cell_action(ModeId r, int decomp, int gamma) {
  const ModeTheory& mt = theory();
  const CodexCategory& hat = at(r);
  const auto& d = hat.slice.decomps.at(decomp);
  MorId nurho = mt.compose(d.nu, d.rho);
  const CodexCategory& low = at(mt.src(d.mu));
  std::vector<int> comps;
  for (MorId kappa : low.slice.mors) {
    auto k = hat.slice.find(mt.compose(nurho, kappa), mt.identity(mt.src(kappa)), mt.whisker_right(d.alpha, kappa));
    if (!k) throw Error(ErrorCode::MalformedTable, "cell action: missing decomposition");
    comps.push_back(hat.objects[gamma].maps[*k]);
  }
  int from = lock_functor(nurho)(gamma), to = lock_functor(d.mu)(gamma);
  auto a = low.find_arrow(from, to, comps);
  if (!a) throw Error(ErrorCode::MalformedDiagram, "action of " + mt.name(d.alpha) + " is not a morphism");
  return *a;
}

const LockAdjoint& Codex::lock_adjoint(MorId w) {
  if (auto it = lock_adjoints_.find(w); it != lock_adjoints_.end()) return *it->second;
  const ModeTheory& mt = theory();
  const ModeId r = mt.src(w), s = mt.dst(w);
  const CodexCategory& low = at(r);
  const CodexCategory& high = at(s);
  const Slice &sr = low.slice, &ss = high.slice;
  auto la = std::make_unique<LockAdjoint>();
  la->over = w;
  la->functor = FinFunctor{&low.cat, &high.cat, {}, {}};
  // node layout: one node per morphism into r, then one per decomposition
  for (std::size_t delta = 0; delta < low.objects.size(); ++delta) {
    const OplaxObject& x = low.objects[delta];
    FinDiagram dgm;
    for (std::size_t i = 0; i < sr.mors.size(); ++i)
      dgm.nodes.push_back(incl(mt.compose(w, sr.mors[i])).functor(x.comp[i]));
    for (std::size_t k = 0; k < sr.decomps.size(); ++k) {
      const auto& d = sr.decomps[k];
      const Inclusion& iwnu = incl(mt.compose(w, d.nu));
      int m = static_cast<int>(dgm.nodes.size());
      dgm.nodes.push_back(iwnu.functor(d_.functor(d.rho)(x.comp[d.mu_i])));
      dgm.edges.push_back({d.nu_i, m, iwnu.functor.map(x.maps[k])});
      auto ks = ss.find(mt.compose(w, d.nu), d.rho, mt.whisker_left(w, d.alpha));
      if (!ks) throw Error(ErrorCode::MalformedTable, "right adjoint: missing decomposition");
      dgm.edges.push_back({d.mu_i, m, mate(s, *ks, x.comp[d.mu_i])});
    }
    auto cone = limit(high.cat, dgm);
    if (!cone)
      throw Error(ErrorCode::LimitAbsent, "right adjoint of the lock " + mt.name(w) + " at " +
                                              low.describe(static_cast<int>(delta)) + ": the limit does not exist");
    la->functor.obj.push_back(cone->apex);
    la->diagrams.push_back(std::move(dgm));
    la->cones.push_back(*cone);
  }
  const FinFunctor& lock = lock_functor(w);
  for (std::size_t delta = 0; delta < low.objects.size(); ++delta) {
    const Cone& cone = la->cones[delta];
    std::vector<int> comps;
    for (std::size_t i = 0; i < sr.mors.size(); ++i) {
      MorId wmu = mt.compose(w, sr.mors[i]);
      const FinCat& cp = d_.cat(mt.src(wmu));
      comps.push_back(cp.compose(incl(wmu).counit[low.objects[delta].comp[i]], high.arrows[cone.legs[i]][ss.pos(wmu)]));
    }
    auto e = low.find_arrow(lock(cone.apex), static_cast<int>(delta), comps);
    if (!e) throw Error(ErrorCode::MalformedDiagram, "counit of the lock adjunction is not a morphism");
    la->counit.push_back(*e);
  }
  for (int a = 0; a < low.cat.num_arrows(); ++a) {
    int x = low.cat.src(a), y = low.cat.dst(a);
    const Cone& cx = la->cones[x];
    Cone source{cx.apex, {}};
    for (std::size_t i = 0; i < sr.mors.size(); ++i)
      source.legs.push_back(high.cat.compose(incl(mt.compose(w, sr.mors[i])).functor.map(low.arrows[a][i]), cx.legs[i]));
    for (std::size_t k = 0; k < sr.decomps.size(); ++k) {
      const auto& d = sr.decomps[k];
      int f = d_.functor(d.rho).map(low.arrows[a][d.mu_i]);
      source.legs.push_back(high.cat.compose(incl(mt.compose(w, d.nu)).functor.map(f), cx.legs[sr.mors.size() + k]));
    }
    la->functor.arr.push_back(unique_or_throw(factorizations(high.cat, la->cones[y], source), ErrorCode::LimitAbsent,
                                              "right adjoint of the lock " + mt.name(w) + " on an arrow"));
  }
  return *lock_adjoints_.emplace(w, std::move(la)).first->second;
}

// --------------------------------------------------------------------------
// Adjunctions

AdjunctionCheck verify_adjunction(const FinFunctor& left, const FinFunctor& right, const std::vector<int>& counit) {
  AdjunctionCheck out;
  const FinCat& a = *left.target;
  const FinCat& b = *left.source;
  out.unit.assign(b.num_objects(), -1);
  auto fail = [&](std::string s) {
    if (out.failures.size() < 20) out.failures.push_back(std::move(s));
  };
  for (int x = 0; x < a.num_objects(); ++x) {
    ++out.checks;
    int e = counit.at(x);
    if (a.src(e) != left(right(x)) || a.dst(e) != x) {
      fail("counit at " + a.object_name(x) + " has the wrong type");
      return out;
    }
  }
  for (int g = 0; g < a.num_arrows(); ++g) {
    ++out.checks;
    if (a.compose(counit[a.dst(g)], left.map(right.map(g))) != a.compose(g, counit[a.src(g)]))
      fail("counit is not natural at " + a.arrow(g).name);
  }
  for (int y = 0; y < b.num_objects(); ++y)
    for (int x = 0; x < a.num_objects(); ++x) {
      ++out.checks;
      std::vector<int> images;
      for (int t : b.hom(y, right(x))) images.push_back(a.compose(counit[x], left.map(t)));
      std::vector<int> sorted = images;
      std::sort(sorted.begin(), sorted.end());
      std::vector<int> expect = a.hom(left(y), x);
      std::sort(expect.begin(), expect.end());
      if (sorted != expect)
        fail("transposition Hom(" + b.object_name(y) + ", R " + a.object_name(x) + ") -> Hom(L " + b.object_name(y) +
             ", " + a.object_name(x) + ") is not a bijection (" + std::to_string(images.size()) + " vs " +
             std::to_string(expect.size()) + ")");
    }
  for (int y = 0; y < b.num_objects(); ++y) {
    ++out.checks;
    int ly = left(y);
    std::vector<int> found;
    for (int t : b.hom(y, right(ly)))
      if (a.compose(counit[ly], left.map(t)) == a.id(ly)) found.push_back(t);
    if (found.size() != 1) {
      fail("no unique unit at " + b.object_name(y));
      continue;
    }
    out.unit[y] = found.front();
  }
  if (!out.failures.empty()) return out;
  for (int f = 0; f < b.num_arrows(); ++f) {
    ++out.checks;
    if (b.compose(right.map(left.map(f)), out.unit[b.src(f)]) != b.compose(out.unit[b.dst(f)], f))
      fail("unit is not natural at " + b.arrow(f).name);
  }
  for (int y = 0; y < b.num_objects(); ++y) {
    ++out.checks;
    if (a.compose(counit[left(y)], left.map(out.unit[y])) != a.id(left(y)))
      fail("triangle identity fails on the left at " + b.object_name(y));
  }
  for (int x = 0; x < a.num_objects(); ++x) {
    ++out.checks;
    if (b.compose(right.map(counit[x]), out.unit[right(x)]) != b.id(right(x)))
      fail("triangle identity fails on the right at " + a.object_name(x));
  }
  return out;
}

// --------------------------------------------------------------------------
// Colax maps

ColaxMap reflect_colax(Codex& cx) {
  const ModeTheory& mt = cx.theory();
  ColaxMap g;
  for (std::size_t m = 0; m < mt.num_modes(); ++m)
    g.at_mode.push_back(cx.reflect(mt.identity(ModeId{static_cast<std::int32_t>(m)})));
  g.cell = [&cx](MorId rho, int delta) -> std::optional<int> {
    const ModeTheory& t = cx.theory();
    ModeId p = t.src(rho), q = t.dst(rho);
    const LockAdjoint& la = cx.lock_adjoint(rho);
    const CodexCategory& low = cx.at(p);
    const CodexCategory& high = cx.at(q);
    int x = la.functor(delta);
    auto k = high.slice.find(t.identity(q), rho, t.identity(rho));
    if (!k) return std::nullopt;
    int eps = low.arrows[la.counit[delta]][low.slice.pos(t.identity(p))];
    return cx.diagram().cat(q).compose(cx.diagram().functor(rho).map(eps), high.objects[x].maps[*k]);
  };
  return g;
}

FinFunctor dextrify_colax(Codex& cx, const ColaxMap& g, ModeId r) {
  const ModeTheory& mt = cx.theory();
  const Diagram& dg = cx.diagram();
  const CodexCategory& hat = cx.at(r);
  const Slice& s = hat.slice;
  if (g.at_mode.size() != mt.num_modes()) throw Error(ErrorCode::NotColax, "colax map needs a functor per mode");
  FinFunctor out{&hat.cat, &hat.cat, {}, {}};
  for (std::size_t gamma = 0; gamma < hat.objects.size(); ++gamma) {
    const int gm = static_cast<int>(gamma);
    OplaxObject y;
    for (MorId mu : s.mors) y.comp.push_back(g.at_mode[idx(mt.src(mu))](cx.lock_functor(mu)(gm)));
    for (std::size_t k = 0; k < s.decomps.size(); ++k) {
      const auto& d = s.decomps[k];
      const ModeId p = mt.src(d.mu), q = mt.src(d.nu);
      int xq = cx.lock_functor(d.nu)(gm);
      int yp = cx.lock_functor(d.mu)(gm);
      int action = cx.cell_action(r, static_cast<int>(k), gm);
      const LockAdjoint& la = cx.lock_adjoint(d.rho);
      const FinFunctor& lock = cx.lock_functor(d.rho);
      const CodexCategory& low = cx.at(p);
      std::vector<int> found;
      for (int phi : cx.at(q).cat.hom(xq, la.functor(yp)))
        if (low.cat.compose(la.counit[yp], lock.map(phi)) == action) found.push_back(phi);
      if (found.size() != 1)
        throw Error(ErrorCode::NotColax, "no unique transpose of the action of " + mt.name(d.alpha));
      auto cell = g.cell(d.rho, yp);
      if (!cell) throw Error(ErrorCode::NotColax, "colax map has no component at " + mt.name(d.rho));
      y.maps.push_back(dg.cat(q).compose(*cell, g.at_mode[idx(q)].map(found.front())));
    }
    auto o = hat.find(y);
    if (!o) throw Error(ErrorCode::NotColax, "extension of the colax map is not an oplax family at " + hat.describe(gm));
    out.obj.push_back(*o);
  }
  for (int a = 0; a < hat.cat.num_arrows(); ++a) {
    std::vector<int> comps;
    for (MorId mu : s.mors) comps.push_back(g.at_mode[idx(mt.src(mu))].map(cx.lock_functor(mu).map(a)));
    auto b = hat.find_arrow(out(hat.cat.src(a)), out(hat.cat.dst(a)), comps);
    if (!b) throw Error(ErrorCode::NotColax, "extension of the colax map loses an arrow");
    out.arr.push_back(*b);
  }
  return out;
}

}  // namespace matt

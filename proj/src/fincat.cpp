#include "matt/fincat.hpp"

#include <algorithm>
#include <map>

namespace matt {

namespace {

Error malformed(std::string msg) { return Error(ErrorCode::MalformedDiagram, std::move(msg)); }

}  // namespace

FinCat::FinCat(std::vector<std::string> objects, std::vector<Arrow> arrows,
               const std::vector<std::tuple<int, int, int>>& compose)
    : objects_(std::move(objects)), arrows_(std::move(arrows)) {
  const int n_obj = num_objects();
  const int n_plain = static_cast<int>(arrows_.size());
  for (const auto& a : arrows_)
    if (a.src < 0 || a.src >= n_obj || a.dst < 0 || a.dst >= n_obj)
      throw malformed("arrow '" + a.name + "' has an endpoint outside the category");
  for (int o = 0; o < n_obj; ++o) {
    identity_.push_back(static_cast<int>(arrows_.size()));
    arrows_.push_back({"id:" + objects_[o], o, o});
  }
  const int n = num_arrows();
  comp_.assign(static_cast<std::size_t>(n) * n, -1);
  for (int g = 0; g < n; ++g)
    for (int f = 0; f < n; ++f) {
      if (arrows_[f].dst != arrows_[g].src) continue;
      if (g >= n_plain) comp_[g * n + f] = f;
      else if (f >= n_plain) comp_[g * n + f] = g;
    }
  for (auto [g, f, gf] : compose) {
    if (g < 0 || g >= n || f < 0 || f >= n || gf < 0 || gf >= n)
      throw malformed("composition entry refers to an unknown arrow");
    const Arrow &ag = arrows_[g], &af = arrows_[f], &agf = arrows_[gf];
    if (af.dst != ag.src)
      throw malformed("composition entry " + ag.name + " . " + af.name + " is not composable");
    if (agf.src != af.src || agf.dst != ag.dst)
      throw malformed("composite " + ag.name + " . " + af.name + " = " + agf.name + " is ill-typed");
    int& slot = comp_[g * n + f];
    if (slot >= 0 && slot != gf)
      throw malformed("conflicting composites for " + ag.name + " . " + af.name);
    slot = gf;
  }
  for (int g = 0; g < n; ++g)
    for (int f = 0; f < n; ++f)
      if (arrows_[f].dst == arrows_[g].src && comp_[g * n + f] < 0)
        throw malformed("missing composite " + arrows_[g].name + " . " + arrows_[f].name);
  index();
}

void FinCat::index() {
  const std::size_t n = objects_.size();
  hom_.assign(n * n, {});
  for (int a = 0; a < num_arrows(); ++a) hom_[arrows_[a].src * n + arrows_[a].dst].push_back(a);
}

FinCat FinCat::poset(std::vector<std::string> elements, const std::vector<std::pair<int, int>>& leq) {
  const int n = static_cast<int>(elements.size());
  std::vector<std::vector<bool>> le(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) le[i][i] = true;
  for (auto [a, b] : leq) {
    if (a < 0 || a >= n || b < 0 || b >= n) throw malformed("order relation names an unknown element");
    le[a][b] = true;
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (le[i][k] && le[k][j]) le[i][j] = true;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (le[i][j] && le[j][i])
        throw malformed("order is not antisymmetric: " + elements[i] + " and " + elements[j]);
  std::vector<Arrow> arrows;
  std::map<std::pair<int, int>, int> index;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && le[i][j]) {
        index[{i, j}] = static_cast<int>(arrows.size());
        arrows.push_back({elements[i] + "<=" + elements[j], i, j});
      }
  std::vector<std::tuple<int, int, int>> compose;
  for (auto [ij, f] : index)
    for (auto [jk, g] : index)
      if (ij.second == jk.first) compose.emplace_back(g, f, index.at({ij.first, jk.second}));
  // a < b < a cannot happen, so every composite is a non-identity arrow
  return FinCat(std::move(elements), std::move(arrows), compose);
}

int FinCat::compose(int g, int f) const {
  int r = comp_.at(static_cast<std::size_t>(g) * num_arrows() + f);
  if (r < 0)
    throw Error(ErrorCode::NotComposable,
                "arrows " + arrows_[g].name + " and " + arrows_[f].name + " are not composable");
  return r;
}

std::optional<int> FinCat::find_object(const std::string& name) const {
  auto it = std::find(objects_.begin(), objects_.end(), name);
  if (it == objects_.end()) return std::nullopt;
  return static_cast<int>(it - objects_.begin());
}

std::optional<int> FinCat::find_arrow(const std::string& name) const {
  for (int a = 0; a < num_arrows(); ++a)
    if (arrows_[a].name == name) return a;
  return std::nullopt;
}

bool FinCat::is_poset() const {
  for (int a = 0; a < num_objects(); ++a)
    for (int b = 0; b < num_objects(); ++b) {
      if (hom(a, b).size() > 1) return false;
      if (a != b && !hom(a, b).empty() && !hom(b, a).empty()) return false;
    }
  return true;
}

bool FinCat::is_iso(int a) const {
  for (int b : hom(dst(a), src(a)))
    if (compose(b, a) == id(src(a)) && compose(a, b) == id(dst(a))) return true;
  return false;
}

bool FinCat::isomorphic(int a, int b) const {
  for (int f : hom(a, b))
    if (is_iso(f)) return true;
  return false;
}

std::vector<std::string> FinCat::check_laws() const {
  std::vector<std::string> out;
  const int n = num_arrows();
  for (int f = 0; f < n; ++f)
    if (compose(id(dst(f)), f) != f || compose(f, id(src(f))) != f)
      out.push_back("unit law fails at " + arrows_[f].name);
  for (int f = 0; f < n; ++f)
    for (int g = 0; g < n; ++g) {
      if (src(g) != dst(f)) continue;
      int gf = compose(g, f);
      if (src(gf) != src(f) || dst(gf) != dst(g))
        out.push_back("composite " + arrows_[g].name + " . " + arrows_[f].name + " is ill-typed");
      for (int h = 0; h < n; ++h) {
        if (src(h) != dst(g)) continue;
        if (compose(h, gf) != compose(compose(h, g), f))
          out.push_back("associativity fails at " + arrows_[h].name + ", " + arrows_[g].name + ", " +
                        arrows_[f].name);
      }
    }
  return out;
}

// --------------------------------------------------------------------------

FinFunctor FinFunctor::identity(const FinCat& c) {
  FinFunctor f{&c, &c, {}, {}};
  for (int o = 0; o < c.num_objects(); ++o) f.obj.push_back(o);
  for (int a = 0; a < c.num_arrows(); ++a) f.arr.push_back(a);
  return f;
}

FinFunctor FinFunctor::compose(const FinFunctor& g, const FinFunctor& f) {
  if (f.target != g.source) throw Error(ErrorCode::NotComposable, "functors are not composable");
  FinFunctor r{f.source, g.target, {}, {}};
  for (int o : f.obj) r.obj.push_back(g(o));
  for (int a : f.arr) r.arr.push_back(g.map(a));
  return r;
}

std::vector<std::string> FinFunctor::check_laws() const {
  std::vector<std::string> out;
  const FinCat &s = *source, &t = *target;
  if (static_cast<int>(obj.size()) != s.num_objects() || static_cast<int>(arr.size()) != s.num_arrows()) {
    out.push_back("functor tables do not cover the source category");
    return out;
  }
  for (int o : obj)
    if (o < 0 || o >= t.num_objects()) {
      out.push_back("object image outside the target category");
      return out;
    }
  for (int a : arr)
    if (a < 0 || a >= t.num_arrows()) {
      out.push_back("arrow image outside the target category");
      return out;
    }
  for (int a = 0; a < s.num_arrows(); ++a)
    if (t.src(arr[a]) != obj[s.src(a)] || t.dst(arr[a]) != obj[s.dst(a)])
      out.push_back("image of " + s.arrow(a).name + " has the wrong endpoints");
  if (!out.empty()) return out;
  for (int o = 0; o < s.num_objects(); ++o)
    if (arr[s.id(o)] != t.id(obj[o])) out.push_back("identity of " + s.object_name(o) + " not preserved");
  for (int f = 0; f < s.num_arrows(); ++f)
    for (int g = 0; g < s.num_arrows(); ++g)
      if (s.src(g) == s.dst(f) && arr[s.compose(g, f)] != t.compose(arr[g], arr[f]))
        out.push_back("composite " + s.arrow(g).name + " . " + s.arrow(f).name + " not preserved");
  return out;
}

std::vector<std::string> FinNat::check_laws() const {
  std::vector<std::string> out;
  const FinFunctor &f = *source, &g = *target;
  const FinCat &s = *f.source, &t = *f.target;
  if (g.source != f.source || g.target != f.target) {
    out.push_back("transformation between functors of different types");
    return out;
  }
  if (static_cast<int>(comp.size()) != s.num_objects()) {
    out.push_back("transformation does not cover every object");
    return out;
  }
  for (int x = 0; x < s.num_objects(); ++x) {
    int c = comp[x];
    if (c < 0 || c >= t.num_arrows() || t.src(c) != f(x) || t.dst(c) != g(x)) {
      out.push_back("component at " + s.object_name(x) + " has the wrong type");
      return out;
    }
  }
  for (int a = 0; a < s.num_arrows(); ++a) {
    int x = s.src(a), y = s.dst(a);
    if (t.compose(comp[y], f.map(a)) != t.compose(g.map(a), comp[x]))
      out.push_back("naturality square at " + s.arrow(a).name + " does not commute");
  }
  return out;
}

// --------------------------------------------------------------------------
// Limits

namespace {

std::size_t tuple_count(const FinCat& c, const FinDiagram& d, int apex) {
  std::size_t n = 1;
  for (int node : d.nodes) {
    n *= c.hom(apex, node).size();
    if (n == 0) return 0;
    if (n > (std::size_t{1} << 48)) return n;
  }
  return n;
}

void enumerate_cones(const FinCat& c, const FinDiagram& d, int apex, std::vector<Cone>& out) {
  const std::size_t k = d.nodes.size();
  std::vector<int> legs(k);
  // edges are checked as soon as both endpoints have legs
  std::vector<std::vector<const FinDiagram::Edge*>> ready(k);
  for (const auto& e : d.edges) ready[std::max(e.from, e.to)].push_back(&e);
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == k) {
      out.push_back({apex, legs});
      return;
    }
    for (int leg : c.hom(apex, d.nodes[i])) {
      legs[i] = leg;
      bool ok = true;
      for (const auto* e : ready[i])
        if (c.compose(e->arrow, legs[e->from]) != legs[e->to]) {
          ok = false;
          break;
        }
      if (ok) self(self, i + 1);
    }
  };
  rec(rec, 0);
}

void check_diagram(const FinCat& c, const FinDiagram& d) {
  for (const auto& e : d.edges)
    if (e.from < 0 || e.to < 0 || e.from >= static_cast<int>(d.nodes.size()) ||
        e.to >= static_cast<int>(d.nodes.size()) || c.src(e.arrow) != d.nodes[e.from] ||
        c.dst(e.arrow) != d.nodes[e.to])
      throw malformed("diagram edge does not connect its nodes");
}

std::vector<Cone> all_cones(const FinCat& c, const FinDiagram& d, const std::vector<int>& order,
                            std::size_t cap) {
  check_diagram(c, d);
  std::size_t total = 0;
  for (int a : order) {
    total += tuple_count(c, d, a);
    if (total > cap)
      throw Error(ErrorCode::CapExceeded, "limit search needs more than " + std::to_string(cap) +
                                              " candidate cones (estimate " + std::to_string(total) +
                                              " and counting)");
  }
  std::vector<Cone> cones;
  for (int a : order) enumerate_cones(c, d, a, cones);
  return cones;
}

std::vector<int> default_order(const FinCat& c) {
  std::vector<int> order(c.num_objects());
  for (int i = 0; i < c.num_objects(); ++i) order[i] = i;
  return order;
}

bool terminal_among(const FinCat& c, const Cone& cand, const std::vector<Cone>& cones) {
  for (const auto& other : cones)
    if (factorizations(c, cand, other).size() != 1) return false;
  return true;
}

}  // namespace

std::vector<Cone> cones_at(const FinCat& c, const FinDiagram& d, int apex, std::size_t cap) {
  return all_cones(c, d, {apex}, cap);
}

std::vector<int> factorizations(const FinCat& c, const Cone& limit, const Cone& other) {
  std::vector<int> out;
  for (int f : c.hom(other.apex, limit.apex)) {
    bool ok = true;
    for (std::size_t i = 0; i < limit.legs.size() && ok; ++i)
      ok = c.compose(limit.legs[i], f) == other.legs[i];
    if (ok) out.push_back(f);
  }
  return out;
}

std::optional<Cone> limit(const FinCat& c, const FinDiagram& d, const LimitOptions& opts) {
  std::vector<int> order = opts.order.empty() ? default_order(c) : opts.order;
  auto cones = all_cones(c, d, order, opts.cap);
  for (const auto& cand : cones)
    if (terminal_among(c, cand, cones)) return cand;
  return std::nullopt;
}

bool is_limit(const FinCat& c, const FinDiagram& d, const Cone& cone, std::size_t cap) {
  return terminal_among(c, cone, all_cones(c, d, default_order(c), cap));
}

FinDiagram image(const FinFunctor& f, const FinDiagram& d) {
  FinDiagram out;
  for (int n : d.nodes) out.nodes.push_back(f(n));
  for (const auto& e : d.edges) out.edges.push_back({e.from, e.to, f.map(e.arrow)});
  return out;
}

Cone image(const FinFunctor& f, const Cone& cone) {
  Cone out{f(cone.apex), {}};
  for (int l : cone.legs) out.legs.push_back(f.map(l));
  return out;
}

bool check_preserves_limit(const FinFunctor& f, const FinDiagram& d, const Cone& cone, std::size_t cap) {
  return is_limit(*f.target, image(f, d), image(f, cone), cap);
}

std::vector<ProbeDiagram> probe_diagrams(const FinCat& c) {
  std::vector<ProbeDiagram> out;
  out.push_back({"terminal", {}});
  for (int a = 0; a < c.num_objects(); ++a)
    for (int b = a; b < c.num_objects(); ++b)
      out.push_back({"product(" + c.object_name(a) + ", " + c.object_name(b) + ")", {{a, b}, {}}});
  for (int f = 0; f < c.num_arrows(); ++f)
    for (int g = f + 1; g < c.num_arrows(); ++g) {
      if (c.is_identity(f) || c.is_identity(g) || c.dst(f) != c.dst(g)) continue;
      out.push_back({"pullback(" + c.arrow(f).name + ", " + c.arrow(g).name + ")",
                     {{c.src(f), c.src(g), c.dst(f)}, {{0, 2, f}, {1, 2, g}}}});
    }
  return out;
}

// --------------------------------------------------------------------------
// Comma categories

std::optional<int> CommaCat::find(MorId sigma, CellId beta) const {
  for (std::size_t i = 0; i < objects.size(); ++i)
    if (objects[i].sigma == sigma && objects[i].beta == beta) return static_cast<int>(i);
  return std::nullopt;
}

CommaCat comma(const ModeTheory& mt, MorId w, MorId n) {
  if (mt.dst(w) != mt.dst(n))
    throw Error(ErrorCode::ModeMismatch, "comma category needs a common target: " + mt.name(w) +
                                             " and " + mt.name(n));
  CommaCat out;
  out.over = w;
  out.under = n;
  std::vector<std::string> names;
  for (MorId sigma : mt.hom(mt.src(w), mt.src(n)))
    for (CellId beta : mt.cells_between(w, mt.compose(n, sigma))) {
      out.objects.push_back({sigma, beta});
      names.push_back("(" + mt.name(sigma) + ", " + mt.name(beta) + ")");
    }
  struct Raw {
    int from, to;
    CellId gamma;
  };
  std::vector<Raw> raw;
  std::vector<FinCat::Arrow> arrows;
  const int k = static_cast<int>(out.objects.size());
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      for (CellId gamma : mt.cells_between(out.objects[i].sigma, out.objects[j].sigma)) {
        if (i == j && mt.is_identity(gamma)) continue;
        if (mt.vcompose(mt.whisker_left(n, gamma), out.objects[i].beta) != out.objects[j].beta) continue;
        raw.push_back({i, j, gamma});
        arrows.push_back({mt.name(gamma) + ":" + names[i] + "->" + names[j], i, j});
      }
  const int plain = static_cast<int>(raw.size());
  auto find_raw = [&](int from, int to, CellId gamma) -> int {
    if (from == to && mt.is_identity(gamma)) return plain + from;
    for (int a = 0; a < plain; ++a)
      if (raw[a].from == from && raw[a].to == to && raw[a].gamma == gamma) return a;
    throw Error(ErrorCode::MalformedTable, "comma category is not closed under composition");
  };
  std::vector<std::tuple<int, int, int>> compose;
  for (int f = 0; f < plain; ++f)
    for (int g = 0; g < plain; ++g)
      if (raw[f].to == raw[g].from)
        compose.emplace_back(g, f, find_raw(raw[f].from, raw[g].to, mt.vcompose(raw[g].gamma, raw[f].gamma)));
  out.cat = FinCat(names, arrows, compose);
  for (const auto& r : raw) out.arrows.push_back({r.from, r.to, r.gamma});
  for (int i = 0; i < k; ++i) out.arrows.push_back({i, i, mt.identity(out.objects[i].sigma)});
  return out;
}

}  // namespace matt

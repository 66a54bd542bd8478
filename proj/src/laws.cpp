#include "matt/laws.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <thread>

#include "matt/codex.hpp"

namespace matt {

namespace {

struct Tally {
  std::size_t checks = 0;
  std::string failure;

  // Records one check; keeps the first counterexample.
  bool expect(bool ok, const std::function<std::string()>& why) {
    ++checks;
    if (!ok && failure.empty()) failure = why();
    return ok;
  }
  bool failed() const { return !failure.empty(); }
};

std::vector<ModeId> modes_of(const ModeTheory& mt) {
  std::vector<ModeId> out;
  for (std::size_t m = 0; m < mt.num_modes(); ++m) out.push_back(ModeId{static_cast<std::int32_t>(m)});
  return out;
}

std::vector<MorId> morphisms_of(const ModeTheory& mt) {
  std::vector<MorId> out;
  for (std::size_t m = 0; m < mt.num_morphisms(); ++m) out.push_back(MorId{static_cast<std::int32_t>(m)});
  return out;
}

std::string join(const std::vector<std::string>& xs) {
  std::string out;
  for (const auto& x : xs) out += (out.empty() ? "" : "; ") + x;
  return out;
}

// The unit b -> R(b^mu) of reflect_mu -| incl_mu at an object of the
// co-dextrification.
int incl_unit(Codex& cx, MorId mu, int delta) {
  const CodexCategory& hat = cx.at(cx.theory().dst(mu));
  const Inclusion& inc = cx.incl(mu);
  const FinCat& cp = cx.diagram().cat(cx.theory().src(mu));
  int x = hat.component(delta, mu);
  int p = hat.slice.pos(mu);
  std::vector<int> found;
  for (int g : hat.cat.hom(delta, inc.functor(x)))
    if (cp.compose(inc.counit[x], hat.arrows[g][p]) == cp.id(x)) found.push_back(g);
  if (found.size() != 1) throw Error(ErrorCode::MalformedDiagram, "no unique unit for reflect -| incl");
  return found.front();
}

void codex_axioms(Codex& cx, Tally& t) {
  const ModeTheory& mt = cx.theory();
  const Diagram& dg = cx.diagram();
  t.expect(dg.check_laws().empty(), [&] { return "diagram: " + join(dg.check_laws()); });
  for (ModeId r : modes_of(mt)) {
    const CodexCategory& hat = cx.at(r);
    const std::string at = " at " + mt.mode_name(r);
    auto laws = hat.cat.check_laws();
    t.expect(laws.empty(), [&] { return "category laws" + at + ": " + join(laws); });
    for (std::size_t o = 0; o < hat.objects.size(); ++o) {
      auto v = check_oplax_object(dg, hat.slice, hat.objects[o]);
      t.expect(v.empty(), [&] { return "object " + hat.describe(static_cast<int>(o)) + at + ": " + join(v); });
    }
    for (int a = 0; a < hat.cat.num_arrows(); ++a) {
      int from = hat.cat.src(a), to = hat.cat.dst(a);
      auto v = check_oplax_morphism(dg, hat.slice, hat.objects[from], hat.objects[to], hat.arrows[a]);
      t.expect(v.empty(), [&] { return "morphism " + hat.cat.arrow(a).name + at + ": " + join(v); });
      for (std::size_t i = 0; i < hat.slice.mors.size(); ++i) {
        const FinCat& c = dg.cat(mt.src(hat.slice.mors[i]));
        if (hat.cat.is_identity(a))
          t.expect(hat.arrows[a][i] == c.id(hat.objects[from].comp[i]),
                   [&] { return "identity " + hat.cat.arrow(a).name + at + " has a non-identity component"; });
      }
    }
    for (int f = 0; f < hat.cat.num_arrows(); ++f)
      for (int g = 0; g < hat.cat.num_arrows(); ++g) {
        if (hat.cat.src(g) != hat.cat.dst(f)) continue;
        int gf = hat.cat.compose(g, f);
        bool ok = true;
        for (std::size_t i = 0; ok && i < hat.slice.mors.size(); ++i) {
          const FinCat& c = dg.cat(mt.src(hat.slice.mors[i]));
          ok = c.compose(hat.arrows[g][i], hat.arrows[f][i]) == hat.arrows[gf][i];
        }
        t.expect(ok, [&] { return "composition is not componentwise" + at; });
      }
    // no two objects coincide
    for (std::size_t o = 1; o < hat.objects.size(); ++o)
      t.expect(!(hat.objects[o] == hat.objects[o - 1]), [&] { return "duplicate object" + at; });
  }
  for (MorId mu : morphisms_of(mt)) {
    auto fl = cx.lock_functor(mu).check_laws();
    t.expect(fl.empty(), [&] { return "lock functor " + mt.name(mu) + ": " + join(fl); });
    auto rl = cx.reflect(mu).check_laws();
    t.expect(rl.empty(), [&] { return "reflection " + mt.name(mu) + ": " + join(rl); });
  }
}

void lock_strictness(Codex& cx, Tally& t) {
  const ModeTheory& mt = cx.theory();
  for (ModeId r : modes_of(mt))
    t.expect(cx.lock_functor(mt.identity(r)) == FinFunctor::identity(cx.at(r).cat),
             [&] { return "lock of 1_" + mt.mode_name(r) + " is not the identity"; });
  for (MorId mu : morphisms_of(mt))
    for (MorId nu : mt.into(mt.src(mu))) {
      MorId composite = mt.compose(mu, nu);
      FinFunctor chain = FinFunctor::compose(cx.lock_functor(nu), cx.lock_functor(mu));
      t.expect(chain == cx.lock_functor(composite), [&] {
        return "lock " + mt.name(nu) + " after lock " + mt.name(mu) + " differs from lock " + mt.name(composite);
      });
    }
}

void adjunction_reflect_incl(Codex& cx, Tally& t) {
  const ModeTheory& mt = cx.theory();
  for (MorId w : morphisms_of(mt)) {
    const Inclusion& inc = cx.incl(w);
    auto res = verify_adjunction(cx.reflect(w), inc.functor, inc.counit);
    t.checks += res.checks;
    t.expect(res.failures.empty(), [&] { return "reflect " + mt.name(w) + " -| incl " + mt.name(w) + ": " + res.failures.front(); });
  }
}

void universal_property(Codex& cx, Tally& t) {
  const ModeTheory& mt = cx.theory();
  const Diagram& dg = cx.diagram();
  for (MorId w : morphisms_of(mt)) {
    const CodexCategory& hat = cx.at(mt.dst(w));
    const FinCat& cr = dg.cat(mt.src(w));
    const FinFunctor& refl = cx.reflect(w);
    const Inclusion& inc = cx.incl(w);
    for (int delta = 0; delta < hat.cat.num_objects(); ++delta)
      for (int g = 0; g < cr.num_objects(); ++g)
        for (int f : cr.hom(refl(delta), g)) {
          int count = 0;
          for (int h : hat.cat.hom(delta, inc.functor(g)))
            if (cr.compose(inc.counit[g], refl.map(h)) == f) ++count;
          t.expect(count == 1, [&] {
            return "along " + mt.name(w) + ": " + cr.arrow(f).name + " out of the reflection of " + hat.describe(delta) +
                   " factors " + std::to_string(count) + " times through the counit at " + cr.object_name(g);
          });
        }
  }
}

void up_ff(Codex& cx, Tally& t) {
  const ModeTheory& mt = cx.theory();
  const Diagram& dg = cx.diagram();
  for (ModeId r : modes_of(mt)) {
    const FinCat& cr = dg.cat(r);
    const Inclusion& inc = cx.incl(mt.identity(r));
    const FinCat& hat = cx.at(r).cat;
    for (int g = 0; g < cr.num_objects(); ++g)
      t.expect(cr.is_iso(inc.counit[g]),
               [&] { return "counit of incl at " + cr.object_name(g) + " in mode " + mt.mode_name(r) + " is not invertible"; });
    for (int a = 0; a < cr.num_objects(); ++a)
      for (int b = 0; b < cr.num_objects(); ++b) {
        std::vector<int> image;
        for (int f : cr.hom(a, b)) image.push_back(inc.functor.map(f));
        std::sort(image.begin(), image.end());
        std::vector<int> target = hat.hom(inc.functor(a), inc.functor(b));
        std::sort(target.begin(), target.end());
        t.expect(image == target, [&] {
          return "incl at " + mt.mode_name(r) + " is not bijective on Hom(" + cr.object_name(a) + ", " +
                 cr.object_name(b) + ")";
        });
      }
  }
}

void adjunction_lock(Codex& cx, Tally& t) {
  const ModeTheory& mt = cx.theory();
  for (MorId w : morphisms_of(mt)) {
    const LockAdjoint& la = cx.lock_adjoint(w);
    auto res = verify_adjunction(cx.lock_functor(w), la.functor, la.counit);
    t.checks += res.checks;
    t.expect(res.failures.empty(), [&] { return "lock " + mt.name(w) + " -| its right adjoint: " + res.failures.front(); });
    auto fl = la.functor.check_laws();
    t.expect(fl.empty(), [&] { return "right adjoint of lock " + mt.name(w) + ": " + join(fl); });
  }
}

void pseudonat_reflect(Codex& cx, Tally& t) {
  const ModeTheory& mt = cx.theory();
  const Diagram& dg = cx.diagram();
  for (MorId w : morphisms_of(mt)) {
    const ModeId r = mt.src(w), s = mt.dst(w);
    const LockAdjoint& la = cx.lock_adjoint(w);
    const FinFunctor& top_s = cx.reflect(mt.identity(s));
    const FinFunctor& top_r = cx.reflect(mt.identity(r));
    const FinFunctor& fw = dg.functor(w);
    const CodexCategory& low = cx.at(r);
    for (int delta = 0; delta < low.cat.num_objects(); ++delta)
      t.expect(dg.cat(s).isomorphic(top_s(la.functor(delta)), fw(top_r(delta))), [&] {
        return "along " + mt.name(w) + " at " + low.describe(delta) + ": " +
               dg.cat(s).object_name(top_s(la.functor(delta))) + " is not isomorphic to " +
               dg.cat(s).object_name(fw(top_r(delta)));
      });
  }
}

void two_functor(Codex& cx, Tally& t) {
  const ModeTheory& mt = cx.theory();
  for (ModeId r : modes_of(mt)) {
    const LockAdjoint& la = cx.lock_adjoint(mt.identity(r));
    const CodexCategory& hat = cx.at(r);
    for (int delta = 0; delta < hat.cat.num_objects(); ++delta)
      t.expect(hat.cat.isomorphic(la.functor(delta), delta),
               [&] { return "right adjoint of 1_" + mt.mode_name(r) + " moves " + hat.describe(delta); });
  }
  for (MorId w1 : morphisms_of(mt))
    for (MorId w2 : mt.into(mt.src(w1))) {
      MorId composite = mt.compose(w1, w2);
      const LockAdjoint& a1 = cx.lock_adjoint(w1);
      const LockAdjoint& a2 = cx.lock_adjoint(w2);
      const LockAdjoint& ac = cx.lock_adjoint(composite);
      const CodexCategory& low = cx.at(mt.src(w2));
      const FinCat& high = cx.at(mt.dst(w1)).cat;
      for (int delta = 0; delta < low.cat.num_objects(); ++delta)
        t.expect(high.isomorphic(ac.functor(delta), a1.functor(a2.functor(delta))), [&] {
          return "right adjoints of " + mt.name(w1) + " and " + mt.name(w2) + " do not compose at " + low.describe(delta);
        });
    }
  for (MorId mu : morphisms_of(mt)) {
    const Adjoint* adj = mt.adjoint(mu);
    if (!mt.sinister(mu) || !adj) continue;
    const FinFunctor& lock = cx.lock_functor(adj->dagger);
    const LockAdjoint& la = cx.lock_adjoint(mu);
    const CodexCategory& low = cx.at(mt.src(mu));
    const FinCat& high = cx.at(mt.dst(mu)).cat;
    for (int delta = 0; delta < low.cat.num_objects(); ++delta)
      t.expect(high.isomorphic(lock(delta), la.functor(delta)), [&] {
        return "lock of " + mt.name(adj->dagger) + " differs from the right adjoint of " + mt.name(mu) + " at " +
               low.describe(delta);
      });
  }
}

void mate_lax(Codex& cx, Tally& t) {
  const ModeTheory& mt = cx.theory();
  const Diagram& dg = cx.diagram();
  for (ModeId r : modes_of(mt)) {
    const CodexCategory& hat = cx.at(r);
    const Slice& s = hat.slice;
    const FinCat& c = hat.cat;
    for (std::size_t k = 0; k < s.decomps.size(); ++k) {
      const auto& d = s.decomps[k];
      const int ki = static_cast<int>(k);
      const FinCat& cp = dg.cat(mt.src(d.mu));
      const FinFunctor& frho = dg.functor(d.rho);
      const Inclusion& imu = cx.incl(d.mu);
      const Inclusion& inu = cx.incl(d.nu);
      const std::string what = "mate of " + mt.name(d.alpha) + " : " + mt.name(d.mu) + " => " + mt.name(d.nu) + " . " +
                               mt.name(d.rho);
      bool ident = d.mu == d.nu && mt.is_identity(d.rho) && mt.is_identity(d.alpha);
      for (int g = 0; g < cp.num_objects(); ++g) {
        int m = cx.mate(r, ki, g);
        if (ident) t.expect(c.is_identity(m), [&] { return what + " is not the identity at " + cp.object_name(g); });
        // naturality
        for (int a = 0; a < cp.num_arrows(); ++a) {
          if (cp.src(a) != g) continue;
          int h = cp.dst(a);
          t.expect(c.compose(inu.functor.map(frho.map(a)), m) == c.compose(cx.mate(r, ki, h), imu.functor.map(a)),
                   [&] { return what + " is not natural at " + cp.arrow(a).name; });
        }
        // composition with a further decomposition of nu
        for (std::size_t k2 = 0; k2 < s.decomps.size(); ++k2) {
          const auto& e = s.decomps[k2];
          if (e.mu != d.nu) continue;
          auto k3 = s.find(e.nu, mt.compose(e.rho, d.rho), mt.vcompose(mt.whisker_right(e.alpha, d.rho), d.alpha));
          t.expect(k3 && cx.mate(r, *k3, g) == c.compose(cx.mate(r, static_cast<int>(k2), frho(g)), m),
                   [&] { return what + " does not compose with the mate of " + mt.name(e.alpha); });
        }
        // action of cells on rho
        for (std::size_t ci = 0; ci < mt.num_cells(); ++ci) {
          CellId beta{static_cast<std::int32_t>(ci)};
          if (mt.src(beta) != d.rho) continue;
          auto k3 = s.find(d.nu, mt.dst(beta), mt.vcompose(mt.whisker_left(d.nu, beta), d.alpha));
          t.expect(k3 && cx.mate(r, *k3, g) == c.compose(inu.functor.map(dg.cell_at(beta, g)), m),
                   [&] { return what + " is not compatible with " + mt.name(beta); });
        }
      }
      // transposing the mate back recovers the structure map
      const FinCat& cq = dg.cat(mt.src(d.nu));
      for (int delta = 0; delta < c.num_objects(); ++delta) {
        int x = hat.objects[delta].comp[d.mu_i];
        int through = c.compose(cx.mate(r, ki, x), incl_unit(cx, d.mu, delta));
        int back = cq.compose(inu.counit[frho(x)], hat.arrows[through][d.nu_i]);
        t.expect(back == hat.objects[delta].maps[k],
                 [&] { return what + " does not transpose back to the structure map of " + hat.describe(delta); });
      }
    }
  }
}

void functor_limits(Codex& cx, Tally& t) {
  const ModeTheory& mt = cx.theory();
  const Diagram& dg = cx.diagram();
  for (MorId mu : morphisms_of(mt)) {
    if (mt.is_identity(mu)) continue;
    const FinCat& c = dg.cat(mt.src(mu));
    for (const auto& probe : probe_diagrams(c)) {
      auto cone = cx.limit(c, probe.diagram);
      if (!cone) continue;
      t.expect(check_preserves_limit(dg.functor(mu), probe.diagram, *cone, cx.cap()), [&] {
        return "functor of " + mt.name(mu) + " does not preserve the limit of " + probe.label + " (apex " +
               c.object_name(cone->apex) + ")";
      });
    }
  }
}

void pointwise_limits(Codex& cx, Tally& t) {
  const ModeTheory& mt = cx.theory();
  for (ModeId r : modes_of(mt)) {
    const CodexCategory& hat = cx.at(r);
    for (const auto& probe : probe_diagrams(hat.cat)) {
      auto cone = cx.limit(hat.cat, probe.diagram);
      if (!cone) continue;
      for (MorId mu : hat.slice.mors) {
        t.expect(check_preserves_limit(cx.reflect(mu), probe.diagram, *cone, cx.cap()), [&] {
          return "reflection " + mt.name(mu) + " does not preserve the limit of " + probe.label + " at " + mt.mode_name(r);
        });
        t.expect(check_preserves_limit(cx.lock_functor(mu), probe.diagram, *cone, cx.cap()), [&] {
          return "lock " + mt.name(mu) + " does not preserve the limit of " + probe.label + " at " + mt.mode_name(r);
        });
      }
    }
  }
}

void dextrify_roundtrip(Codex& cx, Tally& t) {
  const ModeTheory& mt = cx.theory();
  const Diagram& dg = cx.diagram();
  ColaxMap g = reflect_colax(cx);
  for (ModeId r : modes_of(mt)) {
    const CodexCategory& hat = cx.at(r);
    FinFunctor ext = dextrify_colax(cx, g, r);
    auto fl = ext.check_laws();
    t.expect(fl.empty(), [&] { return "extension at " + mt.mode_name(r) + ": " + join(fl); });
    const FinFunctor& top = cx.reflect(mt.identity(r));
    for (int x = 0; x < hat.cat.num_objects(); ++x) {
      t.expect(dg.cat(r).isomorphic(top(ext(x)), g.at_mode[idx(r)](x)), [&] {
        return "reflection of the extension differs from the colax map at " + hat.describe(x);
      });
      t.expect(hat.cat.isomorphic(ext(x), x),
               [&] { return "extension of the reflections moves " + hat.describe(x) + " at " + mt.mode_name(r); });
      for (std::size_t i = 0; i < hat.slice.mors.size(); ++i) {
        const FinCat& c = dg.cat(mt.src(hat.slice.mors[i]));
        t.expect(c.isomorphic(hat.objects[ext(x)].comp[i], hat.objects[x].comp[i]), [&] {
          return "component at " + mt.name(hat.slice.mors[i]) + " of " + hat.describe(x) + " is not recovered";
        });
      }
    }
  }
}

using Suite = void (*)(Codex&, Tally&);

const std::map<std::string, Suite>& suites() {
  static const std::map<std::string, Suite> s = {
      {"2functor", two_functor},
      {"adjunction-lock", adjunction_lock},
      {"adjunction-reflect-incl", adjunction_reflect_incl},
      {"codex-axioms", codex_axioms},
      {"dextrify-roundtrip", dextrify_roundtrip},
      {"functor-limits", functor_limits},
      {"lock-strictness", lock_strictness},
      {"mate-lax", mate_lax},
      {"pointwise-limits", pointwise_limits},
      {"pseudonat-reflect", pseudonat_reflect},
      {"universal-property", universal_property},
      {"up-ff", up_ff},
  };
  return s;
}

}  // namespace

const std::vector<std::string>& law_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, suite] : suites()) out.push_back(name);
    return out;
  }();
  return names;
}

LawResult run_law(const Diagram& d, const std::string& name, const LawOptions& opts) {
  LawResult out;
  out.law = name;
  auto it = suites().find(name);
  if (it == suites().end()) throw Error(ErrorCode::MalformedDiagram, "unknown law '" + name + "'");
  Tally t;
  try {
    Codex cx(d, CodexOptions{opts.cap, opts.order_seed});
    it->second(cx, t);
  } catch (const Error& e) {
    if (t.failure.empty()) t.failure = std::string(to_string(e.code())) + ": " + e.what();
  }
  out.checks = t.checks;
  if (t.failed()) {
    out.status = LawStatus::Fail;
    out.detail = t.failure;
  }
  return out;
}

std::vector<LawResult> run_laws(const Diagram& d, const LawOptions& opts) {
  std::vector<std::string> names = opts.only.empty() ? law_names() : opts.only;
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  for (const auto& n : names)
    if (!suites().count(n)) throw Error(ErrorCode::MalformedDiagram, "unknown law '" + n + "'");
  std::vector<LawResult> results(names.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < names.size(); i = next++) results[i] = run_law(d, names[i], opts);
  };
  unsigned width = std::max(1u, std::min<unsigned>(opts.jobs, static_cast<unsigned>(names.size())));
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < width; ++j) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return results;
}

std::string format_law_result(const LawResult& r) {
  if (r.status == LawStatus::Pass) return r.law + "\tPASS\t" + std::to_string(r.checks) + " checks";
  return r.law + "\tFAIL\t" + r.detail;
}

}  // namespace matt

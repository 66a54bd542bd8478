#include "matt/diagram.hpp"

#include <fstream>

namespace matt {

namespace {

using nlohmann::json;

Error malformed(std::string msg) { return Error(ErrorCode::MalformedDiagram, std::move(msg)); }

const json& member(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) throw malformed(where + ": missing \"" + key + "\"");
  return obj.at(key);
}

std::string str(const json& j, const std::string& where) {
  if (!j.is_string()) throw malformed(where + ": expected a string");
  return j.get<std::string>();
}

int object_named(const FinCat& c, const std::string& name, const std::string& where) {
  if (auto o = c.find_object(name)) return *o;
  throw malformed(where + ": unknown object '" + name + "'");
}

int arrow_named(const FinCat& c, const std::string& name, const std::string& where) {
  if (auto a = c.find_arrow(name)) return *a;
  throw malformed(where + ": unknown arrow '" + name + "'");
}

// The unique arrow a -> b of a poset, if any.
std::optional<int> poset_arrow(const FinCat& c, int a, int b) {
  const auto& h = c.hom(a, b);
  if (h.size() == 1) return h.front();
  return std::nullopt;
}

}  // namespace

FinCat fincat_from_json(const json& doc) {
  if (!doc.is_object()) throw malformed("category: expected an object");
  if (doc.contains("chain")) {
    const json& n = doc.at("chain");
    if (!n.is_number_integer() || n.get<int>() < 1) throw malformed("chain: expected a positive length");
    std::vector<std::string> elems;
    std::vector<std::pair<int, int>> leq;
    for (int i = 0; i < n.get<int>(); ++i) {
      elems.push_back(std::to_string(i));
      if (i > 0) leq.emplace_back(i - 1, i);
    }
    return FinCat::poset(elems, leq);
  }
  if (doc.contains("poset")) {
    const json& p = doc.at("poset");
    std::vector<std::string> elems;
    for (const auto& e : member(p, "elements", "poset")) elems.push_back(str(e, "poset elements"));
    std::vector<std::pair<int, int>> leq;
    auto find = [&](const std::string& name) {
      for (std::size_t i = 0; i < elems.size(); ++i)
        if (elems[i] == name) return static_cast<int>(i);
      throw malformed("poset: unknown element '" + name + "'");
    };
    if (p.contains("leq"))
      for (const auto& pair : p.at("leq")) {
        if (!pair.is_array() || pair.size() != 2) throw malformed("poset leq: expected [a, b]");
        leq.emplace_back(find(str(pair[0], "leq")), find(str(pair[1], "leq")));
      }
    return FinCat::poset(elems, leq);
  }
  std::vector<std::string> objects;
  for (const auto& o : member(doc, "objects", "category")) objects.push_back(str(o, "objects"));
  auto obj = [&](const std::string& name) {
    for (std::size_t i = 0; i < objects.size(); ++i)
      if (objects[i] == name) return static_cast<int>(i);
    throw malformed("category: unknown object '" + name + "'");
  };
  std::vector<FinCat::Arrow> arrows;
  if (doc.contains("arrows"))
    for (const auto& a : doc.at("arrows"))
      arrows.push_back({str(member(a, "name", "arrow"), "arrow name"), obj(str(member(a, "src", "arrow"), "src")),
                        obj(str(member(a, "dst", "arrow"), "dst"))});
  auto arr = [&](const std::string& name) {
    for (std::size_t i = 0; i < arrows.size(); ++i)
      if (arrows[i].name == name) return static_cast<int>(i);
    for (std::size_t i = 0; i < objects.size(); ++i)
      if ("id:" + objects[i] == name) return static_cast<int>(arrows.size() + i);
    throw malformed("category: unknown arrow '" + name + "'");
  };
  std::vector<std::tuple<int, int, int>> compose;
  if (doc.contains("compose"))
    for (const auto& t : doc.at("compose")) {
      if (!t.is_array() || t.size() != 3) throw malformed("compose: expected [g, f, g.f]");
      compose.emplace_back(arr(str(t[0], "compose")), arr(str(t[1], "compose")), arr(str(t[2], "compose")));
    }
  FinCat c(objects, arrows, compose);
  auto laws = c.check_laws();
  if (!laws.empty()) throw malformed("category: " + laws.front());
  return c;
}

Diagram::Diagram(ModeTheory mt, std::vector<FinCat> cats) : mt_(std::move(mt)), cats_(std::move(cats)) {
  if (cats_.size() != mt_.num_modes()) throw malformed("diagram needs one category per mode");
  functors_.resize(mt_.num_morphisms());
  for (std::size_t m = 0; m < mt_.num_morphisms(); ++m) {
    MorId mor{static_cast<std::int32_t>(m)};
    functors_[m].source = &cats_[idx(mt_.src(mor))];
    functors_[m].target = &cats_[idx(mt_.dst(mor))];
    if (mt_.is_identity(mor)) functors_[m] = FinFunctor::identity(cats_[idx(mt_.src(mor))]);
  }
  cells_.resize(mt_.num_cells());
  for (std::size_t c = 0; c < mt_.num_cells(); ++c) {
    CellId cell{static_cast<std::int32_t>(c)};
    if (!mt_.is_identity(cell)) continue;
    const FinCat& src = cats_[idx(mt_.src(mt_.src(cell)))];
    cells_[c].assign(src.num_objects(), -1);
  }
}

std::vector<std::string> Diagram::check_laws() const {
  std::vector<std::string> out;
  const ModeTheory& mt = mt_;
  for (std::size_t m = 0; m < mt.num_morphisms(); ++m) {
    MorId mor{static_cast<std::int32_t>(m)};
    for (const auto& v : functors_[m].check_laws()) out.push_back("functor " + mt.name(mor) + ": " + v);
    if (mt.is_identity(mor) && !(functors_[m] == FinFunctor::identity(cat(mt.src(mor)))))
      out.push_back("functor " + mt.name(mor) + " is not the identity");
  }
  if (!out.empty()) return out;
  for (std::size_t g = 0; g < mt.num_morphisms(); ++g)
    for (std::size_t f = 0; f < mt.num_morphisms(); ++f) {
      MorId mg{static_cast<std::int32_t>(g)}, mf{static_cast<std::int32_t>(f)};
      auto gf = mt.compose_entry(mg, mf);
      if (!gf) continue;
      if (!(functor(*gf) == FinFunctor::compose(functor(mg), functor(mf))))
        out.push_back("functor of " + mt.name(*gf) + " differs from " + mt.name(mg) + " . " + mt.name(mf));
    }
  for (std::size_t c = 0; c < mt.num_cells(); ++c) {
    CellId cell{static_cast<std::int32_t>(c)};
    FinNat nat{&functor(mt.src(cell)), &functor(mt.dst(cell)), cells_[c]};
    for (const auto& v : nat.check_laws()) out.push_back("cell " + mt.name(cell) + ": " + v);
  }
  if (!out.empty()) return out;
  auto cmpnt = [&](CellId c, int x) { return cells_[idx(c)][x]; };
  for (std::size_t c = 0; c < mt.num_cells(); ++c) {
    CellId cell{static_cast<std::int32_t>(c)};
    const FinCat& src = cat(mt.src(mt.src(cell)));
    const FinCat& dst = cat(mt.dst(mt.src(cell)));
    if (mt.is_identity(cell))
      for (int x = 0; x < src.num_objects(); ++x)
        if (cmpnt(cell, x) != dst.id(functor(mt.src(cell))(x)))
          out.push_back("identity cell " + mt.name(cell) + " has a non-identity component");
    for (std::size_t b = 0; b < mt.num_cells(); ++b) {
      CellId cb{static_cast<std::int32_t>(b)};
      if (auto ba = mt.vcompose_entry(cb, cell))
        for (int x = 0; x < src.num_objects(); ++x)
          if (cmpnt(*ba, x) != dst.compose(cmpnt(cb, x), cmpnt(cell, x)))
            out.push_back("cell " + mt.name(*ba) + " differs from " + mt.name(cb) + " . " + mt.name(cell) +
                          " at " + src.object_name(x));
    }
    for (std::size_t m = 0; m < mt.num_morphisms(); ++m) {
      MorId mor{static_cast<std::int32_t>(m)};
      if (auto wl = mt.whisker_left_entry(mor, cell))
        for (int x = 0; x < src.num_objects(); ++x)
          if (cmpnt(*wl, x) != functor(mor).map(cmpnt(cell, x)))
            out.push_back("cell " + mt.name(*wl) + " differs from " + mt.name(mor) + " <| " + mt.name(cell) +
                          " at " + src.object_name(x));
      if (auto wr = mt.whisker_right_entry(cell, mor)) {
        const FinCat& inner = cat(mt.src(mor));
        for (int x = 0; x < inner.num_objects(); ++x)
          if (cmpnt(*wr, x) != cmpnt(cell, functor(mor)(x)))
            out.push_back("cell " + mt.name(*wr) + " differs from " + mt.name(cell) + " |> " + mt.name(mor) +
                          " at " + inner.object_name(x));
      }
    }
  }
  return out;
}

Diagram diagram_from_json(const json& doc, const std::filesystem::path& base) {
  if (!doc.is_object()) throw malformed("diagram: expected an object");
  const json& mt_doc = member(doc, "mode_theory", "diagram");
  ModeTheory mt = mt_doc.is_string() ? load_mode_theory(base / mt_doc.get<std::string>())
                                     : mode_theory_from_json(mt_doc);
  auto report = validate_mode_theory(mt);
  if (!report.ok())
    throw malformed("diagram: mode theory violates " + report.violations.front().axiom + ": " +
                    report.violations.front().detail);
  if (doc.contains("witnesses") && !(doc.at("witnesses").is_array() && doc.at("witnesses").empty()))
    throw malformed("diagram: only strict diagrams are supported; composition witnesses must be identities");

  const json& cats_doc = member(doc, "categories", "diagram");
  std::vector<FinCat> cats;
  for (std::size_t m = 0; m < mt.num_modes(); ++m) {
    const std::string& mode = mt.mode_name(ModeId{static_cast<std::int32_t>(m)});
    if (!cats_doc.contains(mode)) throw malformed("diagram: no category for mode " + mode);
    try {
      cats.push_back(fincat_from_json(cats_doc.at(mode)));
    } catch (const Error& e) {
      throw malformed("category " + mode + ": " + e.what());
    }
  }
  for (const auto& [key, _] : cats_doc.items())
    if (!mt.find_mode(key)) throw malformed("diagram: category for unknown mode " + key);

  Diagram d(std::move(mt), std::move(cats));
  const ModeTheory& theory = d.theory();
  std::vector<bool> have(theory.num_morphisms(), false);
  for (std::size_t m = 0; m < theory.num_morphisms(); ++m)
    have[m] = theory.is_identity(MorId{static_cast<std::int32_t>(m)});

  const json empty = json::object();
  const json& fun_doc = doc.contains("functors") ? doc.at("functors") : empty;
  for (const auto& [key, f] : fun_doc.items()) {
    auto mor = theory.find_morphism(key);
    if (!mor) throw malformed("functors: unknown morphism " + key);
    if (theory.is_identity(*mor)) throw malformed("functors: identity " + key + " is fixed");
    const FinCat& src = d.cat(theory.src(*mor));
    const FinCat& dst = d.cat(theory.dst(*mor));
    const std::string where = "functor " + key;
    FinFunctor fn{&src, &dst, std::vector<int>(src.num_objects(), -1), std::vector<int>(src.num_arrows(), -1)};
    for (const auto& [o, img] : member(f, "objects", where).items())
      fn.obj[object_named(src, o, where)] = object_named(dst, str(img, where), where);
    for (int o = 0; o < src.num_objects(); ++o)
      if (fn.obj[o] < 0) throw malformed(where + ": no image for object " + src.object_name(o));
    if (f.contains("arrows"))
      for (const auto& [a, img] : f.at("arrows").items())
        fn.arr[arrow_named(src, a, where)] = arrow_named(dst, str(img, where), where);
    for (int a = 0; a < src.num_arrows(); ++a) {
      if (fn.arr[a] >= 0) continue;
      if (src.is_identity(a)) {
        fn.arr[a] = dst.id(fn.obj[src.src(a)]);
      } else if (dst.is_poset()) {
        auto img = poset_arrow(dst, fn.obj[src.src(a)], fn.obj[src.dst(a)]);
        if (!img) throw malformed(where + ": " + src.arrow(a).name + " has no image; the map is not monotone");
        fn.arr[a] = *img;
      } else {
        throw malformed(where + ": no image for arrow " + src.arrow(a).name);
      }
    }
    d.set_functor(*mor, std::move(fn));
    have[idx(*mor)] = true;
  }
  // composites not given explicitly are read off the composition table
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t g = 0; g < theory.num_morphisms(); ++g)
      for (std::size_t f = 0; f < theory.num_morphisms(); ++f) {
        MorId mg{static_cast<std::int32_t>(g)}, mf{static_cast<std::int32_t>(f)};
        auto gf = theory.compose_entry(mg, mf);
        if (!gf || have[idx(*gf)] || !have[g] || !have[f]) continue;
        d.set_functor(*gf, FinFunctor::compose(d.functor(mg), d.functor(mf)));
        have[idx(*gf)] = true;
        changed = true;
      }
  }
  for (std::size_t m = 0; m < theory.num_morphisms(); ++m)
    if (!have[m])
      throw malformed("diagram: no functor for morphism " + theory.name(MorId{static_cast<std::int32_t>(m)}));

  const json& cell_doc = doc.contains("cells") ? doc.at("cells") : empty;
  std::vector<bool> have_cell(theory.num_cells(), false);
  for (const auto& [key, c] : cell_doc.items()) {
    auto cell = theory.find_cell(key);
    if (!cell) throw malformed("cells: unknown cell " + key);
    const FinCat& src = d.cat(theory.src(theory.src(*cell)));
    const FinCat& dst = d.cat(theory.dst(theory.src(*cell)));
    const std::string where = "cell " + key;
    std::vector<int> comps(src.num_objects(), -1);
    for (const auto& [o, a] : member(c, "components", where).items())
      comps[object_named(src, o, where)] = arrow_named(dst, str(a, where), where);
    for (int o = 0; o < src.num_objects(); ++o)
      if (comps[o] < 0) throw malformed(where + ": no component at " + src.object_name(o));
    d.set_cell(*cell, std::move(comps));
    have_cell[idx(*cell)] = true;
  }
  for (std::size_t c = 0; c < theory.num_cells(); ++c) {
    CellId cell{static_cast<std::int32_t>(c)};
    if (have_cell[c]) continue;
    const FinCat& src = d.cat(theory.src(theory.src(cell)));
    const FinCat& dst = d.cat(theory.dst(theory.src(cell)));
    const FinFunctor& f = d.functor(theory.src(cell));
    const FinFunctor& g = d.functor(theory.dst(cell));
    std::vector<int> comps(src.num_objects(), -1);
    for (int x = 0; x < src.num_objects(); ++x) {
      if (theory.is_identity(cell)) {
        comps[x] = dst.id(f(x));
        continue;
      }
      if (!dst.is_poset()) throw malformed("diagram: no components for cell " + theory.name(cell));
      auto a = poset_arrow(dst, f(x), g(x));
      if (!a)
        throw malformed("cell " + theory.name(cell) + ": no arrow " + dst.object_name(f(x)) + " -> " +
                        dst.object_name(g(x)) + " at " + src.object_name(x));
      comps[x] = *a;
    }
    d.set_cell(cell, std::move(comps));
  }

  auto laws = d.check_laws();
  if (!laws.empty()) throw malformed("diagram: " + laws.front());
  return d;
}

Diagram load_diagram(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw malformed("cannot read diagram file " + path.string());
  json doc;
  try {
    doc = json::parse(in, nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw malformed(std::string("diagram is not valid JSON: ") + e.what());
  }
  Diagram d = diagram_from_json(doc, path.parent_path());
  d.name = path.stem().string();
  return d;
}

}  // namespace matt

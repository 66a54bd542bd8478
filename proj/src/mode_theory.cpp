#include "matt/mode_theory.hpp"

#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace matt {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedTable: return "MalformedTable";
    case ErrorCode::NotComposable: return "NotComposable";
    case ErrorCode::IllTypedCellExpression: return "IllTypedCellExpression";
    case ErrorCode::ModeMismatch: return "ModeMismatch";
    case ErrorCode::NotSharp: return "NotSharp";
    case ErrorCode::NotSinister: return "NotSinister";
    case ErrorCode::NotTangible: return "NotTangible";
    case ErrorCode::NotTransparent: return "NotTransparent";
    case ErrorCode::KeyTypeMismatch: return "KeyTypeMismatch";
    case ErrorCode::ExpectedPi: return "ExpectedPi";
    case ErrorCode::ExpectedF: return "ExpectedF";
    case ErrorCode::ExpectedU: return "ExpectedU";
    case ErrorCode::ConversionFailure: return "ConversionFailure";
    case ErrorCode::UnknownConstant: return "UnknownConstant";
    case ErrorCode::UnknownName: return "UnknownName";
    case ErrorCode::CannotInfer: return "CannotInfer";
    case ErrorCode::DuplicateDeclaration: return "DuplicateDeclaration";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::MalformedDiagram: return "MalformedDiagram";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::LimitAbsent: return "LimitAbsent";
    case ErrorCode::LimitNotPreserved: return "LimitNotPreserved";
    case ErrorCode::NotColax: return "NotColax";
  }
  return "Unknown";
}

namespace {

[[noreturn]] void malformed(const std::string& msg) {
  throw Error(ErrorCode::MalformedTable, msg);
}

std::optional<std::int32_t> entry(const std::vector<std::int32_t>& table, std::size_t cols,
                                  std::size_t row, std::size_t col) {
  std::int32_t v = table[row * cols + col];
  if (v < 0) return std::nullopt;
  return v;
}

}  // namespace

// ---------------------------------------------------------------------------
// ModeTheory

std::optional<ModeId> ModeTheory::find_mode(const std::string& name) const {
  auto it = mode_index_.find(name);
  if (it == mode_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<MorId> ModeTheory::find_morphism(const std::string& name) const {
  auto it = mor_index_.find(name);
  if (it == mor_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<CellId> ModeTheory::find_cell(const std::string& name) const {
  auto it = cell_index_.find(name);
  if (it == cell_index_.end()) return std::nullopt;
  return it->second;
}

const Adjoint* ModeTheory::adjoint(MorId m) const {
  auto it = adjoints_.find(m);
  return it == adjoints_.end() ? nullptr : &it->second;
}

std::optional<MorId> ModeTheory::compose_entry(MorId g, MorId f) const {
  if (auto v = entry(compose_, mors_.size(), idx(g), idx(f))) return MorId{*v};
  return std::nullopt;
}

std::optional<CellId> ModeTheory::vcompose_entry(CellId b, CellId a) const {
  if (auto v = entry(vcompose_, cells_.size(), idx(b), idx(a))) return CellId{*v};
  return std::nullopt;
}

std::optional<CellId> ModeTheory::whisker_left_entry(MorId mu, CellId beta) const {
  if (auto v = entry(wleft_, cells_.size(), idx(mu), idx(beta))) return CellId{*v};
  return std::nullopt;
}

std::optional<CellId> ModeTheory::whisker_right_entry(CellId alpha, MorId nu) const {
  if (auto v = entry(wright_, mors_.size(), idx(alpha), idx(nu))) return CellId{*v};
  return std::nullopt;
}

MorId ModeTheory::compose(MorId g, MorId f) const {
  if (dst(f) != src(g))
    throw Error(ErrorCode::NotComposable,
                "cannot compose " + name(g) + " after " + name(f) + ": " + name(f) +
                    " lands in " + mode_name(dst(f)) + " but " + name(g) + " starts at " +
                    mode_name(src(g)));
  if (auto r = compose_entry(g, f)) return *r;
  malformed("compose table has no entry for " + name(g) + " . " + name(f));
}

CellId ModeTheory::vcompose(CellId b, CellId a) const {
  if (dst(a) != src(b))
    throw Error(ErrorCode::NotComposable, "cannot vertically compose " + name(b) + " after " +
                                              name(a) + ": boundaries " + name(dst(a)) +
                                              " and " + name(src(b)) + " differ");
  if (auto r = vcompose_entry(b, a)) return *r;
  malformed("vcompose table has no entry for " + name(b) + " . " + name(a));
}

CellId ModeTheory::whisker_left(MorId mu, CellId beta) const {
  if (dst(src(beta)) != src(mu))
    throw Error(ErrorCode::NotComposable,
                "cannot whisker " + name(mu) + " <| " + name(beta) + ": modes differ");
  if (auto r = whisker_left_entry(mu, beta)) return *r;
  malformed("whisker_left table has no entry for " + name(mu) + " <| " + name(beta));
}

CellId ModeTheory::whisker_right(CellId alpha, MorId nu) const {
  if (src(src(alpha)) != dst(nu))
    throw Error(ErrorCode::NotComposable,
                "cannot whisker " + name(alpha) + " |> " + name(nu) + ": modes differ");
  if (auto r = whisker_right_entry(alpha, nu)) return *r;
  malformed("whisker_right table has no entry for " + name(alpha) + " |> " + name(nu));
}

std::vector<MorId> ModeTheory::hom(ModeId a, ModeId b) const {
  std::vector<MorId> out;
  if (a == b) out.push_back(identity(a));
  for (std::size_t i = 0; i < mors_.size(); ++i) {
    MorId m{static_cast<std::int32_t>(i)};
    if (mors_[i].src == a && mors_[i].dst == b && !(a == b && m == identity(a)))
      out.push_back(m);
  }
  return out;
}

std::vector<MorId> ModeTheory::into(ModeId target) const {
  std::vector<MorId> out;
  out.push_back(identity(target));
  for (std::size_t i = 0; i < mors_.size(); ++i) {
    MorId m{static_cast<std::int32_t>(i)};
    if (mors_[i].dst == target && m != identity(target)) out.push_back(m);
  }
  return out;
}

std::vector<CellId> ModeTheory::cells_between(MorId f, MorId g) const {
  std::vector<CellId> out;
  for (std::size_t i = 0; i < cells_.size(); ++i)
    if (cells_[i].src == f && cells_[i].dst == g) out.push_back(CellId{static_cast<std::int32_t>(i)});
  return out;
}

nlohmann::json ModeTheory::to_json() const {
  using nlohmann::json;
  json doc;
  doc["modes"] = modes_;
  json mors = json::array();
  for (std::size_t i = 0; i < mors_.size(); ++i) {
    MorId m{static_cast<std::int32_t>(i)};
    if (is_identity(m)) continue;
    mors.push_back({{"name", mors_[i].name},
                    {"src", mode_name(mors_[i].src)},
                    {"dst", mode_name(mors_[i].dst)}});
  }
  doc["morphisms"] = mors;
  json cells = json::array();
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    CellId c{static_cast<std::int32_t>(i)};
    if (is_identity(c)) continue;
    cells.push_back({{"name", cells_[i].name},
                     {"src", name(cells_[i].src)},
                     {"dst", name(cells_[i].dst)}});
  }
  doc["cells"] = cells;
  json comp = json::array(), vcomp = json::array(), wl = json::array(), wr = json::array();
  std::size_t nm = mors_.size(), nc = cells_.size();
  for (std::size_t g = 0; g < nm; ++g)
    for (std::size_t f = 0; f < nm; ++f)
      if (compose_[g * nm + f] >= 0)
        comp.push_back({mors_[g].name, mors_[f].name, mors_[compose_[g * nm + f]].name});
  for (std::size_t b = 0; b < nc; ++b)
    for (std::size_t a = 0; a < nc; ++a)
      if (vcompose_[b * nc + a] >= 0)
        vcomp.push_back({cells_[b].name, cells_[a].name, cells_[vcompose_[b * nc + a]].name});
  for (std::size_t m = 0; m < nm; ++m)
    for (std::size_t c = 0; c < nc; ++c)
      if (wleft_[m * nc + c] >= 0)
        wl.push_back({mors_[m].name, cells_[c].name, cells_[wleft_[m * nc + c]].name});
  for (std::size_t c = 0; c < nc; ++c)
    for (std::size_t m = 0; m < nm; ++m)
      if (wright_[c * nm + m] >= 0)
        wr.push_back({cells_[c].name, mors_[m].name, cells_[wright_[c * nm + m]].name});
  doc["compose"] = comp;
  doc["vcompose"] = vcomp;
  doc["whisker_left"] = wl;
  doc["whisker_right"] = wr;
  json classes = {{"tangible", json::array()},
                  {"sharp", json::array()},
                  {"transparent", json::array()},
                  {"sinister", json::array()}};
  for (const auto& m : mors_) {
    if (m.classes.tangible) classes["tangible"].push_back(m.name);
    if (m.classes.sharp) classes["sharp"].push_back(m.name);
    if (m.classes.transparent) classes["transparent"].push_back(m.name);
    if (m.classes.sinister) classes["sinister"].push_back(m.name);
  }
  doc["classes"] = classes;
  json adj = json::array();
  for (const auto& [m, a] : adjoints_)
    adj.push_back({{"mor", name(m)},
                   {"dagger", name(a.dagger)},
                   {"unit", name(a.unit)},
                   {"counit", name(a.counit)}});
  doc["adjoints"] = adj;
  return doc;
}

// ---------------------------------------------------------------------------
// Builder

ModeTheoryBuilder& ModeTheoryBuilder::mode(const std::string& name) {
  modes_.push_back(name);
  return *this;
}

ModeTheoryBuilder& ModeTheoryBuilder::morphism(const std::string& name, const std::string& src,
                                               const std::string& dst) {
  mors_.push_back({name, src, dst});
  return *this;
}

ModeTheoryBuilder& ModeTheoryBuilder::cell(const std::string& name, const std::string& src,
                                           const std::string& dst) {
  cells_.push_back({name, src, dst});
  return *this;
}

ModeTheoryBuilder& ModeTheoryBuilder::compose(const std::string& g, const std::string& f,
                                              const std::string& gf) {
  compose_.push_back({g, f, gf});
  return *this;
}

ModeTheoryBuilder& ModeTheoryBuilder::vcompose(const std::string& b, const std::string& a,
                                               const std::string& ba) {
  vcompose_.push_back({b, a, ba});
  return *this;
}

ModeTheoryBuilder& ModeTheoryBuilder::whisker_left(const std::string& mu,
                                                   const std::string& beta,
                                                   const std::string& result) {
  wleft_.push_back({mu, beta, result});
  return *this;
}

ModeTheoryBuilder& ModeTheoryBuilder::whisker_right(const std::string& alpha,
                                                    const std::string& nu,
                                                    const std::string& result) {
  wright_.push_back({alpha, nu, result});
  return *this;
}

ModeTheoryBuilder& ModeTheoryBuilder::classes(const std::string& mor, MorClasses classes) {
  classes_.emplace_back(mor, classes);
  return *this;
}

ModeTheoryBuilder& ModeTheoryBuilder::tangible(const std::string& mor) {
  return classes(mor, {.tangible = true});
}
ModeTheoryBuilder& ModeTheoryBuilder::sharp(const std::string& mor) {
  return classes(mor, {.sharp = true});
}
ModeTheoryBuilder& ModeTheoryBuilder::transparent(const std::string& mor) {
  return classes(mor, {.transparent = true});
}
ModeTheoryBuilder& ModeTheoryBuilder::sinister(const std::string& mor) {
  return classes(mor, {.sinister = true});
}

ModeTheoryBuilder& ModeTheoryBuilder::adjoint(const std::string& mor, const std::string& dagger,
                                              const std::string& unit,
                                              const std::string& counit) {
  adjoints_.push_back({mor, dagger, unit, counit});
  return *this;
}

ModeTheory ModeTheoryBuilder::build() const {
  ModeTheory mt;

  for (const auto& name : modes_) {
    if (mt.mode_index_.count(name)) malformed("duplicate mode " + name);
    mt.mode_index_[name] = ModeId{static_cast<std::int32_t>(mt.modes_.size())};
    mt.modes_.push_back(name);
  }
  auto mode_of = [&](const std::string& name) {
    auto it = mt.mode_index_.find(name);
    if (it == mt.mode_index_.end()) malformed("unknown mode " + name);
    return it->second;
  };
  auto add_mor = [&](const std::string& name, ModeId src, ModeId dst) {
    if (mt.mor_index_.count(name)) malformed("duplicate morphism " + name);
    MorId id{static_cast<std::int32_t>(mt.mors_.size())};
    mt.mor_index_[name] = id;
    mt.mors_.push_back({name, src, dst, {}});
    return id;
  };
  for (std::size_t i = 0; i < mt.modes_.size(); ++i) {
    ModeId m{static_cast<std::int32_t>(i)};
    mt.id_mor_.push_back(add_mor("id:" + mt.modes_[i], m, m));
  }
  for (const auto& d : mors_) add_mor(d.name, mode_of(d.src), mode_of(d.dst));

  auto mor_of = [&](const std::string& name) {
    auto it = mt.mor_index_.find(name);
    if (it == mt.mor_index_.end()) malformed("unknown morphism " + name);
    return it->second;
  };
  auto add_cell = [&](const std::string& name, MorId src, MorId dst) {
    if (mt.cell_index_.count(name)) malformed("duplicate cell " + name);
    if (!mt.parallel(src, dst))
      malformed("cell " + name + " : " + mt.name(src) + " => " + mt.name(dst) +
                " relates non-parallel morphisms");
    CellId id{static_cast<std::int32_t>(mt.cells_.size())};
    mt.cell_index_[name] = id;
    mt.cells_.push_back({name, src, dst});
    return id;
  };
  for (std::size_t i = 0; i < mt.mors_.size(); ++i) {
    MorId m{static_cast<std::int32_t>(i)};
    mt.id_cell_.push_back(add_cell("id:" + mt.mors_[i].name, m, m));
  }
  for (const auto& d : cells_) add_cell(d.name, mor_of(d.src), mor_of(d.dst));

  auto cell_of = [&](const std::string& name) {
    auto it = mt.cell_index_.find(name);
    if (it == mt.cell_index_.end()) malformed("unknown cell " + name);
    return it->second;
  };

  const std::size_t nm = mt.mors_.size(), nc = mt.cells_.size();
  mt.compose_.assign(nm * nm, -1);
  mt.vcompose_.assign(nc * nc, -1);
  mt.wleft_.assign(nm * nc, -1);
  mt.wright_.assign(nc * nm, -1);

  auto set = [](std::vector<std::int32_t>& table, std::size_t pos, std::int32_t v,
                const std::string& what) {
    if (table[pos] >= 0 && table[pos] != v) malformed("conflicting entries for " + what);
    table[pos] = v;
  };

  for (const auto& t : compose_) {
    MorId g = mor_of(t.a), f = mor_of(t.b), gf = mor_of(t.c);
    if (mt.dst(f) != mt.src(g)) malformed("compose entry " + t.a + " . " + t.b + ": not composable");
    if (mt.src(gf) != mt.src(f) || mt.dst(gf) != mt.dst(g))
      malformed("compose entry " + t.a + " . " + t.b + " = " + t.c + ": result has wrong type");
    set(mt.compose_, idx(g) * nm + idx(f), static_cast<std::int32_t>(idx(gf)), t.a + " . " + t.b);
  }
  for (const auto& t : vcompose_) {
    CellId b = cell_of(t.a), a = cell_of(t.b), ba = cell_of(t.c);
    if (mt.dst(a) != mt.src(b)) malformed("vcompose entry " + t.a + " . " + t.b + ": not composable");
    if (mt.src(ba) != mt.src(a) || mt.dst(ba) != mt.dst(b))
      malformed("vcompose entry " + t.a + " . " + t.b + " = " + t.c + ": result has wrong type");
    set(mt.vcompose_, idx(b) * nc + idx(a), static_cast<std::int32_t>(idx(ba)), t.a + " . " + t.b);
  }
  // Whiskering entries are checked against the composition table; those
  // composites must exist for the entry to be well-typed.
  auto comp_or_fail = [&](MorId g, MorId f, const std::string& what) {
    if (mt.dst(f) != mt.src(g)) malformed(what + ": not composable");
    auto v = mt.compose_[idx(g) * nm + idx(f)];
    if (v >= 0) return MorId{v};
    if (mt.is_identity(g)) return f;
    if (mt.is_identity(f)) return g;
    malformed(what + ": composite " + mt.name(g) + " . " + mt.name(f) + " is not in the compose table");
  };
  for (const auto& t : wleft_) {
    MorId mu = mor_of(t.a);
    CellId beta = cell_of(t.b), r = cell_of(t.c);
    std::string what = "whisker_left entry " + t.a + " <| " + t.b;
    MorId s = comp_or_fail(mu, mt.src(beta), what), d = comp_or_fail(mu, mt.dst(beta), what);
    if (mt.src(r) != s || mt.dst(r) != d) malformed(what + " = " + t.c + ": result has wrong type");
    set(mt.wleft_, idx(mu) * nc + idx(beta), static_cast<std::int32_t>(idx(r)), t.a + " <| " + t.b);
  }
  for (const auto& t : wright_) {
    CellId alpha = cell_of(t.a), r = cell_of(t.c);
    MorId nu = mor_of(t.b);
    std::string what = "whisker_right entry " + t.a + " |> " + t.b;
    MorId s = comp_or_fail(mt.src(alpha), nu, what), d = comp_or_fail(mt.dst(alpha), nu, what);
    if (mt.src(r) != s || mt.dst(r) != d) malformed(what + " = " + t.c + ": result has wrong type");
    set(mt.wright_, idx(alpha) * nm + idx(nu), static_cast<std::int32_t>(idx(r)), t.a + " |> " + t.b);
  }

  // Synthesized identity entries, only where the user left a gap.
  auto fill = [](std::vector<std::int32_t>& table, std::size_t pos, std::size_t v) {
    if (table[pos] < 0) table[pos] = static_cast<std::int32_t>(v);
  };
  for (std::size_t f = 0; f < nm; ++f) {
    MorId fm{static_cast<std::int32_t>(f)};
    fill(mt.compose_, idx(mt.identity(mt.dst(fm))) * nm + f, f);
    fill(mt.compose_, f * nm + idx(mt.identity(mt.src(fm))), f);
  }
  for (std::size_t a = 0; a < nc; ++a) {
    CellId ac{static_cast<std::int32_t>(a)};
    fill(mt.vcompose_, idx(mt.identity(mt.dst(ac))) * nc + a, a);
    fill(mt.vcompose_, a * nc + idx(mt.identity(mt.src(ac))), a);
    ModeId s = mt.src(mt.src(ac)), d = mt.dst(mt.src(ac));
    fill(mt.wleft_, idx(mt.identity(d)) * nc + a, a);
    fill(mt.wright_, a * nm + idx(mt.identity(s)), a);
  }
  // mu <| 1_rho = 1_{mu . rho} and 1_nu |> rho = 1_{nu . rho}
  for (std::size_t m = 0; m < nm; ++m) {
    MorId mu{static_cast<std::int32_t>(m)};
    for (std::size_t r = 0; r < nm; ++r) {
      MorId rho{static_cast<std::int32_t>(r)};
      if (mt.dst(rho) != mt.src(mu)) continue;
      auto comp = mt.compose_[m * nm + r];
      if (comp < 0) continue;
      fill(mt.wleft_, m * nc + idx(mt.identity(rho)), idx(mt.identity(MorId{comp})));
      fill(mt.wright_, idx(mt.identity(mu)) * nm + r, idx(mt.identity(MorId{comp})));
    }
  }

  for (const auto& [name, cls] : classes_) {
    auto& c = mt.mors_[idx(mor_of(name))].classes;
    c.tangible |= cls.tangible;
    c.sharp |= cls.sharp;
    c.transparent |= cls.transparent;
    c.sinister |= cls.sinister;
  }

  for (const auto& a : adjoints_) {
    MorId mu = mor_of(a.mor);
    if (mt.adjoints_.count(mu)) malformed("duplicate adjoint entry for " + a.mor);
    mt.adjoints_[mu] = Adjoint{mor_of(a.dagger), cell_of(a.unit), cell_of(a.counit)};
  }
  return mt;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

const nlohmann::json& require(const nlohmann::json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) malformed(std::string("missing key '") + key + "'");
  return obj.at(key);
}

std::string str(const nlohmann::json& v, const char* what) {
  if (!v.is_string()) malformed(std::string(what) + " must be a string");
  return v.get<std::string>();
}

void triples(const nlohmann::json& doc, const char* key,
             const std::function<void(const std::string&, const std::string&,
                                      const std::string&)>& add) {
  if (!doc.contains(key)) return;
  const auto& arr = doc.at(key);
  if (!arr.is_array()) malformed(std::string(key) + " must be an array");
  for (const auto& row : arr) {
    if (!row.is_array() || row.size() != 3)
      malformed(std::string(key) + " entries must be [a, b, result] triples");
    add(str(row[0], key), str(row[1], key), str(row[2], key));
  }
}

}  // namespace

ModeTheory mode_theory_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) malformed("mode theory document must be an object");
  ModeTheoryBuilder b;
  for (const auto& m : require(doc, "modes")) b.mode(str(m, "mode"));
  if (doc.contains("morphisms"))
    for (const auto& m : doc.at("morphisms"))
      b.morphism(str(require(m, "name"), "name"), str(require(m, "src"), "src"),
                 str(require(m, "dst"), "dst"));
  if (doc.contains("cells"))
    for (const auto& c : doc.at("cells"))
      b.cell(str(require(c, "name"), "name"), str(require(c, "src"), "src"),
             str(require(c, "dst"), "dst"));
  triples(doc, "compose", [&](auto& x, auto& y, auto& z) { b.compose(x, y, z); });
  triples(doc, "vcompose", [&](auto& x, auto& y, auto& z) { b.vcompose(x, y, z); });
  triples(doc, "whisker_left", [&](auto& x, auto& y, auto& z) { b.whisker_left(x, y, z); });
  triples(doc, "whisker_right", [&](auto& x, auto& y, auto& z) { b.whisker_right(x, y, z); });
  if (doc.contains("classes")) {
    const auto& cls = doc.at("classes");
    if (!cls.is_object()) malformed("classes must be an object");
    for (const auto& [key, list] : cls.items()) {
      MorClasses flag;
      if (key == "tangible") flag.tangible = true;
      else if (key == "sharp") flag.sharp = true;
      else if (key == "transparent") flag.transparent = true;
      else if (key == "sinister") flag.sinister = true;
      else malformed("unknown morphism class " + key);
      for (const auto& m : list) b.classes(str(m, "class member"), flag);
    }
  }
  if (doc.contains("adjoints"))
    for (const auto& a : doc.at("adjoints"))
      b.adjoint(str(require(a, "mor"), "mor"), str(require(a, "dagger"), "dagger"),
                str(require(a, "unit"), "unit"), str(require(a, "counit"), "counit"));
  return b.build();
}

ModeTheory load_mode_theory(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::MalformedTable, "cannot open mode theory " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::MalformedTable, path.string() + ": " + e.what());
  }
  return mode_theory_from_json(doc);
}

// ---------------------------------------------------------------------------
// Validation

bool ValidationReport::has(const std::string& axiom) const {
  for (const auto& v : violations)
    if (v.axiom == axiom) return true;
  return false;
}

namespace {

class Validator {
public:
  explicit Validator(const ModeTheory& mt) : mt_(mt) {
    for (std::size_t i = 0; i < mt.num_morphisms(); ++i) mors_.push_back(MorId{static_cast<std::int32_t>(i)});
    for (std::size_t i = 0; i < mt.num_cells(); ++i) cells_.push_back(CellId{static_cast<std::int32_t>(i)});
  }

  ValidationReport run() {
    totality();
    classes();
    guarded([&] { adjoints(); });
    if (!total_) return std::move(report_);
    compose_laws();
    guarded([&] { vcompose_laws(); });
    guarded([&] { whisker_laws(); });
    return std::move(report_);
  }

private:
  void fail(const std::string& axiom, const std::string& detail) {
    report_.violations.push_back({axiom, detail});
  }

  // A broken morphism law can leave cell entries with clashing boundaries;
  // the remaining checks of that group are then meaningless.
  template <class F>
  void guarded(F&& group) {
    try {
      group();
    } catch (const Error& e) {
      fail("table-typing", e.what());
    }
  }

  const std::string& n(MorId m) const { return mt_.name(m); }
  const std::string& n(CellId c) const { return mt_.name(c); }

  void totality() {
    for (MorId g : mors_)
      for (MorId f : mors_)
        if (mt_.dst(f) == mt_.src(g) && !mt_.compose_entry(g, f)) {
          fail("table-totality", "compose has no entry for " + n(g) + " . " + n(f));
          total_ = false;
        }
    for (CellId b : cells_)
      for (CellId a : cells_)
        if (mt_.dst(a) == mt_.src(b) && !mt_.vcompose_entry(b, a)) {
          fail("table-totality", "vcompose has no entry for " + n(b) + " . " + n(a));
          total_ = false;
        }
    for (MorId m : mors_)
      for (CellId c : cells_) {
        if (mt_.dst(mt_.src(c)) == mt_.src(m) && !mt_.whisker_left_entry(m, c)) {
          fail("table-totality", "whisker_left has no entry for " + n(m) + " <| " + n(c));
          total_ = false;
        }
        if (mt_.src(mt_.src(c)) == mt_.dst(m) && !mt_.whisker_right_entry(c, m)) {
          fail("table-totality", "whisker_right has no entry for " + n(c) + " |> " + n(m));
          total_ = false;
        }
      }
  }

  void classes() {
    for (std::size_t i = 0; i < mt_.num_modes(); ++i) {
      MorId id = mt_.identity(ModeId{static_cast<std::int32_t>(i)});
      if (!mt_.sharp(id)) fail("identity-sharp", n(id) + " is not sharp");
      if (!mt_.transparent(id)) fail("identity-transparent", n(id) + " is not transparent");
    }
    for (MorId mu : mors_) {
      if (!mt_.sharp(mu)) continue;
      for (MorId nu : mors_) {
        if (!mt_.transparent(nu) || mt_.src(nu) != mt_.dst(mu)) continue;
        auto c = mt_.compose_entry(nu, mu);
        if (!c) continue;  // reported by totality
        if (!mt_.tangible(*c))
          fail("sharp-transparent-tangible", n(nu) + " . " + n(mu) + " = " + n(*c) +
                                                 " is not tangible (" + n(mu) + " sharp, " +
                                                 n(nu) + " transparent)");
      }
    }
    for (MorId mu : mors_)
      if (mt_.sinister(mu) && !mt_.adjoint(mu))
        fail("adjoint-typing", n(mu) + " is sinister but has no chosen right adjoint");
  }

  void adjoints() {
    for (MorId mu : mors_) {
      const Adjoint* a = mt_.adjoint(mu);
      if (!a) continue;
      MorId d = a->dagger;
      if (mt_.src(d) != mt_.dst(mu) || mt_.dst(d) != mt_.src(mu)) {
        fail("adjoint-typing", n(d) + " cannot be right adjoint to " + n(mu) + ": wrong modes");
        continue;
      }
      auto dm = mt_.compose_entry(d, mu), md = mt_.compose_entry(mu, d);
      if (!dm || !md) continue;
      MorId idp = mt_.identity(mt_.src(mu)), idq = mt_.identity(mt_.dst(mu));
      bool typed = true;
      if (mt_.src(a->unit) != idp || mt_.dst(a->unit) != *dm) {
        fail("adjoint-typing", "unit " + n(a->unit) + " of " + n(mu) + " must be " + n(idp) +
                                   " => " + n(*dm));
        typed = false;
      }
      if (mt_.src(a->counit) != *md || mt_.dst(a->counit) != idq) {
        fail("adjoint-typing", "counit " + n(a->counit) + " of " + n(mu) + " must be " +
                                   n(*md) + " => " + n(idq));
        typed = false;
      }
      if (!typed || !total_) continue;
      // (eps |> mu) . (mu <| eta) = 1_mu
      CellId left = mt_.vcompose(mt_.whisker_right(a->counit, mu), mt_.whisker_left(mu, a->unit));
      if (left != mt_.identity(mu))
        fail("triangle-left", "(" + n(a->counit) + " |> " + n(mu) + ") . (" + n(mu) + " <| " +
                                  n(a->unit) + ") = " + n(left) + ", expected " +
                                  n(mt_.identity(mu)));
      // (dagger <| eps) . (eta |> dagger) = 1_dagger
      CellId right = mt_.vcompose(mt_.whisker_left(d, a->counit), mt_.whisker_right(a->unit, d));
      if (right != mt_.identity(d))
        fail("triangle-right", "(" + n(d) + " <| " + n(a->counit) + ") . (" + n(a->unit) +
                                   " |> " + n(d) + ") = " + n(right) + ", expected " +
                                   n(mt_.identity(d)));
    }
  }

  void compose_laws() {
    for (MorId f : mors_) {
      if (mt_.compose(mt_.identity(mt_.dst(f)), f) != f || mt_.compose(f, mt_.identity(mt_.src(f))) != f)
        fail("compose-unit", "identity is not a unit for " + n(f));
      for (MorId g : mors_) {
        if (mt_.dst(f) != mt_.src(g)) continue;
        for (MorId h : mors_) {
          if (mt_.dst(g) != mt_.src(h)) continue;
          MorId l = mt_.compose(mt_.compose(h, g), f), r = mt_.compose(h, mt_.compose(g, f));
          if (l != r)
            fail("compose-associativity", "(" + n(h) + " . " + n(g) + ") . " + n(f) + " = " +
                                              n(l) + " but " + n(h) + " . (" + n(g) + " . " +
                                              n(f) + ") = " + n(r));
        }
      }
    }
  }

  void vcompose_laws() {
    for (CellId a : cells_) {
      if (mt_.vcompose(mt_.identity(mt_.dst(a)), a) != a || mt_.vcompose(a, mt_.identity(mt_.src(a))) != a)
        fail("vcompose-unit", "identity cell is not a unit for " + n(a));
      for (CellId b : cells_) {
        if (mt_.dst(a) != mt_.src(b)) continue;
        for (CellId c : cells_) {
          if (mt_.dst(b) != mt_.src(c)) continue;
          CellId l = mt_.vcompose(mt_.vcompose(c, b), a), r = mt_.vcompose(c, mt_.vcompose(b, a));
          if (l != r)
            fail("vcompose-associativity", "(" + n(c) + " . " + n(b) + ") . " + n(a) + " = " +
                                               n(l) + " but " + n(c) + " . (" + n(b) + " . " +
                                               n(a) + ") = " + n(r));
        }
      }
    }
  }

  void whisker_laws() {
    for (CellId a : cells_) {
      MorId s = mt_.src(a);
      ModeId from = mt_.src(s), to = mt_.dst(s);
      if (mt_.whisker_left(mt_.identity(to), a) != a || mt_.whisker_right(a, mt_.identity(from)) != a)
        fail("whisker-unit", "whiskering " + n(a) + " by an identity morphism changes it");
    }
    for (MorId mu : mors_)
      for (MorId rho : mors_) {
        if (mt_.dst(rho) != mt_.src(mu)) continue;
        MorId c = mt_.compose(mu, rho);
        if (mt_.whisker_left(mu, mt_.identity(rho)) != mt_.identity(c))
          fail("whisker-identity", n(mu) + " <| 1_" + n(rho) + " is not 1_" + n(c));
        if (mt_.whisker_right(mt_.identity(mu), rho) != mt_.identity(c))
          fail("whisker-identity", "1_" + n(mu) + " |> " + n(rho) + " is not 1_" + n(c));
      }
    // (beta |> rho) . (alpha |> rho) = (beta . alpha) |> rho and
    // mu <| (beta . alpha) = (mu <| beta) . (mu <| alpha)
    for (CellId a : cells_)
      for (CellId b : cells_) {
        if (mt_.dst(a) != mt_.src(b)) continue;
        CellId ba = mt_.vcompose(b, a);
        ModeId from = mt_.src(mt_.src(a)), to = mt_.dst(mt_.src(a));
        for (MorId rho : mors_) {
          if (mt_.dst(rho) != from) continue;
          CellId l = mt_.vcompose(mt_.whisker_right(b, rho), mt_.whisker_right(a, rho));
          if (l != mt_.whisker_right(ba, rho))
            fail("whisker-right-vcompose", "(" + n(b) + " |> " + n(rho) + ") . (" + n(a) + " |> " +
                                               n(rho) + ") differs from (" + n(b) + " . " + n(a) +
                                               ") |> " + n(rho));
        }
        for (MorId mu : mors_) {
          if (mt_.src(mu) != to) continue;
          CellId r = mt_.vcompose(mt_.whisker_left(mu, b), mt_.whisker_left(mu, a));
          if (mt_.whisker_left(mu, ba) != r)
            fail("whisker-left-vcompose", n(mu) + " <| (" + n(b) + " . " + n(a) + ") differs from (" +
                                              n(mu) + " <| " + n(b) + ") . (" + n(mu) + " <| " +
                                              n(a) + ")");
        }
      }
    for (CellId a : cells_) {
      ModeId from = mt_.src(mt_.src(a)), to = mt_.dst(mt_.src(a));
      for (MorId m1 : mors_) {
        // mu <| (nu <| beta) = (mu . nu) <| beta
        if (mt_.src(m1) == to)
          for (MorId m2 : mors_) {
            if (mt_.src(m2) != mt_.dst(m1)) continue;
            if (mt_.whisker_left(m2, mt_.whisker_left(m1, a)) != mt_.whisker_left(mt_.compose(m2, m1), a))
              fail("whisker-left-compose", n(m2) + " <| (" + n(m1) + " <| " + n(a) +
                                               ") differs from (" + n(m2) + " . " + n(m1) + ") <| " +
                                               n(a));
          }
        // (alpha |> nu) |> rho = alpha |> (nu . rho)
        if (mt_.dst(m1) == from)
          for (MorId m2 : mors_) {
            if (mt_.dst(m2) != mt_.src(m1)) continue;
            if (mt_.whisker_right(mt_.whisker_right(a, m1), m2) != mt_.whisker_right(a, mt_.compose(m1, m2)))
              fail("whisker-right-compose", "(" + n(a) + " |> " + n(m1) + ") |> " + n(m2) +
                                                " differs from " + n(a) + " |> (" + n(m1) + " . " +
                                                n(m2) + ")");
          }
        // (mu <| beta) |> sigma = mu <| (beta |> sigma)
        if (mt_.src(m1) == to)
          for (MorId sigma : mors_) {
            if (mt_.dst(sigma) != from) continue;
            if (mt_.whisker_right(mt_.whisker_left(m1, a), sigma) !=
                mt_.whisker_left(m1, mt_.whisker_right(a, sigma)))
              fail("whisker-mixed-associativity", "(" + n(m1) + " <| " + n(a) + ") |> " + n(sigma) +
                                                      " differs from " + n(m1) + " <| (" + n(a) +
                                                      " |> " + n(sigma) + ")");
          }
      }
    }
    // interchange: (nu' <| alpha) . (beta |> mu) = (beta |> mu') . (nu <| alpha)
    for (CellId alpha : cells_)
      for (CellId beta : cells_) {
        MorId mu = mt_.src(alpha), mu2 = mt_.dst(alpha), nu = mt_.src(beta), nu2 = mt_.dst(beta);
        if (mt_.src(nu) != mt_.dst(mu)) continue;
        CellId l = mt_.vcompose(mt_.whisker_left(nu2, alpha), mt_.whisker_right(beta, mu));
        CellId r = mt_.vcompose(mt_.whisker_right(beta, mu2), mt_.whisker_left(nu, alpha));
        if (l != r)
          fail("interchange", "whiskerings of " + n(alpha) + " and " + n(beta) + " do not commute");
      }
  }

  const ModeTheory& mt_;
  std::vector<MorId> mors_;
  std::vector<CellId> cells_;
  ValidationReport report_;
  bool total_ = true;
};

}  // namespace

ValidationReport validate_mode_theory(const ModeTheory& mt) { return Validator(mt).run(); }

}  // namespace matt

// Acceptance run: one PASS/FAIL line per criterion.

#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <thread>

#include "conversion.hpp"
#include "matt/codex.hpp"
#include "matt/laws.hpp"
#include "support.hpp"

using namespace matt;

namespace {

const char* const kTheories[] = {"trivial", "single_arrow", "2ltt", "reflective", "comonad", "meet"};
const char* const kDiagrams[] = {"trivial", "single_arrow", "2ltt", "reflective", "comonad", "meet"};

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& why) {
    if (!cond && ok) {
      ok = false;
      detail = why;
    }
  }
};

using Criterion = std::function<void(Outcome&)>;

bool run(int n, double budget_s, const Criterion& body) {
  Outcome out;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.require(false, std::string("exception: ") + e.what());
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  out.require(secs < budget_s, "took " + std::to_string(secs) + " s");
  std::cout << "criterion " << n << ": " << (out.ok ? "PASS" : "FAIL") << " (" << static_cast<long>(secs * 1000)
            << " ms)";
  if (!out.detail.empty()) std::cout << " " << out.detail;
  std::cout << "\n";
  return out.ok;
}

const Decl* find_decl(const Program& p, const std::string& name) {
  for (const auto& d : p.decls)
    if (d.name == name) return &d;
  return nullptr;
}

bool has_framed_let(const ModeTheory& mt, const ExprPtr& e) {
  if (!e) return false;
  if (e->kind == Kind::LetMod && e->frame && !mt.is_identity(*e->frame) && mt.transparent(*e->frame)) return true;
  for (const auto& k : e->kids)
    if (has_framed_let(mt, k)) return true;
  return false;
}

void theories(Outcome& o) {
  for (const char* name : kTheories) {
    auto r = validate_mode_theory(testing::theory(name));
    o.require(r.ok(), std::string(name) + " does not validate");
  }
  int mutants = 0;
  for (const auto& entry : std::filesystem::directory_iterator(testing::source_dir() / "tests/data/mutants")) {
    const std::string axiom = entry.path().stem().string();
    auto r = validate_mode_theory(load_mode_theory(entry.path()));
    o.require(!r.ok() && r.has(axiom), "mutant " + axiom + " is not reported under its axiom");
    ++mutants;
  }
  o.require(mutants >= 10, "only " + std::to_string(mutants) + " mutants");
  o.detail = o.ok ? "6 theories, " + std::to_string(mutants) + " mutants" : o.detail;
}

void positives(Outcome& o) {
  int defs = 0;
  bool framed = false;
  for (const auto& file : testing::corpus_files()) {
    if (file.find("_ok") == std::string::npos) continue;
    testing::Corpus c = testing::load_corpus(file);
    Checker ck(*c.mt);
    auto diags = check_programs(ck, {c.program});
    o.require(diags.empty(), diags.empty() ? "" : format_diagnostic(diags.front()));
    for (const auto& d : c.program.decls) defs += d.kind == Decl::Kind::Def;
    if (file == "meet_ok.matt")
      if (const Decl* d = find_decl(c.program, "framed")) framed = has_framed_let(*c.mt, d->body);
  }
  o.require(defs >= 25, "only " + std::to_string(defs) + " definitions");
  o.require(framed, "no let with a non-identity transparent frame in the meet corpus");
  if (o.ok) o.detail = std::to_string(defs) + " definitions";
}

void negatives(Outcome& o) {
  int total = 0;
  std::set<std::string> codes;
  for (const auto& file : testing::corpus_files()) {
    if (file.find("_bad") == std::string::npos) continue;
    testing::Corpus c = testing::load_corpus(file);
    auto expected = testing::expectations(c.text);
    Checker ck(*c.mt);
    std::map<int, std::string> actual;
    for (const auto& d : check_programs(ck, {c.program})) actual[d.span.line] = std::string(to_string(d.code));
    o.require(actual == expected, file + ": diagnostics differ from the expectations");
    total += static_cast<int>(expected.size());
    for (const auto& [line, code] : expected) codes.insert(code);
    if (file == "2ltt_bad.matt") {
      for (const char* name : {"reflectA", "modalFn"}) {
        const Decl* d = find_decl(c.program, name);
        o.require(d && expected.count(d->span.line) && expected[d->span.line] == "NotSharp",
                  std::string(name) + " is not a NotSharp negative");
      }
    }
  }
  o.require(total >= 15, "only " + std::to_string(total) + " negatives");
  o.require(codes.count("KeyTypeMismatch") > 0, "no KeyTypeMismatch negative");
  if (o.ok) o.detail = std::to_string(total) + " negatives, " + std::to_string(codes.size()) + " codes";
}

void conversion(Outcome& o) {
  auto cases = testing::conversion_cases();
  for (const auto& c : cases) o.require(c.actual == c.expected, c.label + " gave the wrong verdict");
  for (const char* need : {"beta Pi", "beta F", "beta U", "eta Pi", "eta U", "eta F"}) {
    bool seen = false;
    for (const auto& c : cases) seen |= c.label == need;
    o.require(seen, std::string("missing case ") + need);
  }
  auto trips = testing::round_trips();
  o.require(trips.size() >= 5, "fewer than 5 round trip terms");
  for (const auto& t : trips) o.require(t.keyed_matches && t.converts, "round trip fails on " + t.term);
  if (o.ok) o.detail = std::to_string(cases.size()) + " cases, " + std::to_string(trips.size()) + " round trips";
}

void single_arrow(Outcome& o) {
  Diagram d = load_diagram(testing::diagram_path("single_arrow"));
  const ModeTheory& mt = d.theory();
  ModeId p = *mt.find_mode("p"), q = *mt.find_mode("q");
  MorId mu = *mt.find_morphism("mu");
  Codex cx(d);
  const int objects = cx.at(q).cat.num_objects();
  o.require(objects == 3, "Chat_q has " + std::to_string(objects) + " objects");

  // Brute force: objects of the comma category C_q / C_mu are triples
  // (a, b, f : a -> C_mu b).
  const FinCat& cq = d.cat(q);
  const FinCat& cp = d.cat(p);
  const FinFunctor& f = d.functor(mu);
  int comma = 0;
  for (int a = 0; a < cq.num_objects(); ++a)
    for (int b = 0; b < cp.num_objects(); ++b) comma += static_cast<int>(cq.hom(a, f(b)).size());
  o.require(comma == objects, "comma count " + std::to_string(comma) + " differs");

  const FinFunctor& r = cx.reflect(mt.identity(p));
  std::set<int> objs(r.obj.begin(), r.obj.end()), arrs(r.arr.begin(), r.arr.end());
  o.require(r.check_laws().empty() && static_cast<int>(objs.size()) == cp.num_objects() &&
                static_cast<int>(r.obj.size()) == cp.num_objects() &&
                static_cast<int>(arrs.size()) == cp.num_arrows() && static_cast<int>(r.arr.size()) == cp.num_arrows(),
            "Chat_p is not isomorphic to C_p");
  if (o.ok) o.detail = "3 objects, comma count 3";
}

void laws(Outcome& o) {
  LawOptions opts;
  opts.jobs = std::max(2u, std::thread::hardware_concurrency());
  std::size_t total = 0;
  int diagrams = 0;
  for (const auto& entry : std::filesystem::directory_iterator(testing::source_dir() / "bundled/diagrams")) {
    Diagram d = load_diagram(entry.path());
    ++diagrams;
    for (const auto& r : run_laws(d, opts)) {
      o.require(r.status == LawStatus::Pass, entry.path().stem().string() + ": " + format_law_result(r));
      total += r.checks;
    }
  }
  o.require(diagrams >= 6, "only " + std::to_string(diagrams) + " bundled diagrams");
  if (o.ok) o.detail = std::to_string(diagrams) + " diagrams, " + std::to_string(total) + " checks";
}

void dextrify(Outcome& o) {
  for (const char* name : {"single_arrow", "comonad"}) {
    Diagram d = load_diagram(testing::diagram_path(name));
    LawResult r = run_law(d, "dextrify-roundtrip");
    o.require(r.status == LawStatus::Pass, std::string(name) + ": " + format_law_result(r));
  }
}

std::vector<std::string> statuses(const std::vector<LawResult>& rs) {
  std::vector<std::string> out;
  for (const auto& r : rs) out.push_back(r.law + (r.status == LawStatus::Pass ? ":pass" : ":fail"));
  return out;
}

void metamorphic(Outcome& o) {
  std::vector<std::string> names(std::begin(kDiagrams), std::end(kDiagrams));
  names.push_back("not_meet_preserving");
  LawOptions base;
  base.jobs = std::max(2u, std::thread::hardware_concurrency());
  for (const auto& name : names) {
    Diagram d = load_diagram(testing::diagram_path(name));
    auto expected = statuses(run_laws(d, base));
    for (std::uint64_t seed : {3u, 11u}) {
      LawOptions shuffled = base;
      shuffled.order_seed = seed;
      o.require(statuses(run_laws(d, shuffled)) == expected, name + ": limit order changes a verdict");
    }
  }
  for (const auto& file : testing::corpus_files()) {
    testing::Corpus c = testing::load_corpus(file);
    const auto& decls = c.program.decls;
    auto expected = testing::verdicts(*c.mt, decls, testing::source_order(decls.size()));
    for (std::uint64_t seed = 1; seed <= 5; ++seed)
      o.require(testing::verdicts(*c.mt, decls, testing::shuffled_order(*c.mt, decls, seed)) == expected,
                file + ": declaration order changes a verdict");
  }
}

}  // namespace

int main() {
  bool ok = true;
  ok &= run(1, 1.0, theories);
  ok &= run(2, 1.0, positives);
  ok &= run(3, 1e9, negatives);
  ok &= run(4, 1e9, conversion);
  ok &= run(5, 1.0, single_arrow);
  ok &= run(6, 30.0, laws);
  ok &= run(7, 10.0, dextrify);
  ok &= run(8, 1e9, metamorphic);
  return ok ? 0 : 1;
}

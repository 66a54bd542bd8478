// matt: command-line front end.
//
//   matt check <src>... [--mode-theory <mt>] [--trace]
//   matt modes validate <mt>
//   matt sem laws <diagram> [--only <law>] [--cap <n>] [--jobs <n>]
//
// Exit codes: 0 success, 1 type error or failed law, 2 malformed input.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "matt/checker.hpp"
#include "matt/laws.hpp"
#include "matt/mode_theory.hpp"
#include "matt/parser.hpp"

namespace fs = std::filesystem;

namespace {

std::optional<std::string> slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void report(const matt::Error& e, const std::string& file) {
  matt::Diagnostic d{e.code(), file, e.span(), e.what(), e.notes()};
  std::cerr << matt::format_diagnostic(d) << "\n";
}

int cmd_check(const std::vector<std::string>& paths, std::string mt_path, bool trace) {
  std::vector<std::string> texts;
  for (const auto& p : paths) {
    auto text = slurp(p);
    if (!text) {
      std::cerr << "ERROR ParseError @ " << p << ":0:0: cannot read file\n";
      return 2;
    }
    texts.push_back(std::move(*text));
  }
  std::string mt_origin = mt_path;
  if (mt_path.empty()) {
    for (std::size_t i = 0; i < paths.size() && mt_path.empty(); ++i) {
      try {
        if (auto decl = matt::leading_mode_theory(texts[i])) {
          fs::path p(*decl);
          if (p.is_relative()) p = fs::path(paths[i]).parent_path() / p;
          mt_path = p.string();
          mt_origin = paths[i];
        }
      } catch (const matt::Error& e) {
        report(e, paths[i]);
        return 2;
      }
    }
  }
  if (mt_path.empty()) {
    if (paths.empty()) return 0;
    bool blank = true;
    for (const auto& t : texts) {
      try {
        // a file with no declarations needs no mode theory
        matt::ModeTheory none = matt::ModeTheoryBuilder().mode("_").build();
        blank &= matt::parse_program(none, t).decls.empty();
      } catch (const matt::Error&) {
        blank = false;
      }
    }
    if (blank) return 0;
    std::cerr << "ERROR MalformedTable @ " << paths.front()
              << ":0:0: no mode theory; pass --mode-theory or add a mode-theory declaration\n";
    return 2;
  }

  std::optional<matt::ModeTheory> mt;
  try {
    mt = matt::load_mode_theory(mt_path);
  } catch (const matt::Error& e) {
    report(e, mt_path);
    return 2;
  }
  auto validation = matt::validate_mode_theory(*mt);
  if (!validation.ok()) {
    for (const auto& v : validation.violations)
      std::cerr << "ERROR MalformedTable @ " << mt_path << ":0:0: " << v.axiom << ": " << v.detail
                << "\n";
    return 2;
  }

  std::vector<matt::Program> programs;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    try {
      programs.push_back(matt::parse_program(*mt, texts[i], paths[i]));
    } catch (const matt::Error& e) {
      report(e, paths[i]);
      return 2;
    }
  }
  matt::Checker checker(*mt);
  checker.set_trace(trace);
  auto diags = matt::check_programs(checker, programs);
  for (const auto& d : diags) std::cerr << matt::format_diagnostic(d) << "\n";
  std::size_t total = 0;
  for (const auto& p : programs)
    for (const auto& d : p.decls)
      if (d.kind != matt::Decl::Kind::ModeTheory) ++total;
  std::cout << (total - diags.size()) << " of " << total << " declarations checked\n";
  return diags.empty() ? 0 : 1;
}

int cmd_modes_validate(const std::string& path) {
  try {
    matt::ModeTheory mt = matt::load_mode_theory(path);
    auto report = matt::validate_mode_theory(mt);
    if (report.ok()) {
      std::cout << path << ": valid (" << mt.num_modes() << " modes, " << mt.num_morphisms()
                << " morphisms, " << mt.num_cells() << " cells)\n";
      return 0;
    }
    for (const auto& v : report.violations) std::cout << "VIOLATION " << v.axiom << ": " << v.detail << "\n";
    return 1;
  } catch (const matt::Error& e) {
    report(e, path);
    return 2;
  }
}

int cmd_sem_laws(const std::string& path, const std::string& only, std::size_t cap, unsigned jobs) {
  try {
    matt::Diagram diagram = matt::load_diagram(path);
    matt::LawOptions opts;
    opts.cap = cap;
    opts.jobs = jobs;
    if (!only.empty()) {
      const auto& names = matt::law_names();
      if (std::find(names.begin(), names.end(), only) == names.end()) {
        std::cerr << "unknown law '" << only << "'; known laws:";
        for (const auto& n : names) std::cerr << " " << n;
        std::cerr << "\n";
        return 2;
      }
      opts.only = {only};
    }
    auto results = matt::run_laws(diagram, opts);
    std::size_t failed = 0;
    for (const auto& r : results) {
      std::cout << matt::format_law_result(r) << "\n";
      if (r.status == matt::LawStatus::Fail) ++failed;
    }
    std::cout << "summary: " << results.size() - failed << " passed, " << failed << " failed\n";
    return failed ? 1 : 0;
  } catch (const matt::Error& e) {
    report(e, path);
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Type checker and semantics workbench for multimodal adjoint type theory"};
  app.require_subcommand(1);

  auto* check = app.add_subcommand("check", "type-check source files");
  std::vector<std::string> sources;
  std::string mt_path;
  bool trace = false;
  check->add_option("sources", sources, "source files")->required();
  check->add_option("--mode-theory", mt_path, "mode theory file (overrides mode-theory declarations)");
  check->add_flag("--trace", trace, "print conversion traces");

  auto* modes = app.add_subcommand("modes", "mode theory tools");
  modes->require_subcommand(1);
  auto* validate = modes->add_subcommand("validate", "check the adjoint mode theory axioms");
  std::string validate_path;
  validate->add_option("theory", validate_path, "mode theory file")->required();

  auto* sem = app.add_subcommand("sem", "semantics tools");
  sem->require_subcommand(1);
  auto* laws = sem->add_subcommand("laws", "verify the co-dextrification laws on a diagram");
  std::string diagram_path, only;
  std::size_t cap = matt::LawOptions{}.cap;
  unsigned jobs = 1;
  laws->add_option("diagram", diagram_path, "diagram file")->required();
  laws->add_option("--only", only, "run a single law suite");
  laws->add_option("--cap", cap, "search-size cap");
  laws->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  if (*check) return cmd_check(sources, mt_path, trace);
  if (*validate) return cmd_modes_validate(validate_path);
  if (*laws) return cmd_sem_laws(diagram_path, only, cap, jobs);
  return 2;
}

// bctx: type-check terms, translate mini linear ML, and run bounded lemma
// suites over binding contexts.

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bctx/ctx_text.hpp"
#include "bctx/ctxspec.hpp"
#include "bctx/errors.hpp"
#include "bctx/judgment.hpp"
#include "bctx/lemma.hpp"
#include "bctx/report.hpp"
#include "bctx/suites.hpp"

namespace {

using namespace bctx;

enum class Format { Text, Structured };

struct RunConfig {
  std::optional<std::size_t> term_size;
  std::optional<std::size_t> ctx;
  std::optional<std::size_t> depth;
  std::optional<std::size_t> names;
  int jobs = 1;
  Format format = Format::Text;
  bool timing = true;

  GenBounds apply(GenBounds b) const {
    if (term_size) b.max_term_size = *term_size;
    if (ctx) b.max_ctx = *ctx;
    if (depth) b.max_depth = *depth;
    if (names) b.name_pool = *names;
    return b;
  }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

void emit_record(Format f, const nlohmann::ordered_json& j, const std::string& text) {
  if (f == Format::Structured)
    std::cout << j.dump() << "\n";
  else
    std::cout << text << "\n";
}

int cmd_check(const std::string& file, System sys, bool algo, const RunConfig& cfg) {
  auto js = parse_judgments(slurp(file));
  bool all_ok = true;
  for (const auto& j : js) {
    nlohmann::ordered_json rec;
    rec["line"] = j.line;
    rec["judgment"] = j.text;
    rec["expected"] = yes_no(j.expected);
    std::string text = std::to_string(j.line) + ": " + j.text + " => ";
    try {
      bool got = decide(sys, algo, j.ctx, j.term, j.ty);
      bool ok = got == j.expected;
      all_ok = all_ok && ok;
      rec["result"] = yes_no(got);
      rec["verdict"] = ok ? "pass" : "fail";
      text += yes_no(got) + (ok ? "" : " (expected " + yes_no(j.expected) + ")");
    } catch (const std::exception& e) {
      all_ok = false;
      rec["error"] = e.what();
      rec["verdict"] = "fail";
      text += std::string("error: ") + e.what();
    }
    emit_record(cfg.format, rec, text);
  }
  return all_ok ? 0 : 1;
}

int cmd_translate(const std::string& file, bool verify, const RunConfig& cfg) {
  auto items = parse_translations(slurp(file));
  bool all_ok = true;
  for (const auto& it : items) {
    nlohmann::ordered_json rec;
    rec["line"] = it.line;
    rec["source"] = print_term(it.src);
    std::string text = std::to_string(it.line) + ": " + print_term(it.src) + " ~> ";
    bool ok = true;
    try {
      Tm out = translate(it.ctx, it.src);
      rec["target"] = print_term(out);
      text += print_term(out);
      if (it.expected && !(*it.expected == out)) {
        ok = false;
        text += " (expected " + print_term(*it.expected) + ")";
        rec["expected"] = print_term(*it.expected);
      }
      if (verify) {
        bool rel = ltrans_rel(it.ctx, it.src, out);
        rec["ltrans"] = yes_no(rel);
        text += "; ltrans " + yes_no(rel);
        ok = ok && rel;
        if (elems(it.ctx).empty()) {
          auto src = mltype_types(TyCtx(), it.src);
          auto dst = ltype_types(TyCtx(), out);
          std::sort(src.begin(), src.end());
          std::sort(dst.begin(), dst.end());
          bool same = src == dst;
          rec["types_preserved"] = yes_no(same);
          text += "; types preserved " + yes_no(same);
          ok = ok && same;
        }
      }
    } catch (const TranslationError& e) {
      ok = false;
      rec["error"] = e.what();
      text += std::string("error: ") + e.what();
    }
    rec["verdict"] = ok ? "pass" : "fail";
    all_ok = all_ok && ok;
    emit_record(cfg.format, rec, text);
  }
  return all_ok ? 0 : 1;
}

int cmd_verify(const std::string& spec_file, const std::vector<std::string>& lemma_files,
               const std::vector<std::string>& suites, bool no_freshness, const RunConfig& cfg) {
  std::vector<CheckReport> reports;
  std::vector<ContextSpec> specs;
  if (!spec_file.empty()) {
    specs = parse_specs(slurp(spec_file));
    for (const auto& s : specs)
      for (const auto& w : s.warnings) std::cerr << "warning: " << w << "\n";
    std::vector<LemmaStmt> lemmas;
    for (const auto& f : lemma_files) {
      auto ls = parse_lemmas(slurp(f), specs);
      lemmas.insert(lemmas.end(), ls.begin(), ls.end());
    }
    CheckOptions opts;
    opts.nabla_freshness = !no_freshness;
    auto rs = spec_suite(specs, lemmas, cfg.apply(typing_bounds()), opts, cfg.jobs, no_freshness);
    reports.insert(reports.end(), rs.begin(), rs.end());
  }
  for (const auto& name : suites) {
    std::vector<CheckReport> rs;
    if (name == "core")
      rs = core_suite(cfg.apply(core_bounds()), cfg.jobs);
    else if (name == "typing")
      rs = typing_suite(cfg.apply(typing_bounds()), cfg.jobs);
    else if (name == "oracle")
      rs = oracle_suite(cfg.apply(oracle_bounds()), cfg.jobs);
    else if (name == "translation")
      rs = translation_suite(cfg.apply(translation_bounds()), cfg.jobs);
    else if (name == "fidelity")
      rs = fidelity_suite(specs, cfg.apply(typing_bounds()), cfg.jobs);
    for (auto& r : rs) {
      r.name = name + "/" + r.name;
      reports.push_back(std::move(r));
    }
  }
  if (!cfg.timing)
    for (auto& r : reports) r.elapsed_ms = 0;
  std::cout << (cfg.format == Format::Structured ? structured(reports) : text_report(reports));
  bool pass = std::all_of(reports.begin(), reports.end(), [](const CheckReport& r) { return r.pass; });
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Binding-context checker: typing, translation and bounded lemma suites"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string format = "text";
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--bound-term-size", cfg.term_size, "Largest generated term");
    sub->add_option("--bound-ctx", cfg.ctx, "Most elements per context");
    sub->add_option("--bound-depth", cfg.depth, "Deepest union nesting (1 = lists)");
    sub->add_option("--bound-names", cfg.names, "Size of the name pool");
    sub->add_option("--jobs", cfg.jobs, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "structured"}));
    sub->add_flag("--no-timing", "Report 0 ms for every record, for byte-stable output");
  };

  std::string file;
  std::string system = "linear";
  bool algo = false;
  auto* check = app.add_subcommand("check", "Check the expected verdict of every judgment in a file");
  check->add_option("file", file, "Judgment file")->required();
  check->add_option("--system", system, "Type system")->check(CLI::IsMember({"stlc", "linear", "ml"}));
  check->add_flag("--algo", algo, "Use the algorithmic checker instead of the relational one");
  add_common(check);

  bool verify = false;
  auto* trans = app.add_subcommand("translate", "Translate mini linear ML terms into the linear calculus");
  trans->add_option("file", file, "Term file")->required();
  trans->add_flag("--verify", verify, "Also check the translation relation and type preservation");
  add_common(trans);

  std::string spec_file;
  std::vector<std::string> lemma_files;
  std::vector<std::string> suites;
  bool no_freshness = false;
  auto* ver = app.add_subcommand("verify", "Elaborate context specs and run lemma suites");
  ver->add_option("spec", spec_file, "File of Context commands");
  ver->add_option("lemmas", lemma_files, "Files of Lemma statements");
  ver->add_option("--suite", suites, "Built-in suite (repeatable)")
      ->check(CLI::IsMember({"core", "typing", "oracle", "translation", "fidelity"}));
  ver->add_flag("--drop-nabla-freshness", no_freshness, "Check list-level lemmas without the nabla freshness condition (skips lifting and distributivity)");
  add_common(ver);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  cfg.format = format == "structured" ? Format::Structured : Format::Text;
  for (auto* sub : {check, trans, ver})
    if (sub->parsed() && sub->count("--no-timing")) cfg.timing = false;

  try {
    if (check->parsed()) {
      System sys = system == "stlc" ? System::Stlc : system == "ml" ? System::Ml : System::Linear;
      return cmd_check(file, sys, algo, cfg);
    }
    if (trans->parsed()) return cmd_translate(file, verify, cfg);
    if (spec_file.empty() && suites.empty()) {
      std::cerr << "verify: give a spec file or at least one --suite\n";
      return 2;
    }
    if (std::find(suites.begin(), suites.end(), "fidelity") != suites.end() && spec_file.empty()) {
      std::cerr << "verify: --suite fidelity needs a spec file\n";
      return 2;
    }
    return cmd_verify(spec_file, lemma_files, suites, no_freshness, cfg);
  } catch (const SyntaxError& e) {
    std::cerr << "syntax error at " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <array>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "bctx/ctxspec.hpp"
#include "bctx/lemma.hpp"
#include "bctx/suites.hpp"
#include "bctx/typing.hpp"

using namespace bctx;

namespace {

std::string fixture(const std::string& rel) { return std::string(FIXTURE_DIR) + "/" + rel; }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

void require(Outcome& o, bool cond, const std::string& what) {
  if (!cond && o.pass) {
    o.pass = false;
    o.detail = what;
  }
}

void require_reports(Outcome& o, const std::vector<CheckReport>& rs, const std::vector<std::string>& names) {
  std::set<std::string> seen;
  for (const auto& r : rs) {
    seen.insert(r.name);
    require(o, r.pass, r.name + " failed" + (r.counterexample ? ": " + to_text(*r.counterexample) : ""));
    require(o, r.cases > 0, r.name + " ran no cases");
  }
  for (const auto& n : names) require(o, seen.count(n) > 0, "missing " + n);
}

std::vector<ContextSpec> paper_specs() { return parse_specs(slurp(fixture("specs/paper.ctx"))); }

std::vector<LemmaStmt> paper_lemmas(const std::vector<ContextSpec>& specs) {
  return parse_lemmas(slurp(fixture("lemmas/typing.lem")) + slurp(fixture("lemmas/translation.lem")), specs);
}

Outcome c1() {
  Outcome o;
  Ty a = Ty::base("a"), b = Ty::base("b");
  Ty ab = Ty::arrow(a, b);
  Tm good = Tm::abs(ab, Tm::abs(a, Tm::app(Tm::bound(1), Tm::bound(0))));
  Tm reuse = Tm::abs(Ty::arrow(a, ab), Tm::abs(a, Tm::app(Tm::app(Tm::bound(1), Tm::bound(0)), Tm::bound(0))));
  Tm unused = Tm::abs(a, Tm::abs(b, Tm::bound(0)));
  Ty want = Ty::arrow(ab, ab);
  require(o, type_of_infer(TyCtx(), good) == want, "intuitionistic type of the well-formed term");
  require(o, ltype_rel(TyCtx(), good, want), "relational linear type of the well-formed term");
  require(o, ltype_check_top(TyCtx(), good) == want, "algorithmic linear type of the well-formed term");
  require(o, ltype_types(TyCtx(), reuse).empty() && !ltype_check_top(TyCtx(), reuse), "reuse rejected linearly");
  require(o, ltype_types(TyCtx(), unused).empty() && !ltype_check_top(TyCtx(), unused), "unused rejected linearly");
  require(o, type_of_infer(TyCtx(), reuse).has_value(), "reuse accepted intuitionistically");
  return o;
}

Outcome c2() {
  Outcome o;
  require_reports(o, core_suite(core_bounds()),
                  {"mem_replace", "sel_replace", "perm_to_part", "part_to_perm", "sel_implies_mem", "perm_eq_perm_rel",
                   "partition_count"});
  return o;
}

Outcome c3() {
  Outcome o;
  require_reports(o, typing_suite(typing_bounds()),
                  {"ty_ctx_mem", "ty_ctx_uniq", "ty_uniq", "ty_ctx_mem'", "ty_ctx_uniq'", "ty_ctx_distr_part",
                   "ty_ctx_distr"});
  return o;
}

Outcome c4() {
  Outcome o;
  require_reports(o, oracle_suite(oracle_bounds()), {"ltype_oracle", "mltype_oracle"});
  return o;
}

Outcome c5() {
  Outcome o;
  require_reports(o, translation_suite(translation_bounds()),
                  {"trans_rel_uniq", "trans_rel_mem", "trans_rel_sel", "trans_rel_list_distr", "trans_rel_distr",
                   "sel_implies_mem", "ltrans_pres_ty"});
  return o;
}

Outcome c6() {
  Outcome o;
  auto specs = paper_specs();
  auto lemmas = paper_lemmas(specs);
  GenBounds b = typing_bounds();
  require_reports(o, fidelity_suite(specs, b),
                  {"ty_ctx'_list_fidelity", "ty_ctx'_mset_fidelity", "trans_rel_list_fidelity",
                   "trans_rel_mset_fidelity"});
  require_reports(o, spec_suite(specs, lemmas, b),
                  {"ty_ctx'_distr1", "trans_rel_distr1", "trans_rel_distr2", "trans_rel_distr3", "ty_ctx_mem_mset",
                   "ty_ctx_uniq_mset", "trans_rel_mem_mset"});
  auto targets = parse_lemmas(slurp(fixture("lemmas/paper_mset.lem")), specs);
  std::vector<std::pair<std::string, std::size_t>> pairs{{"ty_ctx_mem", 0}, {"ty_ctx_uniq", 1}, {"trans_rel_mem", 2}};
  for (const auto& [name, k] : pairs) {
    const LemmaStmt* src = nullptr;
    for (const auto& l : lemmas)
      if (l.name == name) src = &l;
    require(o, src != nullptr, "missing list-form " + name);
    if (!src) continue;
    LiftedLemma lifted = lift_lemma(find_spec(specs, src->spec), *src);
    require(o, same_shape(lifted.stmt, targets[k]), "lift of " + name + " differs from " + targets[k].name);
  }
  return o;
}

Outcome c7() {
  Outcome o;
  auto specs = paper_specs();
  auto lemmas = paper_lemmas(specs);
  GenBounds b = typing_bounds();
  std::size_t broken = 0;
  for (const auto& r : spec_suite(specs, lemmas, b, CheckOptions{false}, 1, true))
    if (!r.pass && r.name.find("uniq") != std::string::npos && r.counterexample && !r.counterexample->empty()) ++broken;
  require(o, broken > 0, "no uniqueness lemma failed without freshness");
  for (const auto& r : spec_suite(specs, lemmas, b, CheckOptions{true}, 1, true))
    require(o, r.pass, r.name + " fails with freshness restored");
  if (o.pass) o.detail = std::to_string(broken) + " uniqueness lemmas falsified";
  return o;
}

std::string run(const std::string& cmd, int& status) {
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) {
    status = -1;
    return out;
  }
  std::array<char, 4096> buf{};
  while (std::size_t n = fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), n);
  status = pclose(p);
  return out;
}

Outcome c8() {
  Outcome o;
  std::string base = std::string(BCTX_CLI) + " verify " + fixture("specs/paper.ctx") + " " +
                     fixture("lemmas/typing.lem") + " " + fixture("lemmas/translation.lem") +
                     " --format structured --no-timing";
  int s1 = 0, s2 = 0;
  std::string a = run(base + " --jobs 1", s1);
  std::string b = run(base + " --jobs 4", s2);
  require(o, s1 == 0 && s2 == 0, "verify exited nonzero");
  require(o, !a.empty(), "empty report");
  require(o, a == b, "reports differ between --jobs 1 and --jobs 4");
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* what;
    double limit_s;
    std::function<Outcome()> run;
  };
  std::vector<Criterion> cs{
      {1, "paper typing examples", 1, c1},
      {2, "core context lemmas", 30, c2},
      {3, "typing lemmas", 30, c3},
      {4, "relational and algorithmic checkers agree", 120, c4},
      {5, "translation lemmas", 120, c5},
      {6, "schematic engine fidelity, distributivity and lifting", 120, c6},
      {7, "freshness mutation is detected", 0, c7},
      {8, "reports independent of --jobs", 0, c8},
  };
  bool all = true;
  for (const auto& c : cs) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit_s > 0 && s > c.limit_s) require(o, false, "over the time limit");
    all = all && o.pass;
    char secs[32];
    std::snprintf(secs, sizeof secs, "%.2f s", s);
    std::cout << "criterion " << c.id << ": " << (o.pass ? "PASS" : "FAIL") << " (" << c.what << ", " << secs;
    if (c.limit_s > 0) std::cout << ", limit " << c.limit_s << " s";
    if (!o.detail.empty()) std::cout << "; " << o.detail;
    std::cout << ")" << std::endl;
  }
  return all ? 0 : 1;
}

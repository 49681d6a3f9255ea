#include "bctx/lemma.hpp"

#include <algorithm>
#include <cctype>

#include "bctx/ctx_text.hpp"
#include "bctx/errors.hpp"
#include "bctx/parallel.hpp"

namespace bctx {

// ---------------------------------------------------------------------------
// Parsing and printing

namespace {

std::vector<std::string> binder_list(TokenStream& ts) {
  std::vector<std::string> vs;
  while (ts.peek().kind == Token::Kind::Ident) vs.push_back(ts.next().text);
  ts.expect(",");
  return vs;
}

std::size_t ctx_index(const LemmaStmt& s, const Token& tok) {
  auto it = std::find(s.ctx_vars.begin(), s.ctx_vars.end(), tok.text);
  if (it == s.ctx_vars.end())
    throw SpecError(SpecError::Kind::ShapeViolation,
                    s.name + ": 'member' must refer to a context variable, found '" + tok.text + "'");
  return static_cast<std::size_t>(it - s.ctx_vars.begin());
}

std::string atom(const Term& t) {
  std::string s = to_text(t);
  return s.find(' ') == std::string::npos ? s : "(" + s + ")";
}

}  // namespace

LemmaStmt parse_lemma(TokenStream& ts, const std::vector<ContextSpec>& specs) {
  Token kw = ts.expect_ident();
  if (kw.text != "Lemma" && kw.text != "Theorem") ts.fail_at(kw, "expected 'Lemma' or 'Theorem'");
  LemmaStmt s;
  s.name = ts.expect_ident().text;
  ts.expect(":");
  Token fa = ts.expect_ident();
  if (fa.text != "forall") ts.fail_at(fa, "expected 'forall'");
  std::vector<std::string> bound = binder_list(ts);

  Token pred = ts.expect_ident();
  const ContextSpec* spec = nullptr;
  for (const auto& sp : specs) {
    if (pred.text == sp.name) {
      spec = &sp;
      s.level = Level::Mset;
    } else if (pred.text == sp.name + "_list") {
      spec = &sp;
      s.level = Level::List;
    }
  }
  if (!spec) throw SpecError(SpecError::Kind::UnknownContext, s.name + ": unknown predicate '" + pred.text + "'");
  s.spec = spec->name;
  while (ts.peek().kind == Token::Kind::Ident) s.ctx_vars.push_back(ts.next().text);
  if (s.ctx_vars.size() != spec->arity)
    throw SpecError(SpecError::Kind::ArityMismatch, s.name + ": " + pred.text + " takes " +
                                                        std::to_string(spec->arity) + " contexts, given " +
                                                        std::to_string(s.ctx_vars.size()));
  for (const auto& v : bound)
    if (std::find(s.ctx_vars.begin(), s.ctx_vars.end(), v) == s.ctx_vars.end()) s.forall_vars.push_back(v);

  std::set<std::string> vars(bound.begin(), bound.end());
  VarPredicate is_var = [&](const std::string& id) {
    return vars.contains(id) || std::isupper(static_cast<unsigned char>(id[0]));
  };

  ts.expect("->");
  while (ts.peek().is("member")) {
    ts.next();
    Term elem = parse_atom_term(ts, is_var);
    s.hyps.push_back({elem, ctx_index(s, ts.expect_ident())});
    ts.expect("->");
  }
  if (ts.peek().is("exists")) {
    ts.next();
    s.exist_vars = binder_list(ts);
    vars.insert(s.exist_vars.begin(), s.exist_vars.end());
  }
  do {
    if (ts.peek().is("member")) {
      ts.next();
      Term elem = parse_atom_term(ts, is_var);
      s.concl_members.push_back({elem, ctx_index(s, ts.expect_ident())});
      continue;
    }
    SideFormula f = parse_formula_atom(ts, is_var);
    if (f.kind == SideFormula::Kind::Eq)
      s.concl_eqs.emplace_back(f.lhs, f.rhs);
    else if (f.kind != SideFormula::Kind::Truth)
      s.concl_formulas.push_back(f);
  } while (ts.accept("/\\"));
  ts.expect(".");
  check_shape(s, *spec);
  return s;
}

LemmaStmt parse_lemma(std::string_view text, const std::vector<ContextSpec>& specs) {
  TokenStream ts(text);
  LemmaStmt s = parse_lemma(ts, specs);
  if (!ts.at_end()) ts.fail_at(ts.peek(), "unexpected input after lemma");
  return s;
}

std::vector<LemmaStmt> parse_lemmas(std::string_view text, const std::vector<ContextSpec>& specs) {
  TokenStream ts(text);
  std::vector<LemmaStmt> out;
  while (!ts.at_end()) out.push_back(parse_lemma(ts, specs));
  return out;
}

std::string to_text(const LemmaStmt& s) {
  std::string out = "Theorem " + s.name + " : forall";
  for (const auto& v : s.ctx_vars) out += " " + v;
  for (const auto& v : s.forall_vars) out += " " + v;
  out += ", " + s.pred();
  for (const auto& v : s.ctx_vars) out += " " + v;
  for (const auto& h : s.hyps) out += " -> member " + atom(h.elem) + " " + s.ctx_vars[h.ctx];
  out += " -> ";
  if (!s.exist_vars.empty()) {
    out += "exists";
    for (const auto& v : s.exist_vars) out += " " + v;
    out += ", ";
  }
  std::vector<std::string> items;
  for (const auto& m : s.concl_members) items.push_back("member " + atom(m.elem) + " " + s.ctx_vars[m.ctx]);
  for (const auto& f : s.concl_formulas) {
    std::string t = to_text(f);
    items.push_back(f.kind == SideFormula::Kind::Disj ? "(" + t + ")" : t);
  }
  for (const auto& [l, r] : s.concl_eqs) items.push_back(to_text(l) + " = " + to_text(r));
  if (items.empty()) items.push_back("true");
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? " /\\ " : "") + items[i];
  return out + ".";
}

namespace {

std::map<std::string, std::string> canonical_names(const LemmaStmt& s) {
  std::map<std::string, std::string> m;
  for (std::size_t i = 0; i < s.ctx_vars.size(); ++i) m[s.ctx_vars[i]] = "#C" + std::to_string(i);
  for (std::size_t i = 0; i < s.forall_vars.size(); ++i) m[s.forall_vars[i]] = "#V" + std::to_string(i);
  for (std::size_t i = 0; i < s.exist_vars.size(); ++i) m[s.exist_vars[i]] = "#E" + std::to_string(i);
  return m;
}

std::vector<MemberAtom> renamed(const std::vector<MemberAtom>& ms, const std::map<std::string, std::string>& m) {
  std::vector<MemberAtom> out;
  for (const auto& a : ms) out.push_back({rename_vars(a.elem, m), a.ctx});
  return out;
}

}  // namespace

bool same_shape(const LemmaStmt& a, const LemmaStmt& b) {
  if (a.spec != b.spec || a.level != b.level || a.ctx_vars.size() != b.ctx_vars.size() ||
      a.forall_vars.size() != b.forall_vars.size() || a.exist_vars.size() != b.exist_vars.size() ||
      a.concl_formulas.size() != b.concl_formulas.size() || a.concl_eqs.size() != b.concl_eqs.size())
    return false;
  auto ma = canonical_names(a);
  auto mb = canonical_names(b);
  if (renamed(a.hyps, ma) != renamed(b.hyps, mb)) return false;
  if (renamed(a.concl_members, ma) != renamed(b.concl_members, mb)) return false;
  for (std::size_t i = 0; i < a.concl_formulas.size(); ++i)
    if (!(rename_vars(a.concl_formulas[i], ma) == rename_vars(b.concl_formulas[i], mb))) return false;
  for (std::size_t i = 0; i < a.concl_eqs.size(); ++i) {
    if (!(rename_vars(a.concl_eqs[i].first, ma) == rename_vars(b.concl_eqs[i].first, mb))) return false;
    if (!(rename_vars(a.concl_eqs[i].second, ma) == rename_vars(b.concl_eqs[i].second, mb))) return false;
  }
  return true;
}

void check_shape(const LemmaStmt& s, const ContextSpec& spec) {
  auto violation = [&](const std::string& msg) {
    throw SpecError(SpecError::Kind::ShapeViolation, s.name + ": " + msg);
  };
  if (s.spec != spec.name) violation("stated over " + s.spec + ", not " + spec.name);
  if (s.ctx_vars.size() != spec.arity)
    throw SpecError(SpecError::Kind::ArityMismatch, s.name + ": wrong number of context variables");
  std::set<std::string> ctxs(s.ctx_vars.begin(), s.ctx_vars.end());
  if (ctxs.size() != s.ctx_vars.size()) violation("context variables must be distinct");
  std::set<std::string> used;
  for (const auto& h : s.hyps) collect_vars(h.elem, used);
  for (const auto& m : s.concl_members) collect_vars(m.elem, used);
  for (const auto& f : s.concl_formulas) collect_vars(f, used);
  for (const auto& [l, r] : s.concl_eqs) {
    collect_vars(l, used);
    collect_vars(r, used);
  }
  std::set<std::string> declared(s.forall_vars.begin(), s.forall_vars.end());
  declared.insert(s.exist_vars.begin(), s.exist_vars.end());
  for (const auto& v : used) {
    if (ctxs.contains(v)) violation("context variable " + v + " occurs inside a term or formula");
    if (!declared.contains(v))
      throw SpecError(SpecError::Kind::UnboundVariable, s.name + ": variable " + v + " is not quantified");
  }
  for (const auto& h : s.hyps)
    if (h.ctx >= spec.arity) violation("member hypothesis refers to a missing context");
  for (const auto& m : s.concl_members)
    if (m.ctx >= spec.arity) violation("member conclusion refers to a missing context");
}

// ---------------------------------------------------------------------------
// Search

namespace {

std::vector<Term> distinct(const TermCtx& g) {
  auto xs = sorted_elems(g);
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

std::optional<std::string> first_unbound(const std::set<std::string>& vs, const Subst& s) {
  for (const auto& v : vs)
    if (!s.contains(v)) return v;
  return std::nullopt;
}

struct Goal {
  enum class Kind { Member, Eq, Formula } kind;
  const MemberAtom* member = nullptr;
  const std::pair<Term, Term>* eq = nullptr;
  const SideFormula* formula = nullptr;
};

class Solver {
 public:
  Solver(const LemmaStmt& stmt, const CtxTuple& ctxs, const std::vector<Term>& universe)
      : ctxs_(ctxs), universe_(universe) {
    for (const auto& m : stmt.concl_members) goals_.push_back({Goal::Kind::Member, &m, nullptr, nullptr});
    for (const auto& e : stmt.concl_eqs) goals_.push_back({Goal::Kind::Eq, nullptr, &e, nullptr});
    for (const auto& f : stmt.concl_formulas) goals_.push_back({Goal::Kind::Formula, nullptr, nullptr, &f});
    for (std::size_t k = 0; k < ctxs.size(); ++k) cands_.push_back(distinct(ctxs[k]));
  }

  std::optional<Subst> solve(Subst s) {
    if (go(0, s)) return s;
    return std::nullopt;
  }

 private:
  bool go(std::size_t k, Subst& s) {
    if (k == goals_.size()) return true;
    const Goal& g = goals_[k];
    switch (g.kind) {
      case Goal::Kind::Member:
        for (const auto& y : cands_[g.member->ctx]) {
          Subst s2 = s;
          if (match(g.member->elem, y, s2) && go(k + 1, s2)) {
            s = std::move(s2);
            return true;
          }
        }
        return false;
      case Goal::Kind::Eq: {
        Term l = instantiate(g.eq->first, s);
        Term r = instantiate(g.eq->second, s);
        if (l.ground() || r.ground()) {
          Subst s2 = s;
          bool ok = l.ground() ? match(r, l, s2) : match(l, r, s2);
          if (!ok || !go(k + 1, s2)) return false;
          s = std::move(s2);
          return true;
        }
        std::set<std::string> vs;
        collect_vars(l, vs);
        collect_vars(r, vs);
        return enumerate(k, s, vs);
      }
      case Goal::Kind::Formula: {
        std::set<std::string> vs;
        collect_vars(*g.formula, vs);
        if (first_unbound(vs, s)) return enumerate(k, s, vs);
        return eval(*g.formula, s) && go(k + 1, s);
      }
    }
    return false;
  }

  bool enumerate(std::size_t k, Subst& s, const std::set<std::string>& vs) {
    std::string v = *first_unbound(vs, s);
    for (const auto& t : universe_) {
      Subst s2 = s;
      s2[v] = t;
      if (go(k, s2)) {
        s = std::move(s2);
        return true;
      }
    }
    return false;
  }

  const CtxTuple& ctxs_;
  const std::vector<Term>& universe_;
  std::vector<Goal> goals_;
  std::vector<std::vector<Term>> cands_;
};

Bindings case_bindings(const LemmaStmt& stmt, const CtxTuple& ctxs, const Subst& sigma) {
  Bindings b;
  for (std::size_t k = 0; k < ctxs.size(); ++k) b.emplace_back(stmt.ctx_vars[k], to_text(ctxs[k]));
  for (const auto& v : stmt.forall_vars)
    if (auto it = sigma.find(v); it != sigma.end()) b.emplace_back(v, to_text(it->second));
  return b;
}

}  // namespace

std::optional<Subst> conclusion_witness(const LemmaStmt& stmt, const CtxTuple& ctxs, const Subst& sigma,
                                        const std::vector<Term>& universe) {
  return Solver(stmt, ctxs, universe).solve(sigma);
}

std::vector<Subst> hypothesis_bindings(const LemmaStmt& stmt, const CtxTuple& ctxs,
                                       const std::vector<Term>& universe) {
  std::vector<Subst> out;
  std::vector<std::vector<Term>> cands;
  for (const auto& g : ctxs) cands.push_back(distinct(g));
  std::function<void(std::size_t, const Subst&)> free_vars = [&](std::size_t k, const Subst& s) {
    if (k == stmt.forall_vars.size()) {
      out.push_back(s);
      return;
    }
    const std::string& v = stmt.forall_vars[k];
    if (s.contains(v)) return free_vars(k + 1, s);
    for (const auto& t : universe) {
      Subst s2 = s;
      s2[v] = t;
      free_vars(k + 1, s2);
    }
  };
  std::function<void(std::size_t, const Subst&)> hyps = [&](std::size_t k, const Subst& s) {
    if (k == stmt.hyps.size()) return free_vars(0, s);
    for (const auto& y : cands[stmt.hyps[k].ctx]) {
      Subst s2 = s;
      if (match(stmt.hyps[k].elem, y, s2)) hyps(k + 1, s2);
    }
  };
  hyps(0, Subst{});
  return out;
}

std::vector<Term> instance_universe(const CtxTuple& ctxs, const GenBounds& b) {
  std::vector<Term> out = type_terms(b);
  std::set<Name> names;
  for (const auto& g : ctxs)
    for (const auto& x : elems(g)) collect_noms(x, names);
  Name extra{"n", 1};
  while (names.contains(extra)) ++extra.index;
  for (const auto& n : names) out.push_back(Term::nom(n));
  out.push_back(Term::nom(extra));
  return out;
}

// ---------------------------------------------------------------------------
// Lifting and verification

LiftedLemma lift_lemma(const ContextSpec& spec, const LemmaStmt& stmt, const CheckOptions& opts) {
  check_shape(stmt, spec);
  if (stmt.level != Level::List)
    throw SpecError(SpecError::Kind::ShapeViolation, stmt.name + ": only list-form lemmas can be lifted");
  LiftedLemma out;
  out.stmt = stmt;
  out.stmt.name = stmt.name + "_mset";
  out.stmt.level = Level::Mset;
  std::set<std::string> taken(stmt.forall_vars.begin(), stmt.forall_vars.end());
  taken.insert(stmt.exist_vars.begin(), stmt.exist_vars.end());
  for (auto& v : out.stmt.ctx_vars) {
    std::string g = v.starts_with("L") ? "G" + v.substr(1) : v + "'";
    while (taken.contains(g)) g += "'";
    taken.insert(g);
    v = g;
  }
  out.check = [spec, stmt, opts](const CtxTuple& gs, const Subst& sigma, std::string* why) {
    auto fail = [&](const std::string& msg) {
      if (why) *why = msg;
      return LiftOutcome::Fails;
    };
    // Step 1: unfold the predicate, move member hypotheses onto the lists.
    auto ls = mset_witness(spec, gs, opts);
    if (!ls) return LiftOutcome::Vacuous;
    for (const auto& h : stmt.hyps) {
      Term x = instantiate(h.elem, sigma);
      if (!x.ground() || !mem_transport(x, gs[h.ctx], (*ls)[h.ctx]))
        return fail("step 1: member hypothesis does not transport");
    }
    // Step 2: the list-form statement.
    auto w = conclusion_witness(stmt, *ls, sigma, instance_universe(*ls, GenBounds{}));
    if (!w) return fail("step 2: list-form conclusion fails on " + to_text(tuple_bindings(*ls, "L")));
    // Step 3: member conclusions back along the same permutations.
    for (const auto& m : stmt.concl_members) {
      Term y = instantiate(m.elem, *w);
      if (!y.ground() || !mem_transport(y, (*ls)[m.ctx], gs[m.ctx]))
        return fail("step 3: member conclusion does not transport");
    }
    return LiftOutcome::Holds;
  };
  return out;
}

CheckReport verify_lemma(const ContextSpec& spec, const LemmaStmt& stmt, const GenBounds& b,
                         const CheckOptions& opts, int jobs) {
  check_shape(stmt, spec);
  auto instances = stmt.level == Level::List ? gen_list_tuples(spec, b, opts)
                                             : gen_mset_tuples(spec, b, opts, Shapes::Product);
  return run_check(stmt.name, instances.size(), jobs, [&](std::size_t i) -> CaseResult {
    const CtxTuple& gs = instances[i];
    auto universe = instance_universe(gs, b);
    for (const auto& sigma : hypothesis_bindings(stmt, gs, universe))
      if (!conclusion_witness(stmt, gs, sigma, universe)) return case_bindings(stmt, gs, sigma);
    return std::nullopt;
  });
}

CheckReport verify_lifted(const ContextSpec& spec, const LiftedLemma& lifted, const GenBounds& b,
                          const CheckOptions& opts, int jobs) {
  auto instances = gen_mset_tuples(spec, b, opts, Shapes::Product);
  return run_check(lifted.stmt.name, instances.size(), jobs, [&](std::size_t i) -> CaseResult {
    const CtxTuple& gs = instances[i];
    auto universe = instance_universe(gs, b);
    for (const auto& sigma : hypothesis_bindings(lifted.stmt, gs, universe)) {
      std::string why;
      if (lifted.check(gs, sigma, &why) == LiftOutcome::Fails) {
        Bindings bs = case_bindings(lifted.stmt, gs, sigma);
        bs.emplace_back("failed step", why);
        return bs;
      }
    }
    return std::nullopt;
  });
}

}  // namespace bctx

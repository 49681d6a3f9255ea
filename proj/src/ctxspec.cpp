#include "bctx/ctxspec.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <tuple>

#include "bctx/ctx_text.hpp"
#include "bctx/errors.hpp"
#include "bctx/parallel.hpp"

namespace bctx {

// ---------------------------------------------------------------------------
// Parsing

namespace {

bool is_upper_ident(const std::string& id) { return !id.empty() && std::isupper(static_cast<unsigned char>(id[0])); }

Term row_term(const std::vector<Term>& pats) { return Term::sym("row", pats); }

std::set<std::string> pattern_vars(const Clause& c) {
  std::set<std::string> vs;
  for (const auto& p : c.patterns) collect_vars(p, vs);
  return vs;
}

Clause parse_clause(TokenStream& ts, const std::string& spec_name) {
  Clause c;
  if (ts.peek().is("nabla")) {
    ts.next();
    while (ts.peek().kind == Token::Kind::Ident) {
      Token v = ts.next();
      if (std::find(c.nabla.begin(), c.nabla.end(), v.text) != c.nabla.end())
        throw SpecError(SpecError::Kind::DuplicateNablaVar,
                        spec_name + ": nabla variable '" + v.text + "' is bound twice");
      c.nabla.push_back(v.text);
    }
  }
  ts.expect("(");
  VarPredicate is_var = [&](const std::string& id) {
    return is_upper_ident(id) || std::find(c.nabla.begin(), c.nabla.end(), id) != c.nabla.end();
  };
  c.patterns.push_back(parse_term(ts, is_var));
  while (ts.accept("_|_")) c.patterns.push_back(parse_term(ts, is_var));
  if (ts.accept("-|")) c.formula = parse_formula(ts, is_var);
  ts.expect(")");

  auto vs = pattern_vars(c);
  for (const auto& v : c.nabla)
    if (!vs.contains(v))
      throw SpecError(SpecError::Kind::UnusedNablaVar,
                      spec_name + ": nabla variable '" + v + "' does not occur in any pattern");
  std::set<std::string> fvs;
  collect_vars(c.formula, fvs);
  for (const auto& v : fvs)
    if (!vs.contains(v))
      throw SpecError(SpecError::Kind::UnboundVariable,
                      spec_name + ": formula variable '" + v + "' is not bound by the clause");
  return c;
}

void add_overlap_warnings(ContextSpec& spec) {
  for (std::size_t i = 0; i < spec.clauses.size(); ++i)
    for (std::size_t j = i + 1; j < spec.clauses.size(); ++j) {
      const Clause& a = spec.clauses[i];
      const Clause& b = spec.clauses[j];
      std::map<std::string, std::string> apart;
      for (const auto& v : pattern_vars(b)) apart[v] = v + "#";
      std::set<std::string> names_only(a.nabla.begin(), a.nabla.end());
      for (const auto& v : b.nabla) names_only.insert(v + "#");
      std::vector<Term> bs;
      for (const auto& p : b.patterns) bs.push_back(rename_vars(p, apart));
      if (unifiable(row_term(a.patterns), row_term(bs), names_only))
        spec.warnings.push_back(spec.name + ": clauses " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                                " can match the same elements");
    }
}

}  // namespace

ContextSpec parse_spec(TokenStream& ts) {
  Token kw = ts.expect_ident();
  if (kw.text != "Context") ts.fail_at(kw, "expected 'Context'");
  ContextSpec spec;
  spec.name = ts.expect_ident().text;
  for (const char* w : {"with", "elems", "as"}) {
    Token t = ts.expect_ident();
    if (t.text != w) ts.fail_at(t, std::string("expected '") + w + "'");
  }
  do {
    spec.clauses.push_back(parse_clause(ts, spec.name));
  } while (ts.accept("\\/"));
  ts.expect(".");
  spec.arity = spec.clauses.front().patterns.size();
  for (std::size_t i = 0; i < spec.clauses.size(); ++i)
    if (spec.clauses[i].patterns.size() != spec.arity)
      throw SpecError(SpecError::Kind::ArityMismatch,
                      spec.name + ": clause " + std::to_string(i + 1) + " has " +
                          std::to_string(spec.clauses[i].patterns.size()) + " patterns, expected " +
                          std::to_string(spec.arity));
  add_overlap_warnings(spec);
  return spec;
}

ContextSpec parse_spec(std::string_view text) {
  TokenStream ts(text);
  ContextSpec spec = parse_spec(ts);
  if (!ts.at_end()) ts.fail_at(ts.peek(), "unexpected input after Context command");
  return spec;
}

std::vector<ContextSpec> parse_specs(std::string_view text) {
  TokenStream ts(text);
  std::vector<ContextSpec> out;
  while (!ts.at_end()) out.push_back(parse_spec(ts));
  return out;
}

std::string to_text(const ContextSpec& spec) {
  std::string out = "Context " + spec.name + " with elems as";
  for (std::size_t i = 0; i < spec.clauses.size(); ++i) {
    const Clause& c = spec.clauses[i];
    out += i == 0 ? " " : " \\/ ";
    if (!c.nabla.empty()) {
      out += "nabla";
      for (const auto& v : c.nabla) out += " " + v;
      out += " ";
    }
    out += "(";
    for (std::size_t k = 0; k < c.patterns.size(); ++k) {
      if (k) out += " _|_ ";
      out += to_text(c.patterns[k]);
    }
    if (c.formula.kind != SideFormula::Kind::Truth) out += " -| " + to_text(c.formula);
    out += ")";
  }
  return out + ".";
}

const ContextSpec& find_spec(const std::vector<ContextSpec>& specs, std::string_view name) {
  for (const auto& s : specs)
    if (s.name == name) return s;
  throw SpecError(SpecError::Kind::UnknownContext, "unknown context specification '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Predicates

std::optional<Subst> match_row(const Clause& c, const std::vector<Term>& heads, const std::set<Name>& tail_names,
                               const CheckOptions& opts) {
  if (heads.size() != c.patterns.size()) return std::nullopt;
  Subst s;
  for (std::size_t k = 0; k < heads.size(); ++k)
    if (!match(c.patterns[k], heads[k], s)) return std::nullopt;
  std::set<Name> chosen;
  for (const auto& v : c.nabla) {
    const Term& t = s.at(v);
    if (t.kind() != Term::Kind::Nom) return std::nullopt;
    if (opts.nabla_freshness && !chosen.insert(t.name()).second) return std::nullopt;
  }
  if (opts.nabla_freshness) {
    std::set<Name> meta = tail_names;
    for (const auto& [v, t] : s)
      if (std::find(c.nabla.begin(), c.nabla.end(), v) == c.nabla.end()) collect_noms(t, meta);
    for (const auto& n : chosen)
      if (meta.contains(n)) return std::nullopt;
  }
  if (!eval(c.formula, s)) return std::nullopt;
  return s;
}

namespace {

std::set<Name> noms_of(const CtxTuple& gs) {
  std::set<Name> out;
  for (const auto& g : gs)
    for (const auto& x : elems(g)) collect_noms(x, out);
  return out;
}

std::vector<Term> distinct(const TermCtx& g) {
  auto xs = sorted_elems(g);
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

bool rows_match(const ContextSpec& spec, const std::vector<std::vector<Term>>& cols, std::size_t row,
                const std::set<Name>& tail_names, const CheckOptions& opts) {
  std::vector<Term> heads;
  for (const auto& col : cols) heads.push_back(col[row]);
  return std::any_of(spec.clauses.begin(), spec.clauses.end(),
                     [&](const Clause& c) { return match_row(c, heads, tail_names, opts).has_value(); });
}

class MsetSearch {
 public:
  MsetSearch(const ContextSpec& spec, const CheckOptions& opts) : spec_(spec), opts_(opts) {}

  // Rows are appended in order; on success `rows_` holds the witness.
  bool run(const CtxTuple& gs) {
    std::size_t n = gs.size();
    if (std::all_of(gs.begin(), gs.end(), [](const TermCtx& g) { return no_elems(g); })) return true;
    std::size_t count = gs.front().size();
    if (std::any_of(gs.begin(), gs.end(), [&](const TermCtx& g) { return g.size() != count; })) return false;

    std::vector<std::vector<Term>> cands(n);
    std::size_t pivot = 0;
    for (std::size_t k = 0; k < n; ++k) {
      cands[k] = distinct(gs[k]);
      if (cands[k].size() < cands[pivot].size()) pivot = k;
    }
    for (const Clause& c : spec_.clauses) {
      for (const Term& x : cands[pivot]) {
        Subst s;
        if (!match(c.patterns[pivot], x, s)) continue;
        std::vector<Term> heads(n);
        heads[pivot] = x;
        if (choose(c, gs, cands, pivot, 0, s, heads)) return true;
      }
    }
    return false;
  }

  std::vector<std::vector<Term>> rows_;

 private:
  bool choose(const Clause& c, const CtxTuple& gs, const std::vector<std::vector<Term>>& cands, std::size_t pivot,
              std::size_t k, const Subst& s, std::vector<Term>& heads) {
    if (k == gs.size()) return finish(c, gs, heads);
    if (k == pivot) return choose(c, gs, cands, pivot, k + 1, s, heads);
    for (const Term& y : cands[k]) {
      Subst s2 = s;
      if (!match(c.patterns[k], y, s2)) continue;
      heads[k] = y;
      if (choose(c, gs, cands, pivot, k + 1, s2, heads)) return true;
    }
    return false;
  }

  bool finish(const Clause& c, const CtxTuple& gs, const std::vector<Term>& heads) {
    CtxTuple rest;
    rest.reserve(gs.size());
    for (std::size_t k = 0; k < gs.size(); ++k) rest.push_back(select(heads[k], gs[k]).front().residual);
    if (!match_row(c, heads, noms_of(rest), opts_)) return false;
    rows_.push_back(heads);
    if (run(rest)) return true;
    rows_.pop_back();
    return false;
  }

  const ContextSpec& spec_;
  const CheckOptions& opts_;
};

}  // namespace

bool check_list_pred(const ContextSpec& spec, const CtxTuple& ls, const CheckOptions& opts) {
  if (ls.size() != spec.arity) return false;
  std::vector<std::vector<Term>> cols;
  for (const auto& l : ls) {
    if (!is_list(l)) return false;
    cols.push_back(elems(l));
  }
  std::size_t rows = cols.front().size();
  for (const auto& col : cols)
    if (col.size() != rows) return false;
  std::set<Name> tail_names;
  for (std::size_t r = rows; r-- > 0;) {
    if (!rows_match(spec, cols, r, tail_names, opts)) return false;
    for (const auto& col : cols) collect_noms(col[r], tail_names);
  }
  return true;
}

std::optional<CtxTuple> mset_witness(const ContextSpec& spec, const CtxTuple& gs, const CheckOptions& opts) {
  if (gs.size() != spec.arity) return std::nullopt;
  MsetSearch search(spec, opts);
  if (!search.run(gs)) return std::nullopt;
  CtxTuple out;
  for (std::size_t k = 0; k < spec.arity; ++k) {
    std::vector<Term> col;
    for (const auto& row : search.rows_) col.push_back(row[k]);
    out.push_back(TermCtx::list(col));
  }
  return out;
}

bool check_mset_pred(const ContextSpec& spec, const CtxTuple& gs, const CheckOptions& opts) {
  return mset_witness(spec, gs, opts).has_value();
}

// ---------------------------------------------------------------------------
// Instances

std::vector<Term> type_terms(const GenBounds& b) {
  std::vector<Term> out;
  for (const auto& t : type_universe(b.type_depth)) out.push_back(to_term(t));
  return out;
}

namespace {

using Position = std::tuple<std::string, std::size_t, std::size_t>;  // head, arity, argument

void name_positions(const Term& t, const std::set<std::string>& nabla, std::set<Position>& out) {
  if (t.kind() != Term::Kind::Sym) return;
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    const Term& a = t.args()[i];
    if (a.kind() == Term::Kind::Nom || (a.kind() == Term::Kind::Var && nabla.contains(a.label())))
      out.emplace(t.label(), t.args().size(), i);
    name_positions(a, nabla, out);
  }
}

void name_sorted(const Term& t, const std::set<Position>& pos, std::set<std::string>& out) {
  if (t.kind() != Term::Kind::Sym) return;
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    const Term& a = t.args()[i];
    if (a.kind() == Term::Kind::Var && pos.contains({t.label(), t.args().size(), i})) out.insert(a.label());
    name_sorted(a, pos, out);
  }
}

// Variables asserted to be names by the side formula.
void named_in_formula(const SideFormula& f, std::set<std::string>& out) {
  if (f.kind == SideFormula::Kind::IsName && f.lhs.kind() == Term::Kind::Var) out.insert(f.lhs.label());
  if (f.kind == SideFormula::Kind::Conj) {
    named_in_formula(*f.a, out);
    named_in_formula(*f.b, out);
  }
}

Name next_name(const std::set<Name>& avoid) {
  Name n{"n", 1};
  while (avoid.contains(n)) ++n.index;
  return n;
}

struct ClausePlan {
  const Clause* clause;
  std::vector<std::string> metas;
  std::vector<const std::vector<Term>*> domains;
};

class TupleBuilder {
 public:
  TupleBuilder(const ContextSpec& spec, const GenBounds& b, const CheckOptions& opts) : spec_(spec), opts_(opts) {
    types_ = type_terms(b);
    for (const auto& n : name_pool(b.name_pool)) names_.push_back(Term::nom(n));
    std::set<Position> pos;
    for (const auto& c : spec.clauses) {
      std::set<std::string> nabla(c.nabla.begin(), c.nabla.end());
      for (const auto& p : c.patterns) name_positions(p, nabla, pos);
    }
    for (const auto& c : spec.clauses) {
      ClausePlan plan{&c, {}, {}};
      std::set<std::string> nabla(c.nabla.begin(), c.nabla.end());
      std::set<std::string> named;
      for (const auto& p : c.patterns) name_sorted(p, pos, named);
      named_in_formula(c.formula, named);
      for (const auto& v : pattern_vars(c)) {
        if (nabla.contains(v)) continue;
        plan.metas.push_back(v);
        plan.domains.push_back(named.contains(v) ? &names_ : &types_);
      }
      plans_.push_back(std::move(plan));
    }
  }

  // Every way to put one row in front of `tail` (rows listed first to last).
  void extend(const std::vector<std::vector<Term>>& tail, std::vector<std::vector<std::vector<Term>>>& out) {
    std::set<Name> tail_names;
    for (const auto& row : tail)
      for (const auto& t : row) collect_noms(t, tail_names);
    for (const auto& plan : plans_) {
      Subst s;
      metas(plan, 0, s, tail_names, tail, out);
    }
  }

 private:
  void metas(const ClausePlan& plan, std::size_t k, Subst& s, const std::set<Name>& tail_names,
             const std::vector<std::vector<Term>>& tail, std::vector<std::vector<std::vector<Term>>>& out) {
    if (k == plan.metas.size()) {
      std::set<Name> used = tail_names;
      for (const auto& [v, t] : s) collect_noms(t, used);
      nablas(plan, 0, s, used, tail, out);
      return;
    }
    for (const Term& t : *plan.domains[k]) {
      s[plan.metas[k]] = t;
      metas(plan, k + 1, s, tail_names, tail, out);
    }
    s.erase(plan.metas[k]);
  }

  void nablas(const ClausePlan& plan, std::size_t k, Subst& s, std::set<Name>& used,
              const std::vector<std::vector<Term>>& tail, std::vector<std::vector<std::vector<Term>>>& out) {
    const Clause& c = *plan.clause;
    if (k == c.nabla.size()) {
      if (!eval(c.formula, s)) return;
      std::vector<Term> row;
      for (const auto& p : c.patterns) row.push_back(instantiate(p, s));
      std::vector<std::vector<Term>> rows;
      rows.reserve(tail.size() + 1);
      rows.push_back(std::move(row));
      rows.insert(rows.end(), tail.begin(), tail.end());
      out.push_back(std::move(rows));
      return;
    }
    std::vector<Name> choices;
    if (!opts_.nabla_freshness) choices.assign(used.begin(), used.end());
    choices.push_back(next_name(used));
    for (const Name& n : choices) {
      bool added = used.insert(n).second;
      s[c.nabla[k]] = Term::nom(n);
      nablas(plan, k + 1, s, used, tail, out);
      if (added) used.erase(n);
    }
    s.erase(c.nabla[k]);
  }

  const ContextSpec& spec_;
  const CheckOptions& opts_;
  std::vector<Term> types_;
  std::vector<Term> names_;
  std::vector<ClausePlan> plans_;
};

CtxTuple columns(const std::vector<std::vector<Term>>& rows, std::size_t arity) {
  CtxTuple out;
  for (std::size_t k = 0; k < arity; ++k) {
    std::vector<Term> col;
    for (const auto& row : rows) col.push_back(row[k]);
    out.push_back(TermCtx::list(col));
  }
  return out;
}

}  // namespace

std::vector<CtxTuple> gen_list_tuples(const ContextSpec& spec, const GenBounds& b, const CheckOptions& opts) {
  TupleBuilder builder(spec, b, opts);
  std::vector<std::vector<std::vector<Term>>> layer{{}};
  std::vector<CtxTuple> out{columns({}, spec.arity)};
  for (std::size_t r = 1; r <= b.max_ctx; ++r) {
    std::vector<std::vector<std::vector<Term>>> next;
    for (const auto& tail : layer) builder.extend(tail, next);
    for (const auto& rows : next) out.push_back(columns(rows, spec.arity));
    layer = std::move(next);
  }
  return out;
}

std::vector<CtxTuple> gen_mset_tuples(const ContextSpec& spec, const GenBounds& b, const CheckOptions& opts,
                                      Shapes shapes) {
  std::vector<CtxTuple> out;
  for (const auto& ls : gen_list_tuples(spec, b, opts)) {
    std::vector<std::vector<TermCtx>> options;
    std::size_t widest = 0;
    for (const auto& l : ls) {
      auto rs = reshapes(l);
      std::erase_if(rs, [&](const TermCtx& g) { return g.depth() > b.max_depth; });
      widest = std::max(widest, rs.size());
      options.push_back(std::move(rs));
    }
    if (shapes == Shapes::Zipped) {
      for (std::size_t k = 0; k < widest; ++k) {
        CtxTuple gs;
        for (const auto& o : options) gs.push_back(o[k % o.size()]);
        out.push_back(std::move(gs));
      }
      continue;
    }
    CtxTuple gs(ls.size());
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
      if (k == options.size()) {
        out.push_back(gs);
        return;
      }
      for (const auto& g : options[k]) {
        gs[k] = g;
        rec(k + 1);
      }
    };
    rec(0);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Distributivity

namespace {

std::string gvar(std::size_t k, const char* primes = "") { return "G" + std::to_string(k) + primes; }

}  // namespace

std::string DistrLemma::text() const {
  std::string out = "Theorem " + name + " : forall";
  for (std::size_t k = 1; k <= arity; ++k) {
    out += " " + gvar(k);
    if (k == index) out += " " + gvar(k, "'") + " " + gvar(k, "''");
  }
  auto pred = [&](const char* primes) {
    std::string s = spec;
    for (std::size_t k = 1; k <= arity; ++k) s += " " + gvar(k, primes);
    return s;
  };
  out += ", " + pred("") + " -> " + gvar(index) + " ~ " + gvar(index, "'") + " ++ " + gvar(index, "''") + " -> ";
  if (arity > 1) {
    out += "exists";
    for (std::size_t k = 1; k <= arity; ++k)
      if (k != index) out += " " + gvar(k, "'") + " " + gvar(k, "''");
    out += ", ";
  }
  out += pred("'") + " /\\ " + pred("''");
  for (std::size_t k = 1; k <= arity; ++k)
    if (k != index) out += " /\\ " + gvar(k) + " ~ " + gvar(k, "'") + " ++ " + gvar(k, "''");
  return out + ".";
}

DistrLemma gen_distr_lemma(const ContextSpec& spec, std::size_t i) {
  if (i < 1 || i > spec.arity)
    throw IndexOutOfRange(spec.name + " has no index " + std::to_string(i) + " (arity " + std::to_string(spec.arity) +
                          ")");
  return DistrLemma{spec.name + "_distr" + std::to_string(i), spec.name, spec.arity, i};
}

std::optional<DistrWitness> distr_pipeline(const ContextSpec& spec, const CtxTuple& gs, std::size_t i,
                                           const TermCtx& gi1, const TermCtx& gi2, const CheckOptions& opts,
                                           std::string* failure) {
  auto fail = [&](const char* why) -> std::optional<DistrWitness> {
    if (failure) *failure = why;
    return std::nullopt;
  };
  std::size_t at = i - 1;
  auto ls = mset_witness(spec, gs, opts);
  if (!ls) return fail("hypothesis: predicate does not hold");
  if (!perm(gs[at], TermCtx::join(gi1, gi2))) return fail("hypothesis: not a partition");
  DistrWitness w;
  w.lists = *ls;
  auto part = perm_to_part_mask((*ls)[at], gi1, gi2);
  w.to_right = part.to_right;
  for (std::size_t k = 0; k < gs.size(); ++k) {
    auto [l1, l2] = split_by_mask((*ls)[k], w.to_right);
    if (!part_to_perm((*ls)[k], l1, l2)) return fail("part_to_perm");
    if (!perm(gs[k], TermCtx::join(l1, l2))) return fail("perm transitivity");
    if (k == at) {
      if (!perm(l1, gi1) || !perm(l2, gi2)) return fail("perm_to_part");
      w.left.push_back(gi1);
      w.right.push_back(gi2);
    } else {
      w.left.push_back(l1);
      w.right.push_back(l2);
    }
  }
  CtxTuple lefts, rights;
  for (std::size_t k = 0; k < gs.size(); ++k) {
    auto [l1, l2] = split_by_mask((*ls)[k], w.to_right);
    lefts.push_back(l1);
    rights.push_back(l2);
  }
  if (!check_list_pred(spec, lefts, opts) || !check_list_pred(spec, rights, opts))
    return fail("list-level partition");
  if (!check_mset_pred(spec, w.left, opts) || !check_mset_pred(spec, w.right, opts)) return fail("conclusion");
  return w;
}

Bindings tuple_bindings(const CtxTuple& gs, const std::string& stem) {
  Bindings b;
  for (std::size_t k = 0; k < gs.size(); ++k) b.emplace_back(stem + std::to_string(k + 1), to_text(gs[k]));
  return b;
}

CheckReport check_distr(const ContextSpec& spec, std::size_t i, const GenBounds& b, const CheckOptions& opts,
                        int jobs) {
  DistrLemma lemma = gen_distr_lemma(spec, i);
  struct Case {
    std::size_t tuple;
    TermCtx left;
    TermCtx right;
  };
  auto tuples = gen_mset_tuples(spec, b, opts, Shapes::Zipped);
  std::vector<Case> cases;
  for (std::size_t t = 0; t < tuples.size(); ++t) {
    for (const auto& [a, c] : splits(tuples[t][i - 1])) {
      auto ra = reshapes(a);
      auto rc = reshapes(c);
      std::erase_if(ra, [&](const TermCtx& g) { return g.depth() > b.max_depth; });
      std::erase_if(rc, [&](const TermCtx& g) { return g.depth() > b.max_depth; });
      std::size_t widest = std::max(ra.size(), rc.size());
      for (std::size_t k = 0; k < widest; ++k) cases.push_back({t, ra[k % ra.size()], rc[k % rc.size()]});
    }
  }
  return run_check(lemma.name, cases.size(), jobs, [&](std::size_t n) -> CaseResult {
    const Case& c = cases[n];
    std::string why;
    if (distr_pipeline(spec, tuples[c.tuple], i, c.left, c.right, opts, &why)) return std::nullopt;
    Bindings bs = tuple_bindings(tuples[c.tuple]);
    bs.emplace_back(gvar(i, "'"), to_text(c.left));
    bs.emplace_back(gvar(i, "''"), to_text(c.right));
    bs.emplace_back("failed step", why);
    return bs;
  });
}

}  // namespace bctx

#include "bctx/term.hpp"

#include <algorithm>

#include "bctx/errors.hpp"

namespace bctx {

struct TermNode {
  Term::Kind kind;
  std::string label;
  Name name;
  std::vector<Term> args;
  bool ground;
};

Term Term::var(std::string label) {
  return Term(std::make_shared<const TermNode>(TermNode{Kind::Var, std::move(label), Name{}, {}, false}));
}

Term Term::nom(Name n) {
  return Term(std::make_shared<const TermNode>(TermNode{Kind::Nom, {}, std::move(n), {}, true}));
}

Term Term::sym(std::string head, std::vector<Term> args) {
  bool g = std::all_of(args.begin(), args.end(), [](const Term& t) { return t.ground(); });
  return Term(std::make_shared<const TermNode>(TermNode{Kind::Sym, std::move(head), Name{}, std::move(args), g}));
}

Term Term::arrow(Term dom, Term cod) { return sym("->", {std::move(dom), std::move(cod)}); }

Term::Term() : Term(sym("true")) {}

Term::Kind Term::kind() const { return node_->kind; }
const std::string& Term::label() const { return node_->label; }
const Name& Term::name() const { return node_->name; }
const std::vector<Term>& Term::args() const { return node_->args; }
bool Term::ground() const { return node_->ground; }
bool Term::is_arrow() const { return kind() == Kind::Sym && label() == "->" && args().size() == 2; }

int Term::compare(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return 0;
  if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
  switch (a.kind()) {
    case Kind::Var:
      return a.label().compare(b.label());
    case Kind::Nom: {
      auto c = a.name() <=> b.name();
      return c < 0 ? -1 : (c > 0 ? 1 : 0);
    }
    case Kind::Sym: {
      if (int c = a.label().compare(b.label()); c != 0) return c;
      if (a.args().size() != b.args().size()) return a.args().size() < b.args().size() ? -1 : 1;
      for (std::size_t i = 0; i < a.args().size(); ++i)
        if (int c = compare(a.args()[i], b.args()[i]); c != 0) return c;
      return 0;
    }
  }
  return 0;
}

namespace {

bool needs_parens(const Term& t) { return t.kind() == Term::Kind::Sym && !t.args().empty(); }

std::string atom_text(const Term& t) {
  std::string s = to_text(t);
  return needs_parens(t) ? "(" + s + ")" : s;
}

}  // namespace

std::string to_text(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Var:
      return t.label();
    case Term::Kind::Nom:
      return to_text(t.name());
    case Term::Kind::Sym:
      break;
  }
  if (t.is_arrow()) {
    const Term& d = t.args()[0];
    std::string dom = d.is_arrow() ? "(" + to_text(d) + ")" : to_text(d);
    return dom + " -> " + to_text(t.args()[1]);
  }
  std::string out = t.label();
  for (const auto& a : t.args()) out += " " + atom_text(a);
  return out;
}

bool match(const Term& pat, const Term& g, Subst& s) {
  switch (pat.kind()) {
    case Term::Kind::Var: {
      auto [it, inserted] = s.try_emplace(pat.label(), g);
      return inserted || it->second == g;
    }
    case Term::Kind::Nom:
      return g.kind() == Term::Kind::Nom && g.name() == pat.name();
    case Term::Kind::Sym:
      if (g.kind() != Term::Kind::Sym || g.label() != pat.label() || g.args().size() != pat.args().size())
        return false;
      for (std::size_t i = 0; i < pat.args().size(); ++i)
        if (!match(pat.args()[i], g.args()[i], s)) return false;
      return true;
  }
  return false;
}

Term instantiate(const Term& t, const Subst& s) {
  switch (t.kind()) {
    case Term::Kind::Var: {
      auto it = s.find(t.label());
      return it == s.end() ? t : it->second;
    }
    case Term::Kind::Nom:
      return t;
    case Term::Kind::Sym: {
      if (t.ground()) return t;
      std::vector<Term> args;
      args.reserve(t.args().size());
      for (const auto& a : t.args()) args.push_back(instantiate(a, s));
      return Term::sym(t.label(), std::move(args));
    }
  }
  return t;
}

namespace {

Term walk(const Term& t, const Subst& s) {
  Term cur = t;
  while (cur.kind() == Term::Kind::Var) {
    auto it = s.find(cur.label());
    if (it == s.end()) break;
    cur = it->second;
  }
  return cur;
}

bool occurs(const std::string& v, const Term& t, const Subst& s) {
  Term w = walk(t, s);
  if (w.kind() == Term::Kind::Var) return w.label() == v;
  return std::any_of(w.args().begin(), w.args().end(), [&](const Term& a) { return occurs(v, a, s); });
}

bool unify(const Term& a, const Term& b, Subst& s, const std::set<std::string>& names_only) {
  Term x = walk(a, s);
  Term y = walk(b, s);
  if (x.kind() == Term::Kind::Var && y.kind() == Term::Kind::Var && x.label() == y.label()) return true;
  auto bind = [&](const Term& v, const Term& t) {
    if (names_only.contains(v.label()) && t.kind() == Term::Kind::Sym) return false;
    if (occurs(v.label(), t, s)) return false;
    s.emplace(v.label(), t);
    return true;
  };
  if (x.kind() == Term::Kind::Var) return bind(x, y);
  if (y.kind() == Term::Kind::Var) return bind(y, x);
  if (x.kind() != y.kind()) return false;
  if (x.kind() == Term::Kind::Nom) return x.name() == y.name();
  if (x.label() != y.label() || x.args().size() != y.args().size()) return false;
  for (std::size_t i = 0; i < x.args().size(); ++i)
    if (!unify(x.args()[i], y.args()[i], s, names_only)) return false;
  return true;
}

}  // namespace

bool unifiable(const Term& a, const Term& b, const std::set<std::string>& names_only) {
  Subst s;
  return unify(a, b, s, names_only);
}

void collect_vars(const Term& t, std::set<std::string>& out) {
  if (t.kind() == Term::Kind::Var) out.insert(t.label());
  for (const auto& a : t.args()) collect_vars(a, out);
}

void collect_noms(const Term& t, std::set<Name>& out) {
  if (t.kind() == Term::Kind::Nom) out.insert(t.name());
  for (const auto& a : t.args()) collect_noms(a, out);
}

Term rename_vars(const Term& t, const std::map<std::string, std::string>& m) {
  switch (t.kind()) {
    case Term::Kind::Var: {
      auto it = m.find(t.label());
      return it == m.end() ? t : Term::var(it->second);
    }
    case Term::Kind::Nom:
      return t;
    case Term::Kind::Sym: {
      std::vector<Term> args;
      for (const auto& a : t.args()) args.push_back(rename_vars(a, m));
      return Term::sym(t.label(), std::move(args));
    }
  }
  return t;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

bool reserved(const std::string& id) {
  return id == "member" || id == "name" || id == "nabla" || id == "forall" || id == "exists" ||
         id == "true" || id == "Context" || id == "Theorem" || id == "Lemma";
}

Term ident_term(const Token& tok, const VarPredicate& is_var) {
  if (is_var(tok.text)) return Term::var(tok.text);
  if (auto n = name_from_ident(tok.text)) return Term::nom(*n);
  return Term::sym(tok.text);
}

bool starts_atom(const Token& t) {
  return t.is("(") || (t.kind == Token::Kind::Ident && !reserved(t.text));
}

}  // namespace

Term parse_atom_term(TokenStream& ts, const VarPredicate& is_var) {
  if (ts.accept("(")) {
    Term t = parse_term(ts, is_var);
    ts.expect(")");
    return t;
  }
  Token id = ts.expect_ident();
  if (reserved(id.text)) ts.fail_at(id, "expected a term");
  return ident_term(id, is_var);
}

Term parse_app_term(TokenStream& ts, const VarPredicate& is_var) {
  if (ts.peek().is("(")) return parse_atom_term(ts, is_var);
  Token id = ts.expect_ident();
  if (reserved(id.text)) ts.fail_at(id, "expected a term");
  Term head = ident_term(id, is_var);
  if (head.kind() != Term::Kind::Sym) return head;
  std::vector<Term> args;
  while (starts_atom(ts.peek())) args.push_back(parse_atom_term(ts, is_var));
  return Term::sym(head.label(), std::move(args));
}

Term parse_term(TokenStream& ts, const VarPredicate& is_var) {
  Term lhs = parse_app_term(ts, is_var);
  if (ts.accept("->")) return Term::arrow(lhs, parse_term(ts, is_var));
  return lhs;
}

Term parse_ground_elem(TokenStream& ts) {
  return parse_term(ts, [](const std::string&) { return false; });
}

Term parse_ground_term(std::string_view text) {
  TokenStream ts(text);
  Term t = parse_ground_elem(ts);
  if (!ts.at_end()) ts.fail_at(ts.peek(), "unexpected input after term");
  return t;
}

Term to_term(const Ty& t) {
  if (t.kind() == Ty::Kind::Base) return Term::sym(t.label());
  return Term::arrow(to_term(t.dom()), to_term(t.cod()));
}

Term to_term(const TyAssoc& a) { return Term::sym("ty_of", {Term::nom(a.name), to_term(a.ty)}); }

Term to_term(const VarAssoc& a) { return Term::sym("trans_to", {Term::nom(a.src), Term::nom(a.dst)}); }

// ---------------------------------------------------------------------------
// Side formulas

SideFormula SideFormula::eq(Term l, Term r) {
  SideFormula f;
  f.kind = Kind::Eq;
  f.lhs = std::move(l);
  f.rhs = std::move(r);
  return f;
}

SideFormula SideFormula::is_name(Term t) {
  SideFormula f;
  f.kind = Kind::IsName;
  f.lhs = std::move(t);
  return f;
}

SideFormula SideFormula::conj(SideFormula l, SideFormula r) {
  SideFormula f;
  f.kind = Kind::Conj;
  f.a = std::make_shared<const SideFormula>(std::move(l));
  f.b = std::make_shared<const SideFormula>(std::move(r));
  return f;
}

SideFormula SideFormula::disj(SideFormula l, SideFormula r) {
  SideFormula f = conj(std::move(l), std::move(r));
  f.kind = Kind::Disj;
  return f;
}

bool operator==(const SideFormula& x, const SideFormula& y) {
  if (x.kind != y.kind) return false;
  switch (x.kind) {
    case SideFormula::Kind::Truth:
      return true;
    case SideFormula::Kind::Eq:
      return x.lhs == y.lhs && x.rhs == y.rhs;
    case SideFormula::Kind::IsName:
      return x.lhs == y.lhs;
    case SideFormula::Kind::Conj:
    case SideFormula::Kind::Disj:
      return *x.a == *y.a && *x.b == *y.b;
  }
  return false;
}

bool eval(const SideFormula& f, const Subst& s) {
  switch (f.kind) {
    case SideFormula::Kind::Truth:
      return true;
    case SideFormula::Kind::Eq:
      return instantiate(f.lhs, s) == instantiate(f.rhs, s);
    case SideFormula::Kind::IsName:
      return instantiate(f.lhs, s).kind() == Term::Kind::Nom;
    case SideFormula::Kind::Conj:
      return eval(*f.a, s) && eval(*f.b, s);
    case SideFormula::Kind::Disj:
      return eval(*f.a, s) || eval(*f.b, s);
  }
  return false;
}

void collect_vars(const SideFormula& f, std::set<std::string>& out) {
  switch (f.kind) {
    case SideFormula::Kind::Truth:
      return;
    case SideFormula::Kind::Eq:
      collect_vars(f.rhs, out);
      [[fallthrough]];
    case SideFormula::Kind::IsName:
      collect_vars(f.lhs, out);
      return;
    case SideFormula::Kind::Conj:
    case SideFormula::Kind::Disj:
      collect_vars(*f.a, out);
      collect_vars(*f.b, out);
      return;
  }
}

SideFormula rename_vars(const SideFormula& f, const std::map<std::string, std::string>& m) {
  switch (f.kind) {
    case SideFormula::Kind::Truth:
      return f;
    case SideFormula::Kind::Eq:
      return SideFormula::eq(rename_vars(f.lhs, m), rename_vars(f.rhs, m));
    case SideFormula::Kind::IsName:
      return SideFormula::is_name(rename_vars(f.lhs, m));
    case SideFormula::Kind::Conj:
      return SideFormula::conj(rename_vars(*f.a, m), rename_vars(*f.b, m));
    case SideFormula::Kind::Disj:
      return SideFormula::disj(rename_vars(*f.a, m), rename_vars(*f.b, m));
  }
  return f;
}

namespace {

std::string formula_text(const SideFormula& f, int prec) {
  // prec: 0 top, 1 under \/, 2 under /\.
  switch (f.kind) {
    case SideFormula::Kind::Truth:
      return "true";
    case SideFormula::Kind::Eq:
      return to_text(f.lhs) + " = " + to_text(f.rhs);
    case SideFormula::Kind::IsName:
      return "name " + atom_text(f.lhs);
    case SideFormula::Kind::Conj: {
      std::string s = formula_text(*f.a, 2) + " /\\ " + formula_text(*f.b, 2);
      return prec > 2 ? "(" + s + ")" : s;
    }
    case SideFormula::Kind::Disj: {
      std::string s = formula_text(*f.a, 1) + " \\/ " + formula_text(*f.b, 1);
      return prec > 1 ? "(" + s + ")" : s;
    }
  }
  return "";
}

}  // namespace

std::string to_text(const SideFormula& f) { return formula_text(f, 0); }

SideFormula parse_formula_atom(TokenStream& ts, const VarPredicate& is_var) {
  if (ts.peek().is("true")) {
    ts.next();
    return SideFormula::truth();
  }
  if (ts.peek().is("name")) {
    ts.next();
    return SideFormula::is_name(parse_atom_term(ts, is_var));
  }
  if (ts.peek().is("(")) {
    std::size_t mark = ts.position();
    try {
      ts.next();
      SideFormula f = parse_formula(ts, is_var);
      ts.expect(")");
      if (!ts.peek().is("=")) return f;
    } catch (const SyntaxError&) {
    }
    ts.rewind(mark);
  }
  Term l = parse_term(ts, is_var);
  ts.expect("=");
  return SideFormula::eq(std::move(l), parse_term(ts, is_var));
}

namespace {

SideFormula parse_conj(TokenStream& ts, const VarPredicate& is_var) {
  SideFormula f = parse_formula_atom(ts, is_var);
  while (ts.accept("/\\")) f = SideFormula::conj(std::move(f), parse_formula_atom(ts, is_var));
  return f;
}

}  // namespace

SideFormula parse_formula(TokenStream& ts, const VarPredicate& is_var) {
  SideFormula f = parse_conj(ts, is_var);
  while (ts.accept("\\/")) f = SideFormula::disj(std::move(f), parse_conj(ts, is_var));
  return f;
}

}  // namespace bctx

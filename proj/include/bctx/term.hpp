#pragma once

// First-order terms used as context elements by schematic context
// specifications, together with patterns (terms with variables), matching,
// and the decidable side-formula fragment.

#include <compare>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "bctx/lexer.hpp"
#include "bctx/syntax.hpp"
#include "bctx/translation.hpp"
#include "bctx/typing.hpp"

namespace bctx {

struct TermNode;

/// A variable, a nominal constant, or a symbol applied to arguments. The
/// arrow type constructor is the symbol `->` with two arguments.
class Term {
 public:
  enum class Kind { Var, Nom, Sym };

  static Term var(std::string label);
  static Term nom(Name n);
  static Term sym(std::string head, std::vector<Term> args = {});
  static Term arrow(Term dom, Term cod);

  Term();  // the constant `true`, only useful as a placeholder

  Kind kind() const;
  const std::string& label() const;  // variable name or symbol head
  const Name& name() const;
  const std::vector<Term>& args() const;
  bool ground() const;
  bool is_arrow() const;

  static int compare(const Term& a, const Term& b);
  friend bool operator==(const Term& a, const Term& b) { return compare(a, b) == 0; }
  friend std::strong_ordering operator<=>(const Term& a, const Term& b) { return compare(a, b) <=> 0; }

 private:
  explicit Term(std::shared_ptr<const TermNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const TermNode> node_;
};

std::string to_text(const Term& t);

using Subst = std::map<std::string, Term>;

/// Extends `s` so that `pat` instantiated by `s` equals the ground term `g`.
/// On failure `s` may hold partial bindings.
bool match(const Term& pat, const Term& g, Subst& s);

/// Most general unifier of two patterns, treating every variable as
/// unifiable. Variables listed in `names_only` may only be bound to
/// nominal constants or variables.
bool unifiable(const Term& a, const Term& b, const std::set<std::string>& names_only = {});

Term instantiate(const Term& t, const Subst& s);
void collect_vars(const Term& t, std::set<std::string>& out);
void collect_noms(const Term& t, std::set<Name>& out);
Term rename_vars(const Term& t, const std::map<std::string, std::string>& m);

/// Decides which identifiers are variables while parsing.
using VarPredicate = std::function<bool(const std::string&)>;

/// `atom+` applications with an optional right-associative `->` tail.
Term parse_term(TokenStream& ts, const VarPredicate& is_var);
/// A single application, no top-level arrow.
Term parse_app_term(TokenStream& ts, const VarPredicate& is_var);
Term parse_atom_term(TokenStream& ts, const VarPredicate& is_var);
/// Ground terms: every identifier is a constant.
Term parse_ground_term(std::string_view text);
Term parse_ground_elem(TokenStream& ts);

Term to_term(const Ty& t);
Term to_term(const TyAssoc& a);
Term to_term(const VarAssoc& a);

/// Side formulas: `true`, `T = T`, `name T`, `/\` and `\/`.
struct SideFormula {
  enum class Kind { Truth, Eq, IsName, Conj, Disj };

  Kind kind = Kind::Truth;
  Term lhs;  // Eq, IsName
  Term rhs;  // Eq
  std::shared_ptr<const SideFormula> a;
  std::shared_ptr<const SideFormula> b;

  static SideFormula truth() { return {}; }
  static SideFormula eq(Term l, Term r);
  static SideFormula is_name(Term t);
  static SideFormula conj(SideFormula l, SideFormula r);
  static SideFormula disj(SideFormula l, SideFormula r);
};

bool operator==(const SideFormula& x, const SideFormula& y);

/// Evaluates a formula whose variables are all bound by `s`.
bool eval(const SideFormula& f, const Subst& s);
void collect_vars(const SideFormula& f, std::set<std::string>& out);
SideFormula rename_vars(const SideFormula& f, const std::map<std::string, std::string>& m);
std::string to_text(const SideFormula& f);

/// Conjunction and disjunction with the usual precedence.
SideFormula parse_formula(TokenStream& ts, const VarPredicate& is_var);
/// One conjunct: `true`, `name T`, `T = T`, or a parenthesized formula.
SideFormula parse_formula_atom(TokenStream& ts, const VarPredicate& is_var);

}  // namespace bctx

#pragma once

// Member-based lemmas over context specifications: the statement form,
// lifting from list form to multiset form, and bounded verification.

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bctx/ctxspec.hpp"

namespace bctx {

/// `member TERM Ci`, with `ctx` the 0-based index of Ci.
struct MemberAtom {
  Term elem;
  std::size_t ctx = 0;

  bool operator==(const MemberAtom&) const = default;
};

enum class Level { List, Mset };

/// forall C1..Cn V*, PRED C1..Cn -> [member TERM Ci ->]*
///   [exists V*,] [member TERM Cj /\]* [FORMULA /\]* [TERM = TERM /\]* true
struct LemmaStmt {
  std::string name;
  std::string spec;
  Level level = Level::List;
  std::vector<std::string> ctx_vars;
  std::vector<std::string> forall_vars;  // excluding the context variables
  std::vector<MemberAtom> hyps;
  std::vector<std::string> exist_vars;
  std::vector<MemberAtom> concl_members;
  std::vector<SideFormula> concl_formulas;
  std::vector<std::pair<Term, Term>> concl_eqs;

  /// Name of the hypothesis predicate: `spec_list` or `spec`.
  std::string pred() const { return level == Level::List ? spec + "_list" : spec; }
};

LemmaStmt parse_lemma(TokenStream& ts, const std::vector<ContextSpec>& specs);
LemmaStmt parse_lemma(std::string_view text, const std::vector<ContextSpec>& specs);
std::vector<LemmaStmt> parse_lemmas(std::string_view text, const std::vector<ContextSpec>& specs);
std::string to_text(const LemmaStmt& s);

/// Equal up to the lemma name and a consistent renaming of bound variables.
bool same_shape(const LemmaStmt& a, const LemmaStmt& b);

/// Throws SpecError(ShapeViolation) unless the statement fits the schema:
/// context variables occur only as predicate and `member` arguments.
void check_shape(const LemmaStmt& s, const ContextSpec& spec);

enum class LiftOutcome {
  Vacuous,  // the multiset predicate does not hold
  Holds,
  Fails,
};

struct LiftedLemma {
  LemmaStmt stmt;
  /// The generated proof, run on one instance: the contexts and a binding of
  /// the universally quantified variables that makes every member
  /// hypothesis true. `why` receives the failing step.
  std::function<LiftOutcome(const CtxTuple& gs, const Subst& sigma, std::string* why)> check;
};

/// Multiset form of a list-form lemma together with the three-step checker:
/// unfold the predicate and move member hypotheses onto the lists, apply the
/// list-form statement, move member conclusions back along the same
/// permutations.
LiftedLemma lift_lemma(const ContextSpec& spec, const LemmaStmt& stmt, const CheckOptions& opts = {});

/// Bounded-exhaustive check: every generated instance of the hypothesis
/// predicate, every assignment making the member hypotheses true, and a
/// finite search for the existential witnesses.
CheckReport verify_lemma(const ContextSpec& spec, const LemmaStmt& stmt, const GenBounds& b,
                         const CheckOptions& opts = {}, int jobs = 1);

/// Runs the lifted checker over the multiset instances.
CheckReport verify_lifted(const ContextSpec& spec, const LiftedLemma& lifted, const GenBounds& b,
                          const CheckOptions& opts = {}, int jobs = 1);

/// Searches for existential witnesses of the conclusion under `sigma`.
std::optional<Subst> conclusion_witness(const LemmaStmt& stmt, const CtxTuple& ctxs, const Subst& sigma,
                                        const std::vector<Term>& universe);

/// Every extension of `sigma` making all member hypotheses true, with the
/// remaining universal variables drawn from `universe`.
std::vector<Subst> hypothesis_bindings(const LemmaStmt& stmt, const CtxTuple& ctxs,
                                       const std::vector<Term>& universe);

/// Types up to the bound, the names occurring in `ctxs` and one fresh name.
std::vector<Term> instance_universe(const CtxTuple& ctxs, const GenBounds& b);

}  // namespace bctx

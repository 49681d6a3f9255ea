#pragma once

// A store of checked facts and the three derivation steps that extend it:
// transporting a membership along a permutation, distributing a context
// predicate over a partition, and lifting a list-form lemma.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "bctx/ctxspec.hpp"
#include "bctx/lemma.hpp"

namespace bctx {

struct Fact {
  enum class Kind {
    Perm,    // ctxs = {G, G'}:  G ~ G'
    Member,  // ctxs = {G}, elem:  member X G
    Pred,    // ctxs = Gs, spec:  NAME G1 .. Gn
    Lemma,   // lemma: a verified multiset-form statement
  };

  Kind kind;
  CtxTuple ctxs;
  Term elem;
  std::string spec;
  std::optional<LemmaStmt> lemma;

  std::string text() const;
};

class DerivationStore {
 public:
  explicit DerivationStore(std::vector<ContextSpec> specs, GenBounds bounds = {}, CheckOptions opts = {},
                           int jobs = 1);

  /// Each assumption is checked before it is stored.
  std::size_t assume_perm(const TermCtx& g, const TermCtx& g2);
  std::size_t assume_member(const Term& x, const TermCtx& g);
  std::size_t assume_pred(const std::string& spec, const CtxTuple& gs);

  /// `subst Hi into Hj`: member X G and G ~ G' (either orientation) give
  /// member X G'.
  std::size_t derive_subst(std::size_t perm_fact, std::size_t member_fact);

  /// `distr Hi over Hj`: a predicate fact and `G ~ G' ++ G''` with G one of
  /// its contexts give both halves of the predicate and a partition of
  /// every other context.
  std::vector<std::size_t> derive_distr(std::size_t pred_fact, std::size_t part_fact);

  /// `lift LEMMA`: verifies the list-form lemma, lifts it and verifies the
  /// lifted checker, then records the multiset-form statement. Throws
  /// VerificationFailure with the counterexample if either check fails.
  std::size_t derive_lift(const std::string& spec, const LemmaStmt& list_stmt);

  const Fact& fact(std::size_t i) const { return facts_.at(i); }
  std::size_t size() const { return facts_.size(); }

 private:
  std::size_t add(Fact f);
  const Fact& expect(std::size_t i, Fact::Kind kind, const char* what) const;

  std::vector<ContextSpec> specs_;
  GenBounds bounds_;
  CheckOptions opts_;
  int jobs_;
  std::vector<Fact> facts_;
};

}  // namespace bctx

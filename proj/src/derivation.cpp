#include "bctx/derivation.hpp"

#include "bctx/ctx_text.hpp"
#include "bctx/errors.hpp"

namespace bctx {

std::string Fact::text() const {
  switch (kind) {
    case Kind::Perm:
      return to_text(ctxs[0]) + " ~ " + to_text(ctxs[1]);
    case Kind::Member: {
      std::string e = to_text(elem);
      if (e.find(' ') != std::string::npos) e = "(" + e + ")";
      return "member " + e + " (" + to_text(ctxs[0]) + ")";
    }
    case Kind::Pred: {
      std::string out = spec;
      for (const auto& g : ctxs) out += " (" + to_text(g) + ")";
      return out;
    }
    case Kind::Lemma:
      return to_text(*lemma);
  }
  return "";
}

DerivationStore::DerivationStore(std::vector<ContextSpec> specs, GenBounds bounds, CheckOptions opts, int jobs)
    : specs_(std::move(specs)), bounds_(bounds), opts_(opts), jobs_(jobs) {}

std::size_t DerivationStore::add(Fact f) {
  facts_.push_back(std::move(f));
  return facts_.size() - 1;
}

const Fact& DerivationStore::expect(std::size_t i, Fact::Kind kind, const char* what) const {
  if (i >= facts_.size()) throw ShapeMismatch("no fact H" + std::to_string(i));
  if (facts_[i].kind != kind) throw ShapeMismatch("H" + std::to_string(i) + " is not " + what);
  return facts_[i];
}

std::size_t DerivationStore::assume_perm(const TermCtx& g, const TermCtx& g2) {
  if (!perm(g, g2)) throw PreconditionViolated("not a permutation: " + to_text(g) + " ~ " + to_text(g2));
  return add({Fact::Kind::Perm, {g, g2}, Term(), "", std::nullopt});
}

std::size_t DerivationStore::assume_member(const Term& x, const TermCtx& g) {
  if (!member(x, g)) throw PreconditionViolated(to_text(x) + " is not a member of " + to_text(g));
  return add({Fact::Kind::Member, {g}, x, "", std::nullopt});
}

std::size_t DerivationStore::assume_pred(const std::string& spec, const CtxTuple& gs) {
  if (!check_mset_pred(find_spec(specs_, spec), gs, opts_))
    throw PreconditionViolated(spec + " does not hold of " + to_text(tuple_bindings(gs)));
  return add({Fact::Kind::Pred, gs, Term(), spec, std::nullopt});
}

std::size_t DerivationStore::derive_subst(std::size_t perm_fact, std::size_t member_fact) {
  const Fact p = expect(perm_fact, Fact::Kind::Perm, "a permutation");
  const Fact m = expect(member_fact, Fact::Kind::Member, "a membership");
  const TermCtx* target = nullptr;
  if (m.ctxs[0] == p.ctxs[0])
    target = &p.ctxs[1];
  else if (m.ctxs[0] == p.ctxs[1])
    target = &p.ctxs[0];
  else
    throw ShapeMismatch("the membership context is not related by the permutation");
  if (!mem_transport(m.elem, m.ctxs[0], *target)) throw std::logic_error("membership was not preserved");
  return add({Fact::Kind::Member, {*target}, m.elem, "", std::nullopt});
}

std::vector<std::size_t> DerivationStore::derive_distr(std::size_t pred_fact, std::size_t part_fact) {
  const Fact c = expect(pred_fact, Fact::Kind::Pred, "a context predicate");
  const Fact p = expect(part_fact, Fact::Kind::Perm, "a permutation");
  const TermCtx& whole = p.ctxs[0];
  const TermCtx& parts = p.ctxs[1];
  if (parts.kind() != TermCtx::Kind::Union) throw ShapeMismatch("the permutation is not a partition G ~ G' ++ G''");
  std::size_t index = 0;
  for (std::size_t k = 0; k < c.ctxs.size() && index == 0; ++k)
    if (c.ctxs[k] == whole) index = k + 1;
  if (index == 0) throw ShapeMismatch("the partitioned context is not an argument of " + c.spec);
  const ContextSpec& spec = find_spec(specs_, c.spec);
  std::string why;
  auto w = distr_pipeline(spec, c.ctxs, index, parts.left(), parts.right(), opts_, &why);
  if (!w) throw VerificationFailure(gen_distr_lemma(spec, index).name, why);
  std::vector<std::size_t> out;
  out.push_back(add({Fact::Kind::Pred, w->left, Term(), c.spec, std::nullopt}));
  out.push_back(add({Fact::Kind::Pred, w->right, Term(), c.spec, std::nullopt}));
  for (std::size_t k = 0; k < c.ctxs.size(); ++k) {
    if (k + 1 == index) continue;
    out.push_back(add({Fact::Kind::Perm, {c.ctxs[k], TermCtx::join(w->left[k], w->right[k])}, Term(), "",
                       std::nullopt}));
  }
  return out;
}

std::size_t DerivationStore::derive_lift(const std::string& spec_name, const LemmaStmt& list_stmt) {
  const ContextSpec& spec = find_spec(specs_, spec_name);
  CheckReport base = verify_lemma(spec, list_stmt, bounds_, opts_, jobs_);
  if (!base.pass) throw VerificationFailure(list_stmt.name, to_text(*base.counterexample));
  LiftedLemma lifted = lift_lemma(spec, list_stmt, opts_);
  CheckReport r = verify_lifted(spec, lifted, bounds_, opts_, jobs_);
  if (!r.pass) throw VerificationFailure(lifted.stmt.name, to_text(*r.counterexample));
  return add({Fact::Kind::Lemma, {}, Term(), spec_name, lifted.stmt});
}

}  // namespace bctx

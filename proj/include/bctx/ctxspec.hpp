#pragma once

// Schematic context specifications. A `Context` command describes the rows
// of one or several coordinated contexts; from it we derive the list-form
// predicate, its multiset lifting, instance generators and the
// distributivity checks.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bctx/ctx.hpp"
#include "bctx/gen.hpp"
#include "bctx/report.hpp"
#include "bctx/term.hpp"

namespace bctx {

using TermCtx = Ctx<Term>;
using CtxTuple = std::vector<TermCtx>;

struct CheckOptions {
  /// Nabla variables must be instantiated by pairwise distinct names that do
  /// not occur in the metavariable substitution or in the tails. Turning this
  /// off only exists to show that the membership lemmas depend on it.
  bool nabla_freshness = true;
};

struct Clause {
  std::vector<std::string> nabla;
  std::vector<Term> patterns;
  SideFormula formula;
};

struct ContextSpec {
  std::string name;
  std::size_t arity = 0;
  std::vector<Clause> clauses;
  std::vector<std::string> warnings;  // e.g. overlapping clauses
};

/// Parses a single `Context` command.
ContextSpec parse_spec(std::string_view text);
/// Parses every `Context` command in a file.
std::vector<ContextSpec> parse_specs(std::string_view text);
ContextSpec parse_spec(TokenStream& ts);
std::string to_text(const ContextSpec& spec);

const ContextSpec& find_spec(const std::vector<ContextSpec>& specs, std::string_view name);

/// Tests one row of heads against a clause. `tail_names` are the names
/// occurring in the rest of the row's contexts.
std::optional<Subst> match_row(const Clause& c, const std::vector<Term>& heads,
                               const std::set<Name>& tail_names, const CheckOptions& opts);

/// The generated list predicate, `NAME_list L1 ... Ln`.
bool check_list_pred(const ContextSpec& spec, const CtxTuple& ls, const CheckOptions& opts = {});

/// Lists `L1 .. Ln` with `Gi ~ Li` and the list predicate holding, when they
/// exist.
std::optional<CtxTuple> mset_witness(const ContextSpec& spec, const CtxTuple& gs, const CheckOptions& opts = {});

/// The generated multiset predicate, `NAME G1 ... Gn`.
bool check_mset_pred(const ContextSpec& spec, const CtxTuple& gs, const CheckOptions& opts = {});

// ---------------------------------------------------------------------------
// Instances

/// Values a metavariable may take: names for variables that sit where a
/// nabla variable sits in some pattern, types otherwise.
std::vector<Term> type_terms(const GenBounds& b);

/// Every list tuple satisfying the list predicate with at most
/// `b.max_ctx` rows, built row by row from the clauses. Nabla variables get
/// canonical fresh names; without freshness they may also reuse names.
std::vector<CtxTuple> gen_list_tuples(const ContextSpec& spec, const GenBounds& b, const CheckOptions& opts = {});

enum class Shapes {
  Product,  // every combination of per-context reshapes
  Zipped,   // the k-th reshape of every context together
};

/// Multiset-shaped instances: reshapes of the generated list tuples, up to
/// union depth `b.max_depth`.
std::vector<CtxTuple> gen_mset_tuples(const ContextSpec& spec, const GenBounds& b, const CheckOptions& opts,
                                      Shapes shapes);

// ---------------------------------------------------------------------------
// Distributivity

struct DistrLemma {
  std::string name;  // NAME_distrI
  std::string spec;
  std::size_t arity = 0;
  std::size_t index = 0;  // 1-based

  std::string text() const;
};

DistrLemma gen_distr_lemma(const ContextSpec& spec, std::size_t i);

/// Witnesses for one distributivity instance.
struct DistrWitness {
  CtxTuple lists;   // Li with Gi ~ Li
  std::vector<bool> to_right;
  CtxTuple left;    // G1' .. Gn' (Gi' is the given one)
  CtxTuple right;   // G1'' .. Gn''
};

/// Runs the constructive proof for `Gi ~ gi1 ++ gi2`: lists from the
/// multiset predicate, `perm_to_part` on index i, the same positions cut out
/// of every other list, `part_to_perm` back. Returns nullopt and sets
/// `failure` when a step does not go through.
std::optional<DistrWitness> distr_pipeline(const ContextSpec& spec, const CtxTuple& gs, std::size_t i,
                                           const TermCtx& gi1, const TermCtx& gi2, const CheckOptions& opts,
                                           std::string* failure = nullptr);

CheckReport check_distr(const ContextSpec& spec, std::size_t i, const GenBounds& b, const CheckOptions& opts = {},
                        int jobs = 1);

Bindings tuple_bindings(const CtxTuple& gs, const std::string& stem = "G");

}  // namespace bctx

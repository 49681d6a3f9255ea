#pragma once

// Built-in bounded-exhaustive lemma suites. Each returns one report per
// lemma, sorted by name.

#include <vector>

#include "bctx/ctxspec.hpp"
#include "bctx/gen.hpp"
#include "bctx/lemma.hpp"
#include "bctx/report.hpp"

namespace bctx {

/// Contexts of up to 4 elements over a 2-element pool, depth up to 3.
GenBounds core_bounds();
/// Up to 3 assumptions, types of depth 2, terms of size 4.
GenBounds typing_bounds();
/// Up to 2 assumptions, terms of size 4.
GenBounds oracle_bounds();
/// Triples of up to 3 rows, source terms of size 5.
GenBounds translation_bounds();

/// Generic context lemmas over single-letter elements.
std::vector<CheckReport> core_suite(const GenBounds& b, int jobs = 1);

/// Typing-context lemmas and the uniqueness of inferred types.
std::vector<CheckReport> typing_suite(const GenBounds& b, int jobs = 1);

/// Relational linear typing against the leftover checkers, plus the
/// permutation invariance of the relational forms.
std::vector<CheckReport> oracle_suite(const GenBounds& b, int jobs = 1);

/// trans_rel lemmas, translation soundness and type preservation.
std::vector<CheckReport> translation_suite(const GenBounds& b, int jobs = 1);

/// The predicates elaborated from `ty_ctx'` and `trans_rel` specs against the
/// hand-written ones. Specs with other names are ignored.
std::vector<CheckReport> fidelity_suite(const std::vector<ContextSpec>& specs, const GenBounds& b, int jobs = 1);

/// Distributivity for every index of every spec, then each lemma at list
/// level and lifted. With `list_only` just the list-level lemma checks run.
std::vector<CheckReport> spec_suite(const std::vector<ContextSpec>& specs, const std::vector<LemmaStmt>& lemmas,
                                    const GenBounds& b, const CheckOptions& opts = {}, int jobs = 1,
                                    bool list_only = false);

}  // namespace bctx

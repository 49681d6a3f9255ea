#pragma once

// Type assignment for the simply typed lambda calculus, its linear variant
// and mini linear ML (linear plus `let`). Each system has a relational
// reading that follows the defining clauses literally; the linear systems
// also have an algorithmic checker that threads a leftover context.

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bctx/ctx.hpp"
#include "bctx/lexer.hpp"
#include "bctx/syntax.hpp"

namespace bctx {

/// `ty_of n T`.
struct TyAssoc {
  Name name;
  Ty ty;

  auto operator<=>(const TyAssoc&) const = default;
  bool operator==(const TyAssoc&) const = default;
};

using TyCtx = Ctx<TyAssoc>;

std::string to_text(const TyAssoc& a);
TyAssoc parse_ty_assoc(TokenStream& ts);
TyCtx parse_ty_ctx(std::string_view text);

std::set<Name> names(const TyCtx& g);

// ---------------------------------------------------------------------------
// Intuitionistic system

/// The type assigned by the first matching assumption. Requires a list-form
/// context.
std::optional<Ty> type_of_infer(const TyCtx& l, const Tm& e);

/// Every type derivable for `e` under `l` (any matching assumption may be
/// used for a variable).
std::vector<Ty> type_of_all(const TyCtx& l, const Tm& e);

/// Name-distinctness of a list of assumptions: each head's name is absent
/// from its tail.
bool ty_ctx_list(const TyCtx& l);

/// ty_ctx on some list permutation of `g`, decided on the flattening.
bool ty_ctx_mset(const TyCtx& g);

// ---------------------------------------------------------------------------
// Linear systems

/// What an algorithmic check leaves behind: the unconsumed assumptions (list
/// form) and the names consumed along the way.
struct Leftover {
  TyCtx remaining;
  std::set<Name> used;
};

struct LinearResult {
  Ty ty;
  Leftover leftover;
};

/// All T with `ltype_of G e T` derivable. Application splits range over
/// `splits(G)`.
std::vector<Ty> ltype_types(const TyCtx& g, const Tm& e);
bool ltype_rel(const TyCtx& g, const Tm& e, const Ty& t);

/// Same, with the `let` clause of mini linear ML.
std::vector<Ty> mltype_types(const TyCtx& g, const Tm& e);
bool mltype_rel(const TyCtx& g, const Tm& e, const Ty& t);

/// Leftover-threading checker. Requires a list-form context with distinct
/// names. Success does not imply the leftover is empty; see `*_top`.
std::optional<LinearResult> ltype_check(const TyCtx& g, const Tm& e);
std::optional<LinearResult> mltype_check(const TyCtx& g, const Tm& e);

/// Top-level linear typing: the check succeeds and consumes everything.
std::optional<Ty> ltype_check_top(const TyCtx& g, const Tm& e);
std::optional<Ty> mltype_check_top(const TyCtx& g, const Tm& e);

}  // namespace bctx

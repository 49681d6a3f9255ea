#pragma once

// Let-elimination from mini linear ML into the linear lambda calculus, and
// the three-context relation that coordinates a source typing context, a
// translation context and a target typing context.

#include <array>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bctx/ctx.hpp"
#include "bctx/syntax.hpp"
#include "bctx/typing.hpp"

namespace bctx {

/// `trans_to x y`.
struct VarAssoc {
  Name src;
  Name dst;

  auto operator<=>(const VarAssoc&) const = default;
  bool operator==(const VarAssoc&) const = default;
};

using VarCtx = Ctx<VarAssoc>;

std::string to_text(const VarAssoc& a);
VarAssoc parse_var_assoc(TokenStream& ts);
VarCtx parse_var_ctx(std::string_view text);
std::set<Name> names(const VarCtx& g);

/// Literal check of the translation relation. Application and `let` splits
/// range over `splits(G)`.
bool ltrans_rel(const VarCtx& g, const Tm& e, const Tm& e2);

/// Every `e2` with `ltrans_rel(g, e, e2)`.
std::vector<Tm> ltrans_image(const VarCtx& g, const Tm& e);

/// Functional translation. `g` must be a list whose source names cover the
/// free names of `e`; every source name, and every bound variable, must be
/// used exactly once. Throws TranslationError otherwise.
Tm translate(const VarCtx& g, const Tm& e);

bool trans_rel_list(const TyCtx& l1, const VarCtx& l2, const TyCtx& l3);

/// Aligned list forms witnessing `trans_rel`, when they exist.
struct TransRelLists {
  TyCtx l1;
  VarCtx l2;
  TyCtx l3;
};

std::optional<TransRelLists> trans_rel_witness(const TyCtx& g1, const VarCtx& g2, const TyCtx& g3);

/// `trans_rel_list` on some list permutations of the three contexts, found by
/// aligning each translation entry with its partners by name.
bool trans_rel_mset(const TyCtx& g1, const VarCtx& g2, const TyCtx& g3);

}  // namespace bctx

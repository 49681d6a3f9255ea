#pragma once

// Line-oriented input files for the command-line checker and translator.
//
//   judgment    ::= [CTX] "|-" TERM [":" TYPE] "=>" ("yes" | "no")
//   translation ::= [CTX "|-"] TERM ["~>" TERM]
//
// A missing context is `nil`. Without a type, a judgment asks whether the
// term has any type.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bctx/translation.hpp"
#include "bctx/typing.hpp"

namespace bctx {

enum class System { Stlc, Linear, Ml };

struct Judgment {
  std::size_t line = 0;
  std::string text;  // the line without its expected verdict
  TyCtx ctx;
  Tm term;
  std::optional<Ty> ty;
  bool expected = true;
};

struct TranslationItem {
  std::size_t line = 0;
  VarCtx ctx;
  Tm src;
  std::optional<Tm> expected;
};

/// Throws SyntaxError carrying the file line of the offending token.
std::vector<Judgment> parse_judgments(std::string_view text);
std::vector<TranslationItem> parse_translations(std::string_view text);

/// Relational by default; `algo` selects type_of_infer or the leftover
/// checkers.
bool decide(System sys, bool algo, const TyCtx& g, const Tm& e, const std::optional<Ty>& ty);

}  // namespace bctx

#include "bctx/judgment.hpp"

#include <algorithm>
#include <map>

#include "bctx/ctx_text.hpp"
#include "bctx/errors.hpp"

namespace bctx {

namespace {

/// Tokens of the whole file grouped by source line.
std::map<std::size_t, std::vector<Token>> lines_of(std::string_view text) {
  std::map<std::size_t, std::vector<Token>> out;
  for (auto& t : tokenize(text))
    if (t.kind != Token::Kind::End) out[t.line].push_back(std::move(t));
  return out;
}

bool has_symbol(const std::vector<Token>& toks, std::string_view sym) {
  return std::any_of(toks.begin(), toks.end(),
                     [&](const Token& t) { return t.kind == Token::Kind::Symbol && t.text == sym; });
}

TokenStream stream(std::vector<Token> toks) {
  Token end;
  if (!toks.empty()) {
    end.line = toks.back().line;
    end.column = toks.back().column + toks.back().text.size();
  }
  toks.push_back(end);
  return TokenStream(std::move(toks));
}

std::set<Name> dst_names(const VarCtx& g) {
  std::set<Name> out;
  for (const auto& a : elems(g)) out.insert(a.dst);
  return out;
}

}  // namespace

std::vector<Judgment> parse_judgments(std::string_view text) {
  std::vector<Judgment> out;
  for (auto& [line, toks] : lines_of(text)) {
    TokenStream ts = stream(toks);
    TyCtx ctx;
    if (!ts.peek().is("|-")) ctx = parse_ctx<TyAssoc>(ts, parse_ty_assoc);
    ts.expect("|-");
    Judgment j{line, "", ctx, parse_term(ts, names(ctx)), std::nullopt, true};
    if (ts.accept(":")) j.ty = parse_type(ts);
    ts.expect("=>");
    Token v = ts.expect_ident();
    if (v.text != "yes" && v.text != "no") ts.fail_at(v, "expected 'yes' or 'no'");
    j.expected = v.text == "yes";
    if (!ts.at_end()) ts.fail("trailing input after verdict");
    j.text = to_text(j.ctx) + " |- " + print_term(j.term);
    if (j.ty) j.text += " : " + to_text(*j.ty);
    out.push_back(std::move(j));
  }
  return out;
}

std::vector<TranslationItem> parse_translations(std::string_view text) {
  std::vector<TranslationItem> out;
  for (auto& [line, toks] : lines_of(text)) {
    bool with_ctx = has_symbol(toks, "|-");
    TokenStream ts = stream(toks);
    VarCtx ctx;
    if (with_ctx) {
      ctx = parse_ctx<VarAssoc>(ts, parse_var_assoc);
      ts.expect("|-");
    }
    TranslationItem item{line, ctx, parse_term(ts, names(ctx)), std::nullopt};
    if (ts.accept("~>")) item.expected = parse_term(ts, dst_names(item.ctx));
    if (!ts.at_end()) ts.fail("trailing input after term");
    out.push_back(std::move(item));
  }
  return out;
}

bool decide(System sys, bool algo, const TyCtx& g, const Tm& e, const std::optional<Ty>& ty) {
  if (algo) {
    std::optional<Ty> got;
    switch (sys) {
      case System::Stlc:
        got = type_of_infer(g, e);
        break;
      case System::Linear:
        got = ltype_check_top(g, e);
        break;
      case System::Ml:
        got = mltype_check_top(g, e);
        break;
    }
    return ty ? (got && *got == *ty) : got.has_value();
  }
  std::vector<Ty> all;
  switch (sys) {
    case System::Stlc:
      all = type_of_all(g, e);
      break;
    case System::Linear:
      all = ltype_types(g, e);
      break;
    case System::Ml:
      all = mltype_types(g, e);
      break;
  }
  return ty ? std::find(all.begin(), all.end(), *ty) != all.end() : !all.empty();
}

}  // namespace bctx

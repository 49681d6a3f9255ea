#pragma once

// Surface syntax for contexts: `nil`, `X :: G`, `G1 ++ G2` and the list sugar
// `[a, b, c]`. `::` is right-associative and binds tighter than `++`, which
// associates to the left.

#include <functional>
#include <string>
#include <string_view>

#include "bctx/ctx.hpp"
#include "bctx/lexer.hpp"

namespace bctx {

inline std::string to_text(char c) { return std::string(1, c); }

namespace detail {

template <class E>
std::string elem_text(const E& x) {
  std::string s = to_text(x);
  if (s.find(' ') != std::string::npos) return "(" + s + ")";
  return s;
}

template <class E>
std::string ctx_text(const Ctx<E>& g, bool in_union_rhs) {
  using K = typename Ctx<E>::Kind;
  if (g.kind() == K::Empty) return "nil";
  if (is_list(g)) {
    std::string s = "[";
    bool first = true;
    for (const auto& x : elems(g)) {
      if (!first) s += ", ";
      s += to_text(x);
      first = false;
    }
    return s + "]";
  }
  if (g.kind() == K::Cons) {
    const auto& t = g.tail();
    std::string tail = ctx_text(t, false);
    if (t.kind() == K::Union) tail = "(" + tail + ")";
    return elem_text(g.head()) + " :: " + tail;
  }
  std::string s = ctx_text(g.left(), false) + " ++ " + ctx_text(g.right(), true);
  return in_union_rhs ? "(" + s + ")" : s;
}

}  // namespace detail

template <ContextElement E>
std::string to_text(const Ctx<E>& g) {
  return detail::ctx_text(g, false);
}

template <ContextElement E>
using ElemParser = std::function<E(TokenStream&)>;

namespace detail {

template <ContextElement E>
Ctx<E> parse_ctx_union(TokenStream& ts, const ElemParser<E>& elem);

template <ContextElement E>
Ctx<E> parse_ctx_cons(TokenStream& ts, const ElemParser<E>& elem) {
  const Token& t = ts.peek();
  if (t.is("nil")) {
    ts.next();
    return Ctx<E>();
  }
  if (t.is("[")) {
    ts.next();
    std::vector<E> xs;
    if (!ts.accept("]")) {
      do {
        xs.push_back(elem(ts));
      } while (ts.accept(","));
      ts.expect("]");
    }
    return Ctx<E>::list(xs);
  }
  std::size_t mark = ts.position();
  std::optional<E> head;
  try {
    head = elem(ts);
  } catch (const SyntaxError&) {
    head.reset();
  }
  if (head && ts.accept("::")) return Ctx<E>::cons(*head, parse_ctx_cons(ts, elem));
  ts.rewind(mark);
  if (ts.accept("(")) {
    Ctx<E> inner = parse_ctx_union(ts, elem);
    ts.expect(")");
    return inner;
  }
  ts.fail("expected a context");
}

template <ContextElement E>
Ctx<E> parse_ctx_union(TokenStream& ts, const ElemParser<E>& elem) {
  Ctx<E> g = parse_ctx_cons(ts, elem);
  while (ts.accept("++")) g = Ctx<E>::join(g, parse_ctx_cons(ts, elem));
  return g;
}

}  // namespace detail

/// Parses one context from the stream, leaving the cursor after it.
template <ContextElement E>
Ctx<E> parse_ctx(TokenStream& ts, const ElemParser<E>& elem) {
  return detail::parse_ctx_union(ts, elem);
}

template <ContextElement E>
Ctx<E> parse_ctx(std::string_view text, const ElemParser<E>& elem) {
  TokenStream ts(text);
  Ctx<E> g = parse_ctx(ts, elem);
  if (!ts.at_end()) ts.fail("trailing input after context");
  return g;
}

/// Single-letter atoms, used by the generic tests and the core suite.
inline char parse_char_elem(TokenStream& ts) {
  Token t = ts.expect_ident();
  if (t.text.size() != 1) ts.fail_at(t, "expected a one-letter element");
  return t.text[0];
}

}  // namespace bctx

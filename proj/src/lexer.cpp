#include "bctx/lexer.hpp"

#include <array>
#include <cctype>

#include "bctx/errors.hpp"

namespace bctx {

namespace {

// Longest symbols first so that prefixes never win.
constexpr std::array<std::string_view, 22> kSymbols = {
    "_|_", "::", "++", "->", "|-", "-|", "~>", "=>", "\\/", "/\\", "\\",
    "(",   ")",  "[",  "]",  ",",  ".",  "=",  ":",  "~",   "|",  "-"};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t line = 1;
  std::size_t col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '%' || c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    Token tok;
    tok.line = line;
    tok.column = col;
    bool matched = false;
    for (auto sym : kSymbols) {
      if (text.substr(i, sym.size()) == sym) {
        tok.kind = Token::Kind::Symbol;
        tok.text = std::string(sym);
        advance(sym.size());
        matched = true;
        break;
      }
    }
    if (!matched) {
      if (!ident_start(c)) throw SyntaxError(std::string("unexpected character '") + c + "'", line, col);
      std::size_t j = i;
      while (j < text.size() && ident_char(text[j])) ++j;
      tok.kind = Token::Kind::Ident;
      tok.text = std::string(text.substr(i, j - i));
      advance(j - i);
    }
    out.push_back(std::move(tok));
  }
  Token end;
  end.line = line;
  end.column = col;
  out.push_back(end);
  return out;
}

TokenStream::TokenStream(std::string_view text) : toks_(tokenize(text)) {}

TokenStream::TokenStream(std::vector<Token> tokens) : toks_(std::move(tokens)) {
  if (toks_.empty() || toks_.back().kind != Token::Kind::End) toks_.push_back(Token{});
}

const Token& TokenStream::peek(std::size_t ahead) const {
  std::size_t k = pos_ + ahead;
  return k < toks_.size() ? toks_[k] : toks_.back();
}

Token TokenStream::next() {
  Token t = peek();
  if (pos_ + 1 < toks_.size()) ++pos_;
  return t;
}

bool TokenStream::accept(std::string_view sym) {
  if (peek().kind == Token::Kind::Symbol && peek().text == sym) {
    next();
    return true;
  }
  return false;
}

Token TokenStream::expect(std::string_view sym) {
  const Token& t = peek();
  if (!t.is(sym)) fail_at(t, "expected '" + std::string(sym) + "'");
  return next();
}

Token TokenStream::expect_ident() {
  const Token& t = peek();
  if (t.kind != Token::Kind::Ident) fail_at(t, "expected identifier");
  return next();
}

void TokenStream::fail(const std::string& msg) const { fail_at(peek(), msg); }

void TokenStream::fail_at(const Token& tok, const std::string& msg) const {
  std::string found = tok.kind == Token::Kind::End ? "end of input" : "'" + tok.text + "'";
  throw SyntaxError(msg + ", found " + found, tok.line, tok.column);
}

bool is_keyword(std::string_view ident) {
  return ident == "app" || ident == "abs" || ident == "let" || ident == "nil";
}

}  // namespace bctx

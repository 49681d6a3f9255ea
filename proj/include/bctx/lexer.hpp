#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace bctx {

struct Token {
  enum class Kind { Ident, Symbol, End };

  Kind kind = Kind::End;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;

  bool is(std::string_view s) const { return kind != Kind::End && text == s; }
};

/// Splits surface text into identifiers and punctuation. Identifiers are
/// `[A-Za-z_][A-Za-z0-9_']*`; `%` and `#` start a comment running to the end
/// of the line.
std::vector<Token> tokenize(std::string_view text);

/// Cursor over a token vector with the small set of helpers every parser in
/// the project needs.
class TokenStream {
 public:
  explicit TokenStream(std::string_view text);
  explicit TokenStream(std::vector<Token> tokens);

  const Token& peek(std::size_t ahead = 0) const;
  Token next();
  bool at_end() const { return peek().kind == Token::Kind::End; }
  bool accept(std::string_view sym);
  Token expect(std::string_view sym);
  Token expect_ident();
  std::size_t position() const { return pos_; }
  void rewind(std::size_t pos) { pos_ = pos; }

  [[noreturn]] void fail(const std::string& msg) const;
  [[noreturn]] void fail_at(const Token& tok, const std::string& msg) const;

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

bool is_keyword(std::string_view ident);

}  // namespace bctx

#pragma once

// Object-language syntax: simple types and lambda/let terms in locally
// nameless form. Bound variables are de Bruijn indices; free variables are
// nominal constants (`Name`).

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "bctx/lexer.hpp"

namespace bctx {

/// A nominal constant, written as a lowercase stem followed by a decimal
/// index (`n0`, `m12`).
struct Name {
  std::string stem = "n";
  std::uint32_t index = 0;

  auto operator<=>(const Name&) const = default;
  bool operator==(const Name&) const = default;
};

std::string to_text(const Name& n);

/// Accepts identifiers of the form stem+digits; returns nothing otherwise.
std::optional<Name> name_from_ident(std::string_view ident);

/// Smallest `n<k>` not in `avoid`.
Name fresh(const std::set<Name>& avoid);

struct TyNode;

class Ty {
 public:
  enum class Kind : std::uint8_t { Base, Arrow };

  static Ty base(std::string label);
  static Ty arrow(Ty dom, Ty cod);

  Kind kind() const;
  const std::string& label() const;
  const Ty& dom() const;
  const Ty& cod() const;
  std::size_t depth() const;

  friend bool operator==(const Ty& a, const Ty& b) { return compare(a, b) == 0; }
  friend std::strong_ordering operator<=>(const Ty& a, const Ty& b) {
    return compare(a, b) <=> 0;
  }
  static int compare(const Ty& a, const Ty& b);

 private:
  explicit Ty(std::shared_ptr<const TyNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const TyNode> node_;
};

std::string to_text(const Ty& t);

struct TmNode;

class Tm {
 public:
  enum class Kind : std::uint8_t { Free, Bound, App, Abs, Let };

  static Tm free(Name n);
  static Tm bound(std::uint32_t index);
  static Tm app(Tm fn, Tm arg);
  static Tm abs(Ty ann, Tm body);
  static Tm let(Ty ann, Tm val, Tm body);

  Kind kind() const;
  const Name& name() const;       // Free
  std::uint32_t index() const;    // Bound
  const Tm& fn() const;           // App
  const Tm& arg() const;          // App
  const Ty& ann() const;          // Abs, Let
  const Tm& body() const;         // Abs, Let
  const Tm& val() const;          // Let

  /// Constructor count (type annotations excluded).
  std::size_t size() const;

  friend bool operator==(const Tm& a, const Tm& b) { return compare(a, b) == 0; }
  friend std::strong_ordering operator<=>(const Tm& a, const Tm& b) {
    return compare(a, b) <=> 0;
  }
  static int compare(const Tm& a, const Tm& b);

 private:
  explicit Tm(std::shared_ptr<const TmNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const TmNode> node_;
};

/// True iff every `Bound(i)` sits under more than `i + depth` binders.
bool locally_closed(const Tm& t, std::uint32_t depth = 0);

/// Instantiates the outermost bound variable of a binder body with `n`.
/// Throws MalformedTerm if the body refers past that binder.
Tm open(const Tm& body, const Name& n);

/// Inverse of `open`: abstracts every `Free(n)` into the index of a new
/// enclosing binder.
Tm close(const Tm& t, const Name& n);

std::set<Name> free_names(const Tm& t);

/// Number of free occurrences of `n`.
std::size_t occurrences(const Tm& t, const Name& n);

bool has_let(const Tm& t);

// ---------------------------------------------------------------------------
// Surface syntax
//
//   ty ::= IDENT | ty "->" ty | "(" ty ")"
//   tm ::= IDENT | "app" tm tm | "abs" ty (IDENT "\" tm)
//        | "let" ty tm (IDENT "\" tm) | "(" tm ")"
//
// Type annotations after `abs`/`let` are atomic: an identifier or a
// parenthesised type. Free identifiers must be declared nominal constants.

Ty parse_type(TokenStream& ts);
Ty parse_type_atom(TokenStream& ts);
Ty parse_type(std::string_view text);

Tm parse_term(TokenStream& ts, const std::set<Name>& constants);
Tm parse_term(std::string_view text, const std::set<Name>& constants = {});

/// Canonical surface form; `parse_term(print_term(t), free_names(t)) == t`.
std::string print_term(const Tm& t);
std::string to_text(const Tm& t);

}  // namespace bctx

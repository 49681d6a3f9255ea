#include "bctx/syntax.hpp"

#include <cctype>
#include <charconv>
#include <vector>

#include "bctx/errors.hpp"

namespace bctx {

std::string to_text(const Name& n) { return n.stem + std::to_string(n.index); }

std::optional<Name> name_from_ident(std::string_view ident) {
  std::size_t i = 0;
  while (i < ident.size() && std::islower(static_cast<unsigned char>(ident[i]))) ++i;
  if (i == 0 || i == ident.size()) return std::nullopt;
  std::uint32_t index = 0;
  auto [ptr, ec] = std::from_chars(ident.data() + i, ident.data() + ident.size(), index);
  if (ec != std::errc() || ptr != ident.data() + ident.size()) return std::nullopt;
  // Leading zeros would make two spellings denote one name.
  if (ident[i] == '0' && ident.size() - i > 1) return std::nullopt;
  return Name{std::string(ident.substr(0, i)), index};
}

Name fresh(const std::set<Name>& avoid) {
  Name n{"n", 0};
  while (avoid.contains(n)) ++n.index;
  return n;
}

// ---------------------------------------------------------------------------
// Types

struct TyNode {
  Ty::Kind kind;
  std::string label;
  std::optional<Ty> dom;
  std::optional<Ty> cod;
  std::size_t depth;
};

Ty Ty::base(std::string label) {
  return Ty(std::make_shared<const TyNode>(
      TyNode{Kind::Base, std::move(label), std::nullopt, std::nullopt, 1}));
}

Ty Ty::arrow(Ty dom, Ty cod) {
  std::size_t d = 1 + std::max(dom.depth(), cod.depth());
  return Ty(std::make_shared<const TyNode>(TyNode{Kind::Arrow, {}, std::move(dom), std::move(cod), d}));
}

Ty::Kind Ty::kind() const { return node_->kind; }
const std::string& Ty::label() const { return node_->label; }
const Ty& Ty::dom() const { return *node_->dom; }
const Ty& Ty::cod() const { return *node_->cod; }
std::size_t Ty::depth() const { return node_->depth; }

int Ty::compare(const Ty& a, const Ty& b) {
  if (a.node_ == b.node_) return 0;
  if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
  if (a.kind() == Kind::Base) return a.label().compare(b.label()) < 0 ? -1 : (a.label() == b.label() ? 0 : 1);
  if (int c = compare(a.dom(), b.dom()); c != 0) return c;
  return compare(a.cod(), b.cod());
}

std::string to_text(const Ty& t) {
  if (t.kind() == Ty::Kind::Base) return t.label();
  std::string dom = to_text(t.dom());
  if (t.dom().kind() == Ty::Kind::Arrow) dom = "(" + dom + ")";
  return dom + " -> " + to_text(t.cod());
}

// ---------------------------------------------------------------------------
// Terms

struct TmNode {
  Tm::Kind kind;
  Name name;
  std::uint32_t index = 0;
  std::optional<Ty> ann;
  std::optional<Tm> a;  // fn / body
  std::optional<Tm> b;  // arg / val
  std::size_t size = 1;
};

Tm Tm::free(Name n) {
  TmNode node{Kind::Free, std::move(n), 0, std::nullopt, std::nullopt, std::nullopt, 1};
  return Tm(std::make_shared<const TmNode>(std::move(node)));
}

Tm Tm::bound(std::uint32_t index) {
  TmNode node{Kind::Bound, Name{}, index, std::nullopt, std::nullopt, std::nullopt, 1};
  return Tm(std::make_shared<const TmNode>(std::move(node)));
}

Tm Tm::app(Tm fn, Tm arg) {
  std::size_t s = 1 + fn.size() + arg.size();
  TmNode node{Kind::App, Name{}, 0, std::nullopt, std::move(fn), std::move(arg), s};
  return Tm(std::make_shared<const TmNode>(std::move(node)));
}

Tm Tm::abs(Ty ann, Tm body) {
  std::size_t s = 1 + body.size();
  TmNode node{Kind::Abs, Name{}, 0, std::move(ann), std::move(body), std::nullopt, s};
  return Tm(std::make_shared<const TmNode>(std::move(node)));
}

Tm Tm::let(Ty ann, Tm val, Tm body) {
  std::size_t s = 1 + val.size() + body.size();
  TmNode node{Kind::Let, Name{}, 0, std::move(ann), std::move(body), std::move(val), s};
  return Tm(std::make_shared<const TmNode>(std::move(node)));
}

Tm::Kind Tm::kind() const { return node_->kind; }
const Name& Tm::name() const { return node_->name; }
std::uint32_t Tm::index() const { return node_->index; }
const Tm& Tm::fn() const { return *node_->a; }
const Tm& Tm::arg() const { return *node_->b; }
const Ty& Tm::ann() const { return *node_->ann; }
const Tm& Tm::body() const { return *node_->a; }
const Tm& Tm::val() const { return *node_->b; }
std::size_t Tm::size() const { return node_->size; }

int Tm::compare(const Tm& a, const Tm& b) {
  if (a.node_ == b.node_) return 0;
  if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
  switch (a.kind()) {
    case Kind::Free:
      if (a.name() == b.name()) return 0;
      return a.name() < b.name() ? -1 : 1;
    case Kind::Bound:
      if (a.index() == b.index()) return 0;
      return a.index() < b.index() ? -1 : 1;
    case Kind::App:
      if (int c = compare(a.fn(), b.fn()); c != 0) return c;
      return compare(a.arg(), b.arg());
    case Kind::Abs:
      if (int c = Ty::compare(a.ann(), b.ann()); c != 0) return c;
      return compare(a.body(), b.body());
    case Kind::Let:
      if (int c = Ty::compare(a.ann(), b.ann()); c != 0) return c;
      if (int c = compare(a.val(), b.val()); c != 0) return c;
      return compare(a.body(), b.body());
  }
  return 0;
}

bool locally_closed(const Tm& t, std::uint32_t depth) {
  switch (t.kind()) {
    case Tm::Kind::Free:
      return true;
    case Tm::Kind::Bound:
      return t.index() < depth;
    case Tm::Kind::App:
      return locally_closed(t.fn(), depth) && locally_closed(t.arg(), depth);
    case Tm::Kind::Abs:
      return locally_closed(t.body(), depth + 1);
    case Tm::Kind::Let:
      return locally_closed(t.val(), depth) && locally_closed(t.body(), depth + 1);
  }
  return false;
}

namespace {

Tm open_at(const Tm& t, std::uint32_t k, const Name& n) {
  switch (t.kind()) {
    case Tm::Kind::Free:
      return t;
    case Tm::Kind::Bound:
      if (t.index() == k) return Tm::free(n);
      if (t.index() > k) throw MalformedTerm("open: bound index escapes its binder");
      return t;
    case Tm::Kind::App:
      return Tm::app(open_at(t.fn(), k, n), open_at(t.arg(), k, n));
    case Tm::Kind::Abs:
      return Tm::abs(t.ann(), open_at(t.body(), k + 1, n));
    case Tm::Kind::Let:
      return Tm::let(t.ann(), open_at(t.val(), k, n), open_at(t.body(), k + 1, n));
  }
  return t;
}

Tm close_at(const Tm& t, std::uint32_t k, const Name& n) {
  switch (t.kind()) {
    case Tm::Kind::Free:
      return t.name() == n ? Tm::bound(k) : t;
    case Tm::Kind::Bound:
      return t;
    case Tm::Kind::App:
      return Tm::app(close_at(t.fn(), k, n), close_at(t.arg(), k, n));
    case Tm::Kind::Abs:
      return Tm::abs(t.ann(), close_at(t.body(), k + 1, n));
    case Tm::Kind::Let:
      return Tm::let(t.ann(), close_at(t.val(), k, n), close_at(t.body(), k + 1, n));
  }
  return t;
}

void collect_free(const Tm& t, std::set<Name>& out) {
  switch (t.kind()) {
    case Tm::Kind::Free:
      out.insert(t.name());
      break;
    case Tm::Kind::Bound:
      break;
    case Tm::Kind::App:
      collect_free(t.fn(), out);
      collect_free(t.arg(), out);
      break;
    case Tm::Kind::Abs:
      collect_free(t.body(), out);
      break;
    case Tm::Kind::Let:
      collect_free(t.val(), out);
      collect_free(t.body(), out);
      break;
  }
}

}  // namespace

Tm open(const Tm& body, const Name& n) { return open_at(body, 0, n); }

Tm close(const Tm& t, const Name& n) { return close_at(t, 0, n); }

std::set<Name> free_names(const Tm& t) {
  std::set<Name> out;
  collect_free(t, out);
  return out;
}

std::size_t occurrences(const Tm& t, const Name& n) {
  switch (t.kind()) {
    case Tm::Kind::Free:
      return t.name() == n ? 1 : 0;
    case Tm::Kind::Bound:
      return 0;
    case Tm::Kind::App:
      return occurrences(t.fn(), n) + occurrences(t.arg(), n);
    case Tm::Kind::Abs:
      return occurrences(t.body(), n);
    case Tm::Kind::Let:
      return occurrences(t.val(), n) + occurrences(t.body(), n);
  }
  return 0;
}

bool has_let(const Tm& t) {
  switch (t.kind()) {
    case Tm::Kind::Free:
    case Tm::Kind::Bound:
      return false;
    case Tm::Kind::App:
      return has_let(t.fn()) || has_let(t.arg());
    case Tm::Kind::Abs:
      return has_let(t.body());
    case Tm::Kind::Let:
      return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Parsing

Ty parse_type_atom(TokenStream& ts) {
  if (ts.accept("(")) {
    Ty t = parse_type(ts);
    ts.expect(")");
    return t;
  }
  Token id = ts.expect_ident();
  if (is_keyword(id.text)) ts.fail_at(id, "keyword cannot name a type");
  return Ty::base(id.text);
}

Ty parse_type(TokenStream& ts) {
  Ty dom = parse_type_atom(ts);
  if (ts.accept("->")) return Ty::arrow(dom, parse_type(ts));
  return dom;
}

Ty parse_type(std::string_view text) {
  TokenStream ts(text);
  Ty t = parse_type(ts);
  if (!ts.at_end()) ts.fail("trailing input after type");
  return t;
}

namespace {

class TermParser {
 public:
  TermParser(TokenStream& ts, const std::set<Name>& constants) : ts_(ts), constants_(constants) {}

  Tm term() {
    if (ts_.accept("(")) {
      Tm t = term();
      ts_.expect(")");
      return t;
    }
    Token id = ts_.expect_ident();
    if (id.text == "app") {
      Tm fn = term();
      return Tm::app(fn, term());
    }
    if (id.text == "abs") {
      Ty ann = parse_type_atom(ts_);
      return Tm::abs(ann, binder());
    }
    if (id.text == "let") {
      Ty ann = parse_type_atom(ts_);
      Tm val = term();
      return Tm::let(ann, val, binder());
    }
    if (id.text == "nil") ts_.fail_at(id, "expected a term");
    for (std::size_t k = binders_.size(); k-- > 0;)
      if (binders_[k] == id.text) return Tm::bound(static_cast<std::uint32_t>(binders_.size() - 1 - k));
    if (auto n = name_from_ident(id.text); n && constants_.contains(*n)) return Tm::free(*n);
    throw UnboundIdentifier("unbound identifier '" + id.text + "'", id.line, id.column);
  }

 private:
  Tm binder() {
    ts_.expect("(");
    Token id = ts_.expect_ident();
    if (is_keyword(id.text)) ts_.fail_at(id, "keyword cannot be bound");
    ts_.expect("\\");
    binders_.push_back(id.text);
    Tm body = term();
    binders_.pop_back();
    ts_.expect(")");
    return body;
  }

  TokenStream& ts_;
  const std::set<Name>& constants_;
  std::vector<std::string> binders_;
};

// Binder names for printing: one per depth, skipping any spelling that
// collides with a free name of the printed term.
class BinderNames {
 public:
  explicit BinderNames(const std::set<Name>& avoid) {
    for (const auto& n : avoid) avoid_.insert(to_text(n));
  }

  const std::string& at(std::size_t depth) {
    static constexpr const char* kBase[] = {"x", "y", "z", "u", "v", "w"};
    while (names_.size() <= depth) {
      std::string cand = kBase[counter_ % 6];
      if (counter_ >= 6) cand += std::to_string(counter_ / 6);
      ++counter_;
      if (!avoid_.contains(cand)) names_.push_back(cand);
    }
    return names_[depth];
  }

 private:
  std::set<std::string> avoid_;
  std::vector<std::string> names_;
  std::size_t counter_ = 0;
};

std::string print_at(const Tm& t, std::vector<std::string>& scope, BinderNames& names);

std::string print_arg(const Tm& t, std::vector<std::string>& scope, BinderNames& names) {
  std::string s = print_at(t, scope, names);
  if (t.kind() == Tm::Kind::Free || t.kind() == Tm::Kind::Bound) return s;
  return "(" + s + ")";
}

std::string print_binder(const Tm& body, std::vector<std::string>& scope, BinderNames& names) {
  std::string x = names.at(scope.size());
  scope.push_back(x);
  std::string s = "(" + x + "\\ " + print_at(body, scope, names) + ")";
  scope.pop_back();
  return s;
}

std::string type_atom_text(const Ty& t) {
  return t.kind() == Ty::Kind::Base ? to_text(t) : "(" + to_text(t) + ")";
}

std::string print_at(const Tm& t, std::vector<std::string>& scope, BinderNames& names) {
  switch (t.kind()) {
    case Tm::Kind::Free:
      return to_text(t.name());
    case Tm::Kind::Bound:
      if (t.index() >= scope.size()) return "#" + std::to_string(t.index());
      return scope[scope.size() - 1 - t.index()];
    case Tm::Kind::App:
      return "app " + print_arg(t.fn(), scope, names) + " " + print_arg(t.arg(), scope, names);
    case Tm::Kind::Abs:
      return "abs " + type_atom_text(t.ann()) + " " + print_binder(t.body(), scope, names);
    case Tm::Kind::Let:
      return "let " + type_atom_text(t.ann()) + " " + print_arg(t.val(), scope, names) + " " +
             print_binder(t.body(), scope, names);
  }
  return {};
}

}  // namespace

Tm parse_term(TokenStream& ts, const std::set<Name>& constants) {
  TermParser p(ts, constants);
  return p.term();
}

Tm parse_term(std::string_view text, const std::set<Name>& constants) {
  TokenStream ts(text);
  Tm t = parse_term(ts, constants);
  if (!ts.at_end()) ts.fail("trailing input after term");
  return t;
}

std::string print_term(const Tm& t) {
  BinderNames names(free_names(t));
  std::vector<std::string> scope;
  return print_at(t, scope, names);
}

std::string to_text(const Tm& t) { return print_term(t); }

}  // namespace bctx

#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "bctx/errors.hpp"
#include "bctx/gen.hpp"
#include "bctx/syntax.hpp"

using namespace bctx;

namespace {

Name N(std::uint32_t i, std::string stem = "n") { return Name{std::move(stem), i}; }
Ty A() { return Ty::base("a"); }
Ty B() { return Ty::base("b"); }

// Named rendering with one string per binder. Two locally nameless terms are
// equal iff their renderings are, and opening becomes plain substitution.
std::string named(const Tm& t, std::vector<std::string>& env, std::size_t base = 0) {
  switch (t.kind()) {
    case Tm::Kind::Free:
      return to_text(t.name());
    case Tm::Kind::Bound:
      if (t.index() >= env.size()) return "?";
      return env[env.size() - 1 - t.index()];
    case Tm::Kind::App:
      return "(" + named(t.fn(), env, base) + " " + named(t.arg(), env, base) + ")";
    case Tm::Kind::Abs: {
      env.push_back("_v" + std::to_string(env.size() - base));
      std::string s = "(\\" + env.back() + ":" + to_text(t.ann()) + ". " + named(t.body(), env, base) + ")";
      env.pop_back();
      return s;
    }
    case Tm::Kind::Let: {
      std::string v = named(t.val(), env, base);
      env.push_back("_v" + std::to_string(env.size() - base));
      std::string s = "(let " + env.back() + ":" + to_text(t.ann()) + " = " + v + " in " + named(t.body(), env, base) + ")";
      env.pop_back();
      return s;
    }
  }
  return "";
}

// Renders a binder body with its outer variable already substituted by `n`.
std::string named_open(const Tm& body, const Name& n) {
  std::vector<std::string> env{to_text(n)};
  return named(body, env, 1);
}

std::string named(const Tm& t) {
  std::vector<std::string> env;
  return named(t, env);
}

std::vector<Tm> small_terms(bool let) {
  TermSpace sp{{N(1), N(2)}, {A(), Ty::arrow(A(), B())}, let};
  return gen_terms(sp, 4);
}

}  // namespace

TEST(Open, Examples) {
  EXPECT_EQ(open(Tm::bound(0), N(1)), Tm::free(N(1)));
  EXPECT_EQ(open(Tm::app(Tm::bound(0), Tm::free(N(2))), N(1)), Tm::app(Tm::free(N(1)), Tm::free(N(2))));
  EXPECT_EQ(open(Tm::abs(A(), Tm::bound(1)), N(1)), Tm::abs(A(), Tm::free(N(1))));
  EXPECT_EQ(open(Tm::abs(A(), Tm::bound(0)), N(1)), Tm::abs(A(), Tm::bound(0)));
  EXPECT_THROW(open(Tm::bound(1), N(1)), MalformedTerm);
}

TEST(Open, MatchesNamedSubstitution) {
  for (const auto& t : small_terms(true)) {
    if (t.kind() != Tm::Kind::Abs && t.kind() != Tm::Kind::Let) continue;
    Tm opened = open(t.body(), N(7));
    EXPECT_EQ(named(opened), named_open(t.body(), N(7))) << print_term(t);
    EXPECT_TRUE(locally_closed(opened));
    auto fv = free_names(t);
    fv.insert(N(7));
    for (const auto& n : free_names(opened)) EXPECT_TRUE(fv.count(n));
    EXPECT_EQ(close(opened, N(7)), t.body());
  }
}

TEST(Fresh, Examples) {
  EXPECT_EQ(fresh({}), N(0));
  EXPECT_EQ(fresh({N(0)}), N(1));
  EXPECT_EQ(fresh({N(1)}), N(0));
  EXPECT_EQ(fresh({N(0, "m")}), N(0));
}

TEST(Fresh, AvoidsAndIsInjectiveAlongChains) {
  std::set<Name> avoid;
  std::set<Name> seen;
  for (int i = 0; i < 50; ++i) {
    Name n = fresh(avoid);
    EXPECT_FALSE(avoid.count(n));
    EXPECT_TRUE(seen.insert(n).second);
    avoid.insert(n);
    avoid.insert(N(static_cast<std::uint32_t>(3 * i + 5)));
  }
  for (const auto& t : small_terms(false)) EXPECT_FALSE(free_names(t).count(fresh(free_names(t))));
}

TEST(FreeNames, Examples) {
  EXPECT_TRUE(free_names(Tm::abs(A(), Tm::bound(0))).empty());
  EXPECT_EQ(free_names(Tm::app(Tm::free(N(1)), Tm::free(N(1)))), std::set<Name>{N(1)});
  EXPECT_EQ(occurrences(Tm::app(Tm::free(N(1)), Tm::free(N(1))), N(1)), 2u);
}

TEST(NameText, Idents) {
  EXPECT_EQ(to_text(N(12, "m")), "m12");
  EXPECT_EQ(name_from_ident("n3"), N(3));
  EXPECT_FALSE(name_from_ident("x").has_value());
  EXPECT_FALSE(name_from_ident("3").has_value());
}

TEST(Parse, ExampleShape) {
  Ty i = Ty::base("i");
  Tm want = Tm::abs(Ty::arrow(i, i), Tm::abs(i, Tm::app(Tm::bound(1), Tm::bound(0))));
  EXPECT_EQ(parse_term("abs (i -> i) (x\\ abs i (y\\ app x y))"), want);
}

TEST(Parse, Types) {
  EXPECT_EQ(parse_type("a -> b -> a"), Ty::arrow(A(), Ty::arrow(B(), A())));
  EXPECT_EQ(parse_type("(a -> b) -> a"), Ty::arrow(Ty::arrow(A(), B()), A()));
  EXPECT_EQ(to_text(parse_type("(a -> b) -> a")), "(a -> b) -> a");
}

TEST(Parse, Let) {
  Tm t = parse_term("let a n1 (x\\ x)", {N(1)});
  EXPECT_EQ(t, Tm::let(A(), Tm::free(N(1)), Tm::bound(0)));
}

TEST(Parse, Errors) {
  EXPECT_THROW(parse_term("app x"), UnboundIdentifier);
  EXPECT_THROW(parse_term("app n1 n2", {N(1)}), UnboundIdentifier);
  EXPECT_THROW(parse_term("abs a (x\\ "), SyntaxError);
  try {
    parse_term("abs a\n  (x\\ app x )");
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(Parse, AlphaVariantsCoincide) {
  std::vector<std::pair<std::string, std::string>> same{
      {"abs a (x\\ x)", "abs a (y\\ y)"},
      {"abs a (x\\ abs b (y\\ app x y))", "abs a (y\\ abs b (x\\ app y x))"},
      {"abs a (x\\ abs a (x\\ x))", "abs a (y\\ abs a (z\\ z))"},
      {"let a (abs a (u\\ u)) (f\\ f)", "let a (abs a (v\\ v)) (g\\ g)"},
  };
  for (const auto& [l, r] : same) EXPECT_EQ(parse_term(l), parse_term(r)) << l;
  std::vector<std::pair<std::string, std::string>> differ{
      {"abs a (x\\ abs a (y\\ app x y))", "abs a (x\\ abs a (y\\ app y x))"},
      {"abs a (x\\ abs a (x\\ x))", "abs a (x\\ abs a (y\\ x))"},
      {"abs a (x\\ x)", "abs b (x\\ x)"},
  };
  for (const auto& [l, r] : differ) EXPECT_NE(parse_term(l), parse_term(r)) << l;
}

TEST(Print, Golden) {
  EXPECT_EQ(print_term(parse_term("abs (a -> b) (f\\ abs a (z\\ app f z))")),
            "abs (a -> b) (x\\ abs a (y\\ app x y))");
  EXPECT_EQ(print_term(parse_term("abs a (q\\ q)")), print_term(parse_term("abs a (x\\ x)")));
}

TEST(Print, RoundTrip) {
  for (const auto& t : small_terms(true)) EXPECT_EQ(parse_term(print_term(t), free_names(t)), t) << print_term(t);
}

TEST(Gen, TermsAreLocallyClosedAndDistinct) {
  auto ts = small_terms(true);
  std::set<Tm> uniq(ts.begin(), ts.end());
  EXPECT_EQ(uniq.size(), ts.size());
  for (const auto& t : ts) {
    EXPECT_TRUE(locally_closed(t));
    EXPECT_LE(t.size(), 4u);
  }
  EXPECT_EQ(type_universe(1).size(), 2u);
  EXPECT_EQ(type_universe(2).size(), 6u);
}

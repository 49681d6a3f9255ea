#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "bctx/ctx_text.hpp"
#include "bctx/gen.hpp"
#include "bctx/parallel.hpp"
#include "bctx/typing.hpp"

using namespace bctx;

namespace {

Name N(std::uint32_t i) { return Name{"n", i}; }
Ty A() { return Ty::base("a"); }
Ty B() { return Ty::base("b"); }
Ty Arr(Ty d, Ty c) { return Ty::arrow(std::move(d), std::move(c)); }
TyAssoc TA(std::uint32_t i, Ty t) { return TyAssoc{N(i), std::move(t)}; }
TyCtx TL(std::initializer_list<TyAssoc> xs) { return TyCtx::list(xs); }

using Assocs = std::vector<TyAssoc>;

Name fresh_for(const Assocs& g, const Tm& e) {
  std::set<Name> avoid = free_names(e);
  for (const auto& a : g) avoid.insert(a.name);
  return fresh(avoid);
}

// Linear typing straight from the rules, splitting the context as a plain
// vector of assumptions by bitmask.
std::set<Ty> lin_oracle(const Assocs& g, const Tm& e, bool with_let) {
  std::set<Ty> out;
  auto halves = [&](auto&& body) {
    for (unsigned m = 0; m < (1u << g.size()); ++m) {
      Assocs l, r;
      for (std::size_t i = 0; i < g.size(); ++i) ((m >> i) & 1 ? r : l).push_back(g[i]);
      body(l, r);
    }
  };
  switch (e.kind()) {
    case Tm::Kind::Free:
      if (g.size() == 1 && g[0].name == e.name()) out.insert(g[0].ty);
      break;
    case Tm::Kind::Bound:
      break;
    case Tm::Kind::App:
      halves([&](const Assocs& l, const Assocs& r) {
        auto fs = lin_oracle(l, e.fn(), with_let);
        if (fs.empty()) return;
        auto as = lin_oracle(r, e.arg(), with_let);
        for (const auto& f : fs)
          if (f.kind() == Ty::Kind::Arrow && as.count(f.dom())) out.insert(f.cod());
      });
      break;
    case Tm::Kind::Abs: {
      Name x = fresh_for(g, e);
      Assocs g2 = g;
      g2.push_back({x, e.ann()});
      for (const auto& t : lin_oracle(g2, open(e.body(), x), with_let)) out.insert(Ty::arrow(e.ann(), t));
      break;
    }
    case Tm::Kind::Let:
      if (!with_let) break;
      halves([&](const Assocs& l, const Assocs& r) {
        if (!lin_oracle(l, e.val(), true).count(e.ann())) return;
        Name x = fresh_for(g, e);
        Assocs r2 = r;
        r2.push_back({x, e.ann()});
        for (const auto& t : lin_oracle(r2, open(e.body(), x), true)) out.insert(t);
      });
      break;
  }
  return out;
}

std::set<Ty> int_oracle(const Assocs& g, const Tm& e) {
  std::set<Ty> out;
  switch (e.kind()) {
    case Tm::Kind::Free:
      for (const auto& a : g)
        if (a.name == e.name()) out.insert(a.ty);
      break;
    case Tm::Kind::App: {
      auto as = int_oracle(g, e.arg());
      for (const auto& f : int_oracle(g, e.fn()))
        if (f.kind() == Ty::Kind::Arrow && as.count(f.dom())) out.insert(f.cod());
      break;
    }
    case Tm::Kind::Abs: {
      Name x = fresh_for(g, e);
      Assocs g2 = g;
      g2.push_back({x, e.ann()});
      for (const auto& t : int_oracle(g2, open(e.body(), x))) out.insert(Ty::arrow(e.ann(), t));
      break;
    }
    default:
      break;
  }
  return out;
}

std::set<Ty> as_set(const std::vector<Ty>& v) { return {v.begin(), v.end()}; }

// Lists of up to `n` assumptions over names n1, n2 and types a, a -> b.
std::vector<Assocs> assoc_lists(std::size_t n) {
  std::vector<TyAssoc> atoms{TA(1, A()), TA(1, Arr(A(), B())), TA(2, A()), TA(2, Arr(A(), B()))};
  std::vector<Assocs> out{{}};
  std::vector<Assocs> layer{{}};
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<Assocs> next;
    for (const auto& l : layer)
      for (const auto& a : atoms) {
        auto l2 = l;
        l2.push_back(a);
        next.push_back(l2);
      }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

bool distinct_names(const Assocs& g) {
  std::set<Name> s;
  for (const auto& a : g) s.insert(a.name);
  return s.size() == g.size();
}

std::vector<Tm> terms(bool let) {
  return gen_terms(TermSpace{{N(1), N(2)}, {A(), Arr(A(), B())}, let}, 4);
}

Tm paper_term() { return Tm::abs(Arr(A(), B()), Tm::abs(A(), Tm::app(Tm::bound(1), Tm::bound(0)))); }
Tm reuse_term() {
  return Tm::abs(Arr(A(), Arr(A(), B())), Tm::abs(A(), Tm::app(Tm::app(Tm::bound(1), Tm::bound(0)), Tm::bound(0))));
}
Tm unused_term() { return Tm::abs(A(), Tm::abs(B(), Tm::bound(0))); }

}  // namespace

TEST(Intuitionistic, Examples) {
  Ty want = Arr(Arr(A(), B()), Arr(A(), B()));
  EXPECT_EQ(type_of_infer(TyCtx(), paper_term()), want);
  EXPECT_EQ(type_of_infer(TL({TA(1, A())}), Tm::free(N(1))), A());
  EXPECT_FALSE(type_of_infer(TyCtx(), Tm::free(N(1))).has_value());
  EXPECT_EQ(type_of_infer(TyCtx(), reuse_term()), Arr(Arr(A(), Arr(A(), B())), Arr(A(), B())));
  EXPECT_EQ(type_of_infer(TyCtx(), unused_term()), Arr(A(), Arr(B(), B())));
}

TEST(Intuitionistic, AgreesWithRuleOracle) {
  for (const auto& g : assoc_lists(2))
    for (const auto& e : terms(false)) {
      TyCtx l = TyCtx::list(g);
      auto all = as_set(type_of_all(l, e));
      EXPECT_EQ(all, int_oracle(g, e)) << to_text(l) << " |- " << print_term(e);
      auto inf = type_of_infer(l, e);
      if (distinct_names(g)) {
        EXPECT_LE(all.size(), 1u);
        EXPECT_EQ(inf.has_value(), !all.empty());
        if (inf) EXPECT_TRUE(all.count(*inf));
      }
    }
}

TEST(TyCtxList, Examples) {
  EXPECT_TRUE(ty_ctx_list(TyCtx()));
  EXPECT_TRUE(ty_ctx_list(TL({TA(1, A()), TA(2, A())})));
  EXPECT_FALSE(ty_ctx_list(TL({TA(1, A()), TA(1, B())})));
}

TEST(TyCtxMset, Examples) {
  EXPECT_TRUE(ty_ctx_mset(TyCtx::join(TL({TA(1, A())}), TL({TA(2, B())}))));
  EXPECT_FALSE(ty_ctx_mset(TyCtx::join(TL({TA(1, A())}), TL({TA(1, A())}))));
  EXPECT_TRUE(ty_ctx_mset(TyCtx()));
}

TEST(TyCtxMset, MatchesPermutationSearch) {
  std::vector<TyAssoc> pool{TA(1, A()), TA(2, A()), TA(1, B())};
  for (const auto& g : gen_ctxs<TyAssoc>(pool, 3, 2)) {
    auto xs = elems(g);
    std::sort(xs.begin(), xs.end());
    bool some = false;
    do {
      some = some || ty_ctx_list(TyCtx::list(xs));
    } while (std::next_permutation(xs.begin(), xs.end()));
    EXPECT_EQ(ty_ctx_mset(g), some) << to_text(g);
  }
}

TEST(TyCtx, DistrExample) {
  TyCtx g = TyCtx::join(TL({TA(1, A())}), TL({TA(2, B())}));
  ASSERT_TRUE(perm(g, TyCtx::join(TL({TA(2, B())}), TL({TA(1, A())}))));
  EXPECT_TRUE(ty_ctx_mset(TL({TA(2, B())})));
  EXPECT_TRUE(ty_ctx_mset(TL({TA(1, A())})));
  for (const auto& [l, r] : splits(g)) EXPECT_TRUE(ty_ctx_mset(l) && ty_ctx_mset(r));
}

TEST(TyCtx, UniqFailsWithoutDistinctness) {
  // The mutated predicate accepts every list, so the uniqueness property
  // must find a counterexample.
  auto lists = assoc_lists(2);
  auto mutated = [](const Assocs&) { return true; };
  CheckReport r = run_check("ty_ctx_uniq_mutated", lists.size(), 1, [&](std::size_t i) -> CaseResult {
    const auto& l = lists[i];
    if (!mutated(l)) return std::nullopt;
    for (const auto& x : l)
      for (const auto& y : l)
        if (x.name == y.name && !(x.ty == y.ty)) return Bindings{{"L", to_text(TyCtx::list(l))}};
    return std::nullopt;
  });
  EXPECT_FALSE(r.pass);
  ASSERT_TRUE(r.counterexample.has_value());
  auto g = parse_ty_ctx(r.counterexample->at(0).second);
  EXPECT_FALSE(ty_ctx_list(g));
}

TEST(Linear, PaperExamples) {
  Ty want = Arr(Arr(A(), B()), Arr(A(), B()));
  EXPECT_TRUE(ltype_rel(TyCtx(), paper_term(), want));
  EXPECT_EQ(ltype_check_top(TyCtx(), paper_term()), want);
  EXPECT_TRUE(ltype_types(TyCtx(), reuse_term()).empty());
  EXPECT_TRUE(ltype_types(TyCtx(), unused_term()).empty());
  EXPECT_FALSE(ltype_check_top(TyCtx(), reuse_term()).has_value());
  EXPECT_FALSE(ltype_check_top(TyCtx(), unused_term()).has_value());
}

TEST(Linear, CheckerExamples) {
  auto r = ltype_check(TL({TA(1, A())}), Tm::free(N(1)));
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(r->ty, A());
  EXPECT_TRUE(no_elems(r->leftover.remaining));
  EXPECT_EQ(r->leftover.used, std::set<Name>{N(1)});
  EXPECT_FALSE(ltype_check_top(TL({TA(1, A())}), Tm::abs(B(), Tm::free(N(1)))).has_value());
  auto partial = ltype_check(TL({TA(1, A()), TA(2, B())}), Tm::free(N(2)));
  ASSERT_TRUE(partial.has_value());
  EXPECT_EQ(partial->leftover.remaining, TL({TA(1, A())}));
  EXPECT_FALSE(ltype_check_top(TL({TA(1, A()), TA(2, B())}), Tm::free(N(2))).has_value());
}

TEST(Linear, RelationalMatchesRuleOracle) {
  for (const auto& g : assoc_lists(2)) {
    if (!distinct_names(g)) continue;
    TyCtx l = TyCtx::list(g);
    for (const auto& e : terms(true)) {
      EXPECT_EQ(as_set(ltype_types(l, e)), lin_oracle(g, e, false)) << to_text(l) << " |- " << print_term(e);
      EXPECT_EQ(as_set(mltype_types(l, e)), lin_oracle(g, e, true)) << to_text(l) << " |- " << print_term(e);
    }
  }
}

TEST(Linear, CheckerMatchesRelational) {
  for (const auto& g : assoc_lists(2)) {
    if (!distinct_names(g)) continue;
    TyCtx l = TyCtx::list(g);
    for (const auto& e : terms(true)) {
      auto lt = ltype_types(l, e);
      auto top = ltype_check_top(l, e);
      EXPECT_EQ(top.has_value(), !lt.empty());
      if (top) EXPECT_TRUE(ltype_rel(l, e, *top));
      auto mt = mltype_types(l, e);
      auto mtop = mltype_check_top(l, e);
      EXPECT_EQ(mtop.has_value(), !mt.empty());
      if (mtop) EXPECT_TRUE(mltype_rel(l, e, *mtop));
    }
  }
}

TEST(Linear, PermutationInvariant) {
  std::vector<TyAssoc> pool{TA(1, A()), TA(2, Arr(A(), B()))};
  auto ctxs = gen_ctxs<TyAssoc>(pool, 2, 2);
  auto ts = terms(true);
  for (const auto& g : ctxs)
    for (const auto& g2 : ctxs) {
      if (!perm(g, g2)) continue;
      for (const auto& e : ts) {
        EXPECT_EQ(as_set(ltype_types(g, e)), as_set(ltype_types(g2, e)));
        EXPECT_EQ(as_set(mltype_types(g, e)), as_set(mltype_types(g2, e)));
      }
    }
}

TEST(Linear, ImpliesIntuitionistic) {
  for (const auto& g : assoc_lists(2)) {
    if (!distinct_names(g)) continue;
    TyCtx l = TyCtx::list(g);
    for (const auto& e : terms(false))
      for (const auto& t : ltype_types(l, e)) EXPECT_EQ(type_of_infer(l, e), t);
  }
}

TEST(MiniML, Examples) {
  Tm v = Tm::abs(A(), Tm::bound(0));
  EXPECT_TRUE(mltype_rel(TyCtx(), Tm::let(Arr(A(), A()), v, Tm::bound(0)), Arr(A(), A())));
  EXPECT_TRUE(mltype_types(TyCtx(), Tm::let(Arr(A(), A()), v, Tm::abs(B(), Tm::bound(0)))).empty());
  auto r = mltype_check(TL({TA(1, A())}), Tm::let(A(), Tm::free(N(1)), Tm::bound(0)));
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(r->ty, A());
  EXPECT_TRUE(no_elems(r->leftover.remaining));
  EXPECT_FALSE(mltype_check_top(TyCtx(), Tm::free(N(1))).has_value());
  // let is not part of the plain linear calculus
  EXPECT_TRUE(ltype_types(TyCtx(), Tm::let(Arr(A(), A()), v, Tm::bound(0))).empty());
}

TEST(MiniML, AgreesWithLinearOnLetFreeTerms) {
  for (const auto& g : assoc_lists(2)) {
    TyCtx l = TyCtx::list(g);
    for (const auto& e : terms(false)) EXPECT_EQ(as_set(mltype_types(l, e)), as_set(ltype_types(l, e)));
  }
}

TEST(TyCtxText, RoundTrip) {
  TyCtx g = parse_ty_ctx("[ty_of n1 (a -> b)] ++ ty_of n2 a :: nil");
  EXPECT_EQ(g, TyCtx::join(TL({TA(1, Arr(A(), B()))}), TL({TA(2, A())})));
  EXPECT_EQ(parse_ty_ctx(to_text(g)), g);
}

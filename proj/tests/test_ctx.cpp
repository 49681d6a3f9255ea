#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

#include "bctx/ctx.hpp"
#include "bctx/ctx_text.hpp"

using namespace bctx;

namespace {

using C = Ctx<char>;

C P(std::string_view s) { return parse_ctx<char>(s, parse_char_elem); }
C L(std::initializer_list<char> xs) { return C::list(xs); }
C E() { return C::empty(); }
C U(C a, C b) { return C::join(std::move(a), std::move(b)); }

// Multiset equality by counting, independent of the sorted comparison.
bool same_counts(const C& a, const C& b) {
  std::map<char, int> m;
  for (char x : elems(a)) ++m[x];
  for (char x : elems(b)) --m[x];
  return std::all_of(m.begin(), m.end(), [](auto& kv) { return kv.second == 0; });
}

// Trees with exactly n elements over p labels and depth <= d.
std::size_t tree_count(std::size_t n, std::size_t d, std::size_t p) {
  if (d == 0) return 0;
  std::size_t t = n == 0 ? 1 : p * tree_count(n - 1, d, p);
  if (d >= 2)
    for (std::size_t k = 0; k <= n; ++k) t += tree_count(k, d - 1, p) * tree_count(n - k, d - 1, p);
  return t;
}

std::vector<C> small_domain() { return gen_ctxs<char>({'a', 'b'}, 3, 2); }

}  // namespace

TEST(Elems, InOrder) {
  EXPECT_TRUE(elems(E()).empty());
  EXPECT_EQ(elems(C::cons('a', U(L({'b'}), L({'c'})))), (std::vector<char>{'a', 'b', 'c'}));
  for (const auto& g : gen_ctxs<char>({'a', 'b'}, 5, 2)) EXPECT_EQ(elems(g).size(), g.size());
}

TEST(Member, Clauses) {
  EXPECT_TRUE(member('a', L({'a'})));
  EXPECT_TRUE(member('a', U(E(), L({'b', 'a'}))));
  EXPECT_FALSE(member('a', E()));
}

TEST(Select, Residuals) {
  auto s = select('a', L({'a'}));
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].path, OccPath{Step::AtHead});
  EXPECT_EQ(s[0].residual, E());

  auto two = select('a', U(L({'a'}), L({'a'})));
  ASSERT_EQ(two.size(), 2u);
  EXPECT_EQ(two[0].residual, U(E(), L({'a'})));
  EXPECT_EQ(two[1].residual, U(L({'a'}), E()));
  EXPECT_NE(two[0].path, two[1].path);
  EXPECT_TRUE(select('a', L({'b'})).empty());
}

TEST(Select, PathsResolveAndResidualLosesOne) {
  for (const auto& g : small_domain())
    for (char x : {'a', 'b'}) {
      auto ss = select(x, g);
      std::set<OccPath> paths;
      for (const auto& s : ss) {
        EXPECT_EQ(resolve(g, s.path), x);
        EXPECT_EQ(s.residual.size() + 1, g.size());
        EXPECT_TRUE(same_counts(C::cons(x, s.residual), g));
        paths.insert(s.path);
      }
      EXPECT_EQ(paths.size(), ss.size());
      auto xs = elems(g);
      EXPECT_EQ(ss.size(), static_cast<std::size_t>(std::count(xs.begin(), xs.end(), x)));
    }
}

TEST(NoElems, Clauses) {
  EXPECT_TRUE(no_elems(E()));
  EXPECT_TRUE(no_elems(U(E(), U(E(), E()))));
  EXPECT_FALSE(no_elems(L({'a'})));
}

TEST(IsList, Clauses) {
  EXPECT_TRUE(is_list(L({'a', 'b'})));
  EXPECT_FALSE(is_list(U(E(), E())));
  EXPECT_TRUE(is_list(E()));
}

TEST(Perm, Examples) {
  EXPECT_TRUE(perm(U(L({'a'}), L({'b'})), L({'b', 'a'})));
  EXPECT_TRUE(perm_rel(U(L({'a'}), L({'b'})), L({'b', 'a'})));
  EXPECT_TRUE(perm(E(), U(E(), E())));
  EXPECT_FALSE(perm(L({'a'}), L({'a', 'a'})));
  EXPECT_TRUE(perm_rel(E(), E()));
  EXPECT_TRUE(perm_rel(L({'a', 'b'}), L({'b', 'a'})));
  EXPECT_FALSE(perm_rel(L({'a'}), E()));
}

TEST(Perm, AgreesWithCountingAndLiteralSearch) {
  auto dom = small_domain();
  for (const auto& g1 : dom)
    for (const auto& g2 : dom) {
      bool p = perm(g1, g2);
      EXPECT_EQ(p, same_counts(g1, g2));
      if (g1.size() == g2.size()) EXPECT_EQ(p, perm_rel(g1, g2)) << to_text(g1) << " / " << to_text(g2);
    }
}

TEST(Perm, EquivalenceRelation) {
  auto dom = gen_ctxs<char>({'a', 'b'}, 2, 2);
  for (const auto& x : dom) {
    EXPECT_TRUE(perm(x, x));
    for (const auto& y : dom) {
      EXPECT_EQ(perm(x, y), perm(y, x));
      if (!perm(x, y)) continue;
      for (const auto& z : dom)
        if (perm(y, z)) EXPECT_TRUE(perm(x, z));
    }
  }
}

TEST(ExtractionWords, MatchLiteralPermOnSmallDomain) {
  auto dom = small_domain();
  for (const auto& g1 : dom)
    for (const auto& g2 : dom) {
      if (g1.size() != g2.size()) continue;
      auto w1 = extraction_words(g1);
      auto w2 = extraction_words(g2);
      bool meet = std::any_of(w1.begin(), w1.end(), [&](const auto& w) { return w2.count(w) > 0; });
      EXPECT_EQ(meet, perm_rel(g1, g2));
    }
  EXPECT_EQ(extraction_words(E()).size(), 1u);
}

TEST(PartitionList, Examples) {
  auto ps = partition_list(L({'a', 'b'}));
  std::set<std::pair<C, C>> got(ps.begin(), ps.end());
  std::set<std::pair<C, C>> want{{L({'a', 'b'}), E()}, {L({'a'}), L({'b'})}, {L({'b'}), L({'a'})}, {E(), L({'a', 'b'})}};
  EXPECT_EQ(got, want);
  EXPECT_EQ(partition_list(E()), (std::vector<std::pair<C, C>>{{E(), E()}}));
  EXPECT_EQ(partition_list(L({'a', 'b', 'c'})).size(), 8u);
  EXPECT_THROW(partition_list(U(E(), E())), PreconditionViolated);
}

TEST(PartitionList, ExactlyTheOrderPreservingSublistPairs) {
  for (const auto& l : gen_ctxs<char>({'a', 'b'}, 4, 1)) {
    auto xs = elems(l);
    std::set<std::pair<std::vector<char>, std::vector<char>>> want;
    for (unsigned mask = 0; mask < (1u << xs.size()); ++mask) {
      std::vector<char> a, b;
      for (std::size_t i = 0; i < xs.size(); ++i) ((mask >> i) & 1 ? b : a).push_back(xs[i]);
      want.insert({a, b});
    }
    std::set<std::pair<std::vector<char>, std::vector<char>>> got;
    auto ps = partition_list(l);
    EXPECT_EQ(ps.size(), std::size_t{1} << xs.size());
    for (const auto& [a, b] : ps) {
      EXPECT_TRUE(is_list(a) && is_list(b));
      EXPECT_TRUE(is_partition(l, a, b));
      got.insert({elems(a), elems(b)});
    }
    EXPECT_EQ(got, want);
  }
}

TEST(Splits, Examples) {
  auto s = splits(U(L({'a'}), L({'b'})));
  EXPECT_EQ(s.size(), 4u);
  EXPECT_NE(std::find(s.begin(), s.end(), std::pair{L({'a'}), L({'b'})}), s.end());
  EXPECT_NE(std::find(s.begin(), s.end(), std::pair{L({'b'}), L({'a'})}), s.end());
  EXPECT_EQ(splits(E()), (std::vector<std::pair<C, C>>{{E(), E()}}));
}

TEST(Splits, SoundAndCompleteUpToPermutation) {
  auto dom = gen_ctxs<char>({'a', 'b'}, 4, 2);
  auto parts = gen_ctxs<char>({'a', 'b'}, 4, 1);
  for (const auto& g : dom) {
    auto ss = splits(g);
    EXPECT_EQ(ss.size(), std::size_t{1} << g.size());
    for (const auto& [a, b] : ss) {
      EXPECT_TRUE(is_list(a) && is_list(b));
      EXPECT_TRUE(perm(g, U(a, b)));
    }
    for (const auto& d1 : parts)
      for (const auto& d2 : parts) {
        if (!same_counts(g, U(d1, d2))) continue;
        bool found = std::any_of(ss.begin(), ss.end(), [&](const auto& s) {
          return same_counts(s.first, d1) && same_counts(s.second, d2);
        });
        EXPECT_TRUE(found);
      }
  }
}

TEST(MemTransport, Examples) {
  EXPECT_TRUE(mem_transport('a', L({'a'}), U(L({'a'}), E())));
  EXPECT_TRUE(mem_transport('b', L({'b', 'c'}), U(L({'c'}), L({'b'}))));
  EXPECT_THROW(mem_transport('a', L({'a'}), L({'b'})), PreconditionViolated);
  EXPECT_THROW(mem_transport('c', L({'a'}), L({'a'})), PreconditionViolated);
}

TEST(SelTransport, Examples) {
  C r = sel_transport('a', L({'a', 'b'}), L({'b'}), U(L({'b'}), L({'a'})));
  EXPECT_TRUE(perm(r, L({'b'})));
  EXPECT_EQ(r, U(L({'b'}), E()));
  EXPECT_EQ(sel_transport('a', L({'a'}), E(), L({'a'})), E());
  C twin = sel_transport('a', L({'a', 'a'}), L({'a'}), U(L({'a'}), L({'a'})));
  EXPECT_TRUE(twin == U(E(), L({'a'})) || twin == U(L({'a'}), E()));
  EXPECT_THROW(sel_transport('a', L({'a'}), E(), L({'b'})), PreconditionViolated);
}

TEST(SelTransport, FindsMatchingResidual) {
  auto dom = gen_ctxs<char>({'a', 'b'}, 3, 2);
  for (const auto& g1 : dom)
    for (const auto& g2 : dom) {
      if (!perm(g1, g2)) continue;
      for (char x : {'a', 'b'})
        for (const auto& s : select(x, g1)) {
          C r = sel_transport(x, g1, s.residual, g2);
          EXPECT_TRUE(perm(s.residual, r));
          auto cands = select(x, g2);
          EXPECT_TRUE(std::any_of(cands.begin(), cands.end(), [&](const auto& c) { return c.residual == r; }));
        }
    }
}

TEST(PermToPart, Examples) {
  EXPECT_EQ(perm_to_part(L({'a', 'b'}), L({'b'}), L({'a'})), (CtxPair<char>{L({'b'}), L({'a'})}));
  EXPECT_EQ(perm_to_part(E(), E(), U(E(), E())), (CtxPair<char>{E(), E()}));
  EXPECT_EQ(perm_to_part(L({'a', 'a'}), L({'a'}), L({'a'})), (CtxPair<char>{L({'a'}), L({'a'})}));
  auto m = perm_to_part_mask(L({'a', 'a'}), L({'a'}), L({'a'}));
  EXPECT_EQ(m.to_right, (std::vector<bool>{false, true}));
  EXPECT_THROW(perm_to_part(U(E(), E()), E(), E()), PreconditionViolated);
  EXPECT_THROW(perm_to_part(L({'a'}), L({'b'}), E()), PreconditionViolated);
}

TEST(PermToPart, RoundTrip) {
  auto lists = gen_ctxs<char>({'a', 'b'}, 3, 1);
  auto halves = gen_ctxs<char>({'a', 'b'}, 3, 2);
  for (const auto& l : lists)
    for (const auto& g1 : halves)
      for (const auto& g2 : halves) {
        if (!perm(l, U(g1, g2))) continue;
        auto [l1, l2] = perm_to_part(l, g1, g2);
        EXPECT_TRUE(perm(g1, l1));
        EXPECT_TRUE(perm(g2, l2));
        EXPECT_TRUE(is_partition(l, l1, l2));
        EXPECT_TRUE(part_to_perm(l, l1, l2));
      }
}

TEST(PartToPerm, Examples) {
  EXPECT_TRUE(part_to_perm(L({'a', 'b'}), L({'a'}), L({'b'})));
  EXPECT_TRUE(part_to_perm(L({'a', 'b', 'c'}), L({'b'}), L({'a', 'c'})));
  EXPECT_THROW(part_to_perm(L({'a'}), L({'a'}), L({'a'})), PreconditionViolated);
}

TEST(GenCtxs, Examples) {
  EXPECT_EQ(gen_ctxs<char>({}, 0, 1), std::vector<C>{E()});
  auto one = gen_ctxs<char>({'a'}, 1, 1);
  EXPECT_NE(std::find(one.begin(), one.end(), E()), one.end());
  EXPECT_NE(std::find(one.begin(), one.end(), L({'a'})), one.end());
}

TEST(GenCtxs, CountsMatchRecurrence) {
  EXPECT_EQ(tree_count(0, 3, 2), 5u);
  for (std::size_t p = 1; p <= 2; ++p)
    for (std::size_t n = 0; n <= 4; ++n)
      for (std::size_t d = 1; d <= 3; ++d) {
        std::vector<char> pool(p);
        for (std::size_t i = 0; i < p; ++i) pool[i] = static_cast<char>('a' + i);
        std::size_t want = 0;
        for (std::size_t k = 0; k <= n; ++k) want += tree_count(k, d, p);
        auto got = gen_ctxs<char>(pool, n, d);
        EXPECT_EQ(got.size(), want) << "p=" << p << " n=" << n << " d=" << d;
        std::set<C> uniq(got.begin(), got.end());
        EXPECT_EQ(uniq.size(), got.size());
        for (const auto& g : got) EXPECT_LE(g.depth(), d);
      }
}

TEST(GenCtxs, Deterministic) {
  EXPECT_EQ(gen_ctxs<char>({'b', 'a'}, 3, 3), gen_ctxs<char>({'a', 'b'}, 3, 3));
}

TEST(CtxText, RoundTrip) {
  EXPECT_EQ(P("[a, b]"), L({'a', 'b'}));
  EXPECT_EQ(P("a :: b :: nil"), L({'a', 'b'}));
  EXPECT_EQ(P("[a] ++ [b]"), U(L({'a'}), L({'b'})));
  for (const auto& g : gen_ctxs<char>({'a', 'b'}, 3, 3)) EXPECT_EQ(P(to_text(g)), g) << to_text(g);
  EXPECT_THROW(P("[a,"), SyntaxError);
}

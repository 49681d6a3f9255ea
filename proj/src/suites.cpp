#include "bctx/suites.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>

#include "bctx/ctx_text.hpp"
#include "bctx/errors.hpp"
#include "bctx/parallel.hpp"
#include "bctx/translation.hpp"
#include "bctx/typing.hpp"

namespace bctx {

GenBounds core_bounds() {
  GenBounds b;
  b.max_ctx = 4;
  b.max_depth = 3;
  b.name_pool = 2;
  return b;
}

GenBounds typing_bounds() { return GenBounds{}; }

GenBounds oracle_bounds() {
  GenBounds b;
  b.max_ctx = 2;
  b.max_depth = 2;
  return b;
}

GenBounds translation_bounds() {
  GenBounds b;
  b.max_term_size = 5;
  return b;
}

namespace {

void sort_reports(std::vector<CheckReport>& rs) {
  std::sort(rs.begin(), rs.end(), [](const CheckReport& a, const CheckReport& b) { return a.name < b.name; });
}

template <class E>
std::vector<E> distinct(std::vector<E> xs) {
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

std::vector<Ty> unique_types(std::vector<Ty> ts) { return distinct(std::move(ts)); }

std::string types_text(const std::vector<Ty>& ts) {
  std::string s = "{";
  for (std::size_t i = 0; i < ts.size(); ++i) s += (i ? ", " : "") + to_text(ts[i]);
  return s + "}";
}

std::string opt_text(const std::optional<Ty>& t) { return t ? to_text(*t) : "none"; }

// ---------------------------------------------------------------------------
// Core

using CharCtx = Ctx<char>;

class Bitset {
 public:
  explicit Bitset(std::size_t n = 0) : blocks_((n + 63) / 64, 0) {}
  void set(std::size_t i) { blocks_[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool intersects(const Bitset& o) const {
    for (std::size_t k = 0; k < blocks_.size(); ++k)
      if (blocks_[k] & o.blocks_[k]) return true;
    return false;
  }

 private:
  std::vector<std::uint64_t> blocks_;
};

}  // namespace

std::vector<CheckReport> core_suite(const GenBounds& b, int jobs) {
  std::vector<char> pool;
  for (std::size_t k = 0; k < b.name_pool; ++k) pool.push_back(static_cast<char>('a' + k));
  const auto ctxs = gen_ctxs(pool, b.max_ctx, b.max_depth);
  const std::size_t n = ctxs.size();

  // Permutation classes, keyed by the sorted flattening.
  std::map<std::vector<char>, int> class_ids;
  auto class_of = [&](const CharCtx& g) {
    auto [it, fresh] = class_ids.try_emplace(sorted_elems(g), static_cast<int>(class_ids.size()));
    (void)fresh;
    return it->second;
  };
  std::vector<int> cls(n);
  for (std::size_t i = 0; i < n; ++i) cls[i] = class_of(ctxs[i]);
  // Read-only from here on: every multiset within the bound is already keyed.
  auto find_class = [&](const CharCtx& g) { return class_ids.at(sorted_elems(g)); };
  std::vector<std::vector<std::size_t>> members(class_ids.size());
  std::vector<std::vector<std::size_t>> lists_in(class_ids.size());
  std::vector<std::size_t> lists;
  for (std::size_t i = 0; i < n; ++i) {
    members[cls[i]].push_back(i);
    if (is_list(ctxs[i])) {
      lists_in[cls[i]].push_back(i);
      lists.push_back(i);
    }
  }

  // Residual classes of every selection, per element.
  std::vector<std::vector<std::vector<int>>> sel_cls(n, std::vector<std::vector<int>>(pool.size()));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t x = 0; x < pool.size(); ++x)
      for (const auto& s : select(pool[x], ctxs[i])) sel_cls[i][x].push_back(find_class(s.residual));

  // Extraction words, as bitsets over a shared word index.
  std::vector<std::set<std::vector<char>>> words(n);
  std::map<std::vector<char>, std::size_t> word_ids;
  for (std::size_t i = 0; i < n; ++i) {
    words[i] = extraction_words(ctxs[i]);
    for (const auto& w : words[i]) word_ids.try_emplace(w, word_ids.size());
  }
  std::vector<Bitset> word_bits(n, Bitset(word_ids.size()));
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& w : words[i]) word_bits[i].set(word_ids.at(w));

  auto txt = [](const CharCtx& g) { return to_text(g); };
  auto chr = [](char c) { return std::string(1, c); };
  std::vector<CheckReport> out;

  out.push_back(run_check("sel_implies_mem", n, jobs, [&](std::size_t i) -> CaseResult {
    for (char x : pool)
      if (!select(x, ctxs[i]).empty() && !member(x, ctxs[i])) return Bindings{{"X", chr(x)}, {"G", txt(ctxs[i])}};
    return std::nullopt;
  }));

  out.push_back(run_check("mem_replace", n, jobs, [&](std::size_t i) -> CaseResult {
    for (std::size_t j : members[cls[i]]) {
      if (!perm(ctxs[i], ctxs[j])) return Bindings{{"G", txt(ctxs[i])}, {"G2", txt(ctxs[j])}, {"error", "not a permutation"}};
      for (char x : pool)
        if (member(x, ctxs[i]) && !member(x, ctxs[j]))
          return Bindings{{"G", txt(ctxs[i])}, {"G2", txt(ctxs[j])}, {"X", chr(x)}};
    }
    return std::nullopt;
  }));

  out.push_back(run_check("sel_replace", n, jobs, [&](std::size_t i) -> CaseResult {
    for (std::size_t j : members[cls[i]])
      for (std::size_t x = 0; x < pool.size(); ++x)
        for (std::size_t k = 0; k < sel_cls[i][x].size(); ++k) {
          const auto& right = sel_cls[j][x];
          if (std::find(right.begin(), right.end(), sel_cls[i][x][k]) != right.end()) continue;
          return Bindings{{"G1", txt(ctxs[i])},
                          {"G2", txt(ctxs[j])},
                          {"X", chr(pool[x])},
                          {"G1'", txt(select(pool[x], ctxs[i])[k].residual)}};
        }
    return std::nullopt;
  }));

  out.push_back(run_check("perm_eq_perm_rel", n, jobs, [&](std::size_t i) -> CaseResult {
    for (std::size_t j = 0; j < n; ++j)
      if (perm(ctxs[i], ctxs[j]) != word_bits[i].intersects(word_bits[j]))
        return Bindings{{"G1", txt(ctxs[i])}, {"G2", txt(ctxs[j])}, {"perm", perm(ctxs[i], ctxs[j]) ? "yes" : "no"}};
    return std::nullopt;
  }));

  // The literal clause search is exponential, so it is compared with the
  // extraction words on the contexts of depth at most 2.
  std::vector<std::size_t> shallow;
  for (std::size_t i = 0; i < n; ++i)
    if (ctxs[i].depth() <= 2) shallow.push_back(i);
  out.push_back(run_check("perm_rel_extraction", shallow.size(), jobs, [&](std::size_t a) -> CaseResult {
    std::size_t i = shallow[a];
    for (std::size_t j : shallow)
      if (perm_rel(ctxs[i], ctxs[j]) != word_bits[i].intersects(word_bits[j]))
        return Bindings{{"G1", txt(ctxs[i])}, {"G2", txt(ctxs[j])}};
    return std::nullopt;
  }));

  out.push_back(run_check("perm_to_part", n, jobs, [&](std::size_t i) -> CaseResult {
    const CharCtx& g1 = ctxs[i];
    for (std::size_t j = 0; j < n; ++j) {
      const CharCtx& g2 = ctxs[j];
      if (g1.size() + g2.size() > b.max_ctx) continue;
      const CharCtx both = CharCtx::join(g1, g2);
      for (std::size_t li : lists_in[find_class(both)]) {
        const CharCtx& l = ctxs[li];
        Bindings bx{{"L", txt(l)}, {"G1", txt(g1)}, {"G2", txt(g2)}};
        if (!perm(l, both)) return bx;
        auto lp = perm_to_part_mask(l, g1, g2);
        if (!perm(g1, lp.left) || !perm(g2, lp.right) || !is_partition(l, lp.left, lp.right) ||
            !part_to_perm(l, lp.left, lp.right)) {
          bx.push_back({"L1", txt(lp.left)});
          bx.push_back({"L2", txt(lp.right)});
          return bx;
        }
      }
    }
    return std::nullopt;
  }));

  out.push_back(run_check("part_to_perm", lists.size(), jobs, [&](std::size_t a) -> CaseResult {
    const CharCtx& l = ctxs[lists[a]];
    for (const auto& [l1, l2] : partition_list(l))
      if (!is_partition(l, l1, l2) || !part_to_perm(l, l1, l2))
        return Bindings{{"L", txt(l)}, {"L1", txt(l1)}, {"L2", txt(l2)}};
    return std::nullopt;
  }));

  out.push_back(run_check("partition_list_exact", lists.size(), jobs, [&](std::size_t a) -> CaseResult {
    const CharCtx& l = ctxs[lists[a]];
    auto parts = partition_list(l);
    for (std::size_t p : lists)
      for (std::size_t q : lists) {
        const CharCtx& l1 = ctxs[p];
        const CharCtx& l2 = ctxs[q];
        bool listed = std::find(parts.begin(), parts.end(), CtxPair<char>{l1, l2}) != parts.end();
        if (is_partition(l, l1, l2) != listed)
          return Bindings{{"L", txt(l)}, {"L1", txt(l1)}, {"L2", txt(l2)}, {"listed", listed ? "yes" : "no"}};
      }
    return std::nullopt;
  }));

  out.push_back(run_check("partition_count", lists.size(), jobs, [&](std::size_t a) -> CaseResult {
    const CharCtx& l = ctxs[lists[a]];
    std::size_t got = partition_list(l).size();
    if (got != (std::size_t{1} << l.size()))
      return Bindings{{"L", txt(l)}, {"count", std::to_string(got)}};
    return std::nullopt;
  }));

  sort_reports(out);
  return out;
}

// ---------------------------------------------------------------------------
// Typing

namespace {

std::vector<TyAssoc> assoc_pool(const GenBounds& b) {
  std::vector<TyAssoc> pool;
  for (const Name& n : name_pool(b.name_pool))
    for (const Ty& t : type_universe(b.type_depth)) pool.push_back({n, t});
  return pool;
}

std::vector<TyCtx> filtered(const std::vector<TyCtx>& gs, bool (*pred)(const TyCtx&)) {
  std::vector<TyCtx> out;
  for (const auto& g : gs)
    if (pred(g)) out.push_back(g);
  return out;
}

/// The k-th reshape of each half, the last one repeating when a half has
/// fewer shapes.
std::vector<std::pair<TyCtx, TyCtx>> zipped_reshapes(const TyCtx& a, const TyCtx& b) {
  auto ra = reshapes(a);
  auto rb = reshapes(b);
  std::vector<std::pair<TyCtx, TyCtx>> out;
  for (std::size_t k = 0; k < std::max(ra.size(), rb.size()); ++k)
    out.emplace_back(ra[std::min(k, ra.size() - 1)], rb[std::min(k, rb.size() - 1)]);
  return out;
}

CaseResult ty_ctx_mem_case(const TyCtx& g) {
  auto xs = elems(g);
  for (const auto& x : xs) {
    Term t = to_term(x);
    bool shape = t.kind() == Term::Kind::Sym && t.label() == "ty_of" && t.args().size() == 2 &&
                 t.args()[0].kind() == Term::Kind::Nom;
    auto same = std::count_if(xs.begin(), xs.end(), [&](const TyAssoc& y) { return y.name == x.name; });
    if (!shape || same != 1) return Bindings{{"G", to_text(g)}, {"X", to_text(x)}};
  }
  return std::nullopt;
}

CaseResult ty_ctx_uniq_case(const TyCtx& g) {
  auto xs = elems(g);
  for (const auto& x : xs)
    for (const auto& y : xs)
      if (x.name == y.name && x.ty != y.ty)
        return Bindings{{"G", to_text(g)}, {"X", to_text(x.name)}, {"T1", to_text(x.ty)}, {"T2", to_text(y.ty)}};
  return std::nullopt;
}

}  // namespace

std::vector<CheckReport> typing_suite(const GenBounds& b, int jobs) {
  const auto pool = assoc_pool(b);
  const auto good_lists = filtered(gen_ctxs(pool, b.max_ctx, 1), ty_ctx_list);
  const auto good_msets = filtered(gen_ctxs(pool, b.max_ctx, b.max_depth), ty_ctx_mset);
  const auto terms = gen_terms({name_pool(b.name_pool), type_universe(b.type_depth), false}, b.max_term_size);
  std::vector<CheckReport> out;

  out.push_back(run_check("ty_ctx_mem", good_lists.size(), jobs,
                          [&](std::size_t i) { return ty_ctx_mem_case(good_lists[i]); }));
  out.push_back(run_check("ty_ctx_uniq", good_lists.size(), jobs,
                          [&](std::size_t i) { return ty_ctx_uniq_case(good_lists[i]); }));
  out.push_back(run_check("ty_ctx_mem'", good_msets.size(), jobs,
                          [&](std::size_t i) { return ty_ctx_mem_case(good_msets[i]); }));
  out.push_back(run_check("ty_ctx_uniq'", good_msets.size(), jobs,
                          [&](std::size_t i) { return ty_ctx_uniq_case(good_msets[i]); }));

  out.push_back(run_check("ty_uniq", good_lists.size(), jobs, [&](std::size_t i) -> CaseResult {
    const TyCtx& l = good_lists[i];
    const auto ns = names(l);
    for (const Tm& e : terms) {
      auto fn = free_names(e);
      if (!std::includes(ns.begin(), ns.end(), fn.begin(), fn.end())) continue;
      auto all = unique_types(type_of_all(l, e));
      auto inf = type_of_infer(l, e);
      bool ok = all.size() <= 1 && (all.empty() ? !inf : (inf && *inf == all[0]));
      if (!ok)
        return Bindings{{"L", to_text(l)}, {"E", print_term(e)}, {"types", types_text(all)}, {"infer", opt_text(inf)}};
    }
    return std::nullopt;
  }));

  out.push_back(run_check("ty_ctx_distr_part", good_lists.size(), jobs, [&](std::size_t i) -> CaseResult {
    const TyCtx& l = good_lists[i];
    for (const auto& [l1, l2] : partition_list(l))
      if (!ty_ctx_list(l1) || !ty_ctx_list(l2))
        return Bindings{{"L", to_text(l)}, {"L1", to_text(l1)}, {"L2", to_text(l2)}};
    return std::nullopt;
  }));

  out.push_back(run_check("ty_ctx_distr", good_msets.size(), jobs, [&](std::size_t i) -> CaseResult {
    const TyCtx& g = good_msets[i];
    for (const auto& [s1, s2] : splits(g))
      for (const auto& [g1, g2] : zipped_reshapes(s1, s2)) {
        if (!perm(g, TyCtx::join(g1, g2))) return Bindings{{"G", to_text(g)}, {"G1", to_text(g1)}, {"G2", to_text(g2)}};
        if (!ty_ctx_mset(g1) || !ty_ctx_mset(g2))
          return Bindings{{"G", to_text(g)}, {"G1", to_text(g1)}, {"G2", to_text(g2)}};
      }
    return std::nullopt;
  }));

  sort_reports(out);
  return out;
}

// ---------------------------------------------------------------------------
// Relational against algorithmic linear typing

std::vector<CheckReport> oracle_suite(const GenBounds& b, int jobs) {
  const auto lists = filtered(gen_ctxs(assoc_pool(b), b.max_ctx, 1), ty_ctx_list);
  const auto types = type_universe(b.type_depth);
  const auto names = name_pool(b.name_pool);
  const auto lterms = gen_terms({names, types, false}, b.max_term_size);
  const auto mlterms = gen_terms({names, types, true}, b.max_term_size);
  using RelFn = std::vector<Ty> (*)(const TyCtx&, const Tm&);
  using AlgoFn = std::optional<Ty> (*)(const TyCtx&, const Tm&);

  auto oracle = [&](const std::vector<Tm>& terms, RelFn rel, AlgoFn algo) {
    return [&terms, &lists, rel, algo](std::size_t i) -> CaseResult {
      const TyCtx& l = lists[i];
      for (const Tm& e : terms) {
        auto r = unique_types(rel(l, e));
        auto a = algo(l, e);
        bool agree = a ? (r.size() == 1 && r[0] == *a) : r.empty();
        if (!agree)
          return Bindings{{"G", to_text(l)}, {"E", print_term(e)}, {"relational", types_text(r)}, {"algorithmic", opt_text(a)}};
      }
      return std::nullopt;
    };
  };

  auto invariance = [&](const std::vector<Tm>& terms, RelFn rel) {
    return [&terms, &lists, rel](std::size_t i) -> CaseResult {
      const TyCtx& l = lists[i];
      auto shapes = reshapes(l);
      for (const Tm& e : terms) {
        auto base = unique_types(rel(l, e));
        for (const TyCtx& g : shapes)
          if (unique_types(rel(g, e)) != base)
            return Bindings{{"G", to_text(l)}, {"G'", to_text(g)}, {"E", print_term(e)}};
      }
      return std::nullopt;
    };
  };

  std::vector<CheckReport> out;
  out.push_back(run_check("ltype_oracle", lists.size(), jobs, oracle(lterms, ltype_types, ltype_check_top)));
  out.push_back(run_check("mltype_oracle", lists.size(), jobs, oracle(mlterms, mltype_types, mltype_check_top)));
  out.push_back(run_check("ltype_perm_invariant", lists.size(), jobs, invariance(lterms, ltype_types)));
  out.push_back(run_check("mltype_perm_invariant", lists.size(), jobs, invariance(mlterms, mltype_types)));
  out.push_back(run_check("linear_implies_intuitionistic", lists.size(), jobs, [&](std::size_t i) -> CaseResult {
    const TyCtx& l = lists[i];
    for (const Tm& e : lterms) {
      auto lin = unique_types(ltype_types(l, e));
      auto intu = unique_types(type_of_all(l, e));
      if (!std::includes(intu.begin(), intu.end(), lin.begin(), lin.end()))
        return Bindings{{"G", to_text(l)}, {"E", print_term(e)}, {"linear", types_text(lin)}, {"intuitionistic", types_text(intu)}};
    }
    return std::nullopt;
  }));
  sort_reports(out);
  return out;
}

// ---------------------------------------------------------------------------
// Translation

namespace {

struct Triple {
  TyCtx g1;
  VarCtx g2;
  TyCtx g3;
};

Bindings triple_bindings(const Triple& t) {
  return {{"G1", to_text(t.g1)}, {"G2", to_text(t.g2)}, {"G3", to_text(t.g3)}};
}

Bindings with(Bindings b, std::initializer_list<std::pair<std::string, std::string>> more) {
  b.insert(b.end(), more.begin(), more.end());
  return b;
}

/// Row k relates `ty_of n<k> T`, `trans_to n<k> m<k>` and `ty_of m<k> T`.
std::vector<Triple> list_triples(const GenBounds& b) {
  const auto types = type_universe(b.type_depth);
  std::vector<Triple> out;
  std::vector<std::vector<Ty>> rows{{}};
  for (std::size_t r = 0; r <= b.max_ctx; ++r) {
    for (const auto& tys : rows) {
      std::vector<TyAssoc> l1, l3;
      std::vector<VarAssoc> l2;
      for (std::size_t k = 0; k < tys.size(); ++k) {
        Name x{"n", static_cast<std::uint32_t>(k + 1)};
        Name y{"m", static_cast<std::uint32_t>(k + 1)};
        l1.push_back({x, tys[k]});
        l2.push_back({x, y});
        l3.push_back({y, tys[k]});
      }
      out.push_back({TyCtx::list(l1), VarCtx::list(l2), TyCtx::list(l3)});
    }
    std::vector<std::vector<Ty>> next;
    for (const auto& tys : rows)
      for (const Ty& t : types) {
        next.push_back(tys);
        next.back().push_back(t);
      }
    rows = std::move(next);
  }
  return out;
}

template <class E>
std::vector<Ctx<E>> bounded_reshapes(const Ctx<E>& l, std::size_t max_depth) {
  std::vector<Ctx<E>> out;
  for (auto& g : reshapes(l))
    if (g.depth() <= max_depth) out.push_back(std::move(g));
  return out;
}

std::vector<Triple> mset_triples(const std::vector<Triple>& lists, const GenBounds& b, bool product) {
  std::vector<Triple> out;
  for (const auto& t : lists) {
    auto r1 = bounded_reshapes(t.g1, b.max_depth);
    auto r2 = bounded_reshapes(t.g2, b.max_depth);
    auto r3 = bounded_reshapes(t.g3, b.max_depth);
    if (product) {
      for (const auto& a : r1)
        for (const auto& c : r2)
          for (const auto& d : r3) out.push_back({a, c, d});
    } else {
      std::size_t k = std::max({r1.size(), r2.size(), r3.size()});
      for (std::size_t i = 0; i < k; ++i)
        out.push_back({r1[std::min(i, r1.size() - 1)], r2[std::min(i, r2.size() - 1)], r3[std::min(i, r3.size() - 1)]});
    }
  }
  return out;
}

template <class E, class P>
std::vector<E> matching(const Ctx<E>& g, P p) {
  std::vector<E> out;
  for (const auto& x : elems(g))
    if (p(x)) out.push_back(x);
  return out;
}

CaseResult mem2(const Triple& t) {
  for (const auto& e : elems(t.g2)) {
    bool found = false;
    for (const auto& a : matching(t.g1, [&](const TyAssoc& x) { return x.name == e.src; }))
      found = found || member(TyAssoc{e.dst, a.ty}, t.g3);
    if (!found) return with(triple_bindings(t), {{"E", to_text(e)}});
  }
  return std::nullopt;
}

CaseResult mem1(const Triple& t) {
  for (const auto& e : elems(t.g1)) {
    bool found = false;
    for (const auto& v : matching(t.g2, [&](const VarAssoc& x) { return x.src == e.name; }))
      found = found || member(TyAssoc{v.dst, e.ty}, t.g3);
    if (!found) return with(triple_bindings(t), {{"E", to_text(e)}});
  }
  return std::nullopt;
}

CaseResult mem3(const Triple& t) {
  for (const auto& e : elems(t.g3)) {
    bool found = false;
    for (const auto& v : matching(t.g2, [&](const VarAssoc& x) { return x.dst == e.name; }))
      found = found || member(TyAssoc{v.src, e.ty}, t.g1);
    if (!found) return with(triple_bindings(t), {{"E", to_text(e)}});
  }
  return std::nullopt;
}

CaseResult uniq_ty(const Triple& t, const TyCtx& g) {
  for (const auto& x : elems(g))
    for (const auto& y : elems(g))
      if (x.name == y.name && x.ty != y.ty)
        return with(triple_bindings(t), {{"X", to_text(x.name)}, {"T1", to_text(x.ty)}, {"T2", to_text(y.ty)}});
  return std::nullopt;
}

CaseResult uniq2(const Triple& t, bool by_src) {
  for (const auto& x : elems(t.g2))
    for (const auto& y : elems(t.g2)) {
      bool clash = by_src ? (x.src == y.src && x.dst != y.dst) : (x.dst == y.dst && x.src != y.src);
      if (clash) return with(triple_bindings(t), {{"E1", to_text(x)}, {"E2", to_text(y)}});
    }
  return std::nullopt;
}

CaseResult trans_rel_sel_case(const Triple& t) {
  for (const auto& e : distinct(elems(t.g2)))
    for (const auto& s2 : select(e, t.g2)) {
      bool found = false;
      for (const auto& a : distinct(matching(t.g1, [&](const TyAssoc& x) { return x.name == e.src; })))
        for (const auto& s1 : select(a, t.g1))
          for (const auto& s3 : select(TyAssoc{e.dst, a.ty}, t.g3))
            found = found || trans_rel_mset(s1.residual, s2.residual, s3.residual);
      if (!found) return with(triple_bindings(t), {{"E", to_text(e)}, {"G2'", to_text(s2.residual)}});
    }
  return std::nullopt;
}

/// Positions of `l` that went right in the ordered partition `(l1, l2)`.
/// The elements of `l` are distinct here, so the mask is determined.
std::vector<bool> side_mask(const TyCtx& l, const TyCtx& l2) {
  std::vector<bool> mask;
  for (const auto& x : elems(l)) mask.push_back(member(x, l2));
  return mask;
}

}  // namespace

std::vector<CheckReport> translation_suite(const GenBounds& b, int jobs) {
  const auto lists = list_triples(b);
  const auto msets = mset_triples(lists, b, true);
  const auto zipped = mset_triples(lists, b, false);
  std::vector<CheckReport> out;

  auto over_msets = [&](std::string name, CaseResult (*f)(const Triple&)) {
    out.push_back(run_check(std::move(name), msets.size(), jobs, [&, f](std::size_t i) -> CaseResult {
      const Triple& t = msets[i];
      if (!trans_rel_mset(t.g1, t.g2, t.g3)) return with(triple_bindings(t), {{"error", "trans_rel does not hold"}});
      return f(t);
    }));
  };
  over_msets("trans_rel_mem", mem2);
  over_msets("trans_rel_mem1", mem1);
  over_msets("trans_rel_mem3", mem3);
  over_msets("trans_rel_uniq", [](const Triple& t) { return uniq2(t, true); });
  over_msets("trans_rel_uniq_dst", [](const Triple& t) { return uniq2(t, false); });
  over_msets("trans_rel_uniq1", [](const Triple& t) { return uniq_ty(t, t.g1); });
  over_msets("trans_rel_uniq3", [](const Triple& t) { return uniq_ty(t, t.g3); });
  over_msets("trans_rel_sel", trans_rel_sel_case);
  over_msets("sel_implies_mem", [](const Triple& t) -> CaseResult {
    for (const auto& x : elems(t.g1))
      if (!select(x, t.g1).empty() && !member(x, t.g1)) return with(triple_bindings(t), {{"X", to_text(x)}});
    for (const auto& x : elems(t.g2))
      if (!select(x, t.g2).empty() && !member(x, t.g2)) return with(triple_bindings(t), {{"X", to_text(x)}});
    for (const auto& x : elems(t.g3))
      if (!select(x, t.g3).empty() && !member(x, t.g3)) return with(triple_bindings(t), {{"X", to_text(x)}});
    return std::nullopt;
  });

  out.push_back(run_check("trans_rel_list_distr", lists.size(), jobs, [&](std::size_t i) -> CaseResult {
    const Triple& t = lists[i];
    for (const auto& [l1a, l1b] : partition_list(t.g1)) {
      auto mask = side_mask(t.g1, l1b);
      auto [l2a, l2b] = split_by_mask(t.g2, mask);
      auto [l3a, l3b] = split_by_mask(t.g3, mask);
      if (!trans_rel_list(l1a, l2a, l3a) || !trans_rel_list(l1b, l2b, l3b) || !is_partition(t.g2, l2a, l2b) ||
          !is_partition(t.g3, l3a, l3b))
        return with(triple_bindings(t), {{"L1'", to_text(l1a)}, {"L1''", to_text(l1b)}});
    }
    return std::nullopt;
  }));

  out.push_back(run_check("trans_rel_distr", msets.size(), jobs, [&](std::size_t i) -> CaseResult {
    const Triple& t = msets[i];
    auto w = trans_rel_witness(t.g1, t.g2, t.g3);
    if (!w) return with(triple_bindings(t), {{"error", "trans_rel does not hold"}});
    for (const auto& [s1, s2] : splits(t.g1))
      for (const auto& [h1, h2] : zipped_reshapes(s1, s2)) {
        auto lp = perm_to_part_mask(w->l1, h1, h2);
        auto [l2a, l2b] = split_by_mask(w->l2, lp.to_right);
        auto [l3a, l3b] = split_by_mask(w->l3, lp.to_right);
        bool ok = perm(t.g2, VarCtx::join(l2a, l2b)) && perm(t.g3, TyCtx::join(l3a, l3b)) &&
                  trans_rel_mset(h1, l2a, l3a) && trans_rel_mset(h2, l2b, l3b);
        if (!ok) return with(triple_bindings(t), {{"G1'", to_text(h1)}, {"G1''", to_text(h2)}});
      }
    return std::nullopt;
  }));

  // Source terms using the row names n1..nr exactly once each.
  const auto types = type_universe(b.type_depth);
  const auto all_terms = gen_terms({name_pool(b.max_ctx), types, true}, b.max_term_size);
  std::vector<std::vector<Tm>> linear_terms(b.max_ctx + 1);
  for (const Tm& e : all_terms) {
    auto fn = free_names(e);
    std::size_t r = fn.size();
    bool ok = true;
    for (std::size_t k = 1; k <= r && ok; ++k) {
      Name x{"n", static_cast<std::uint32_t>(k)};
      ok = fn.count(x) && occurrences(e, x) == 1;
    }
    if (ok && r <= b.max_ctx) linear_terms[r].push_back(e);
  }

  out.push_back(run_check("ltrans_pres_ty", zipped.size(), jobs, [&](std::size_t i) -> CaseResult {
    const Triple& t = zipped[i];
    for (const Tm& e : linear_terms[t.g1.size()]) {
      auto src = unique_types(mltype_types(t.g1, e));
      if (src.empty()) continue;
      for (const Tm& e2 : ltrans_image(t.g2, e))
        for (const Ty& t2 : ltype_types(t.g3, e2))
          if (src.size() != 1 || t2 != src[0])
            return with(triple_bindings(t), {{"E", print_term(e)}, {"E'", print_term(e2)}, {"T", types_text(src)}, {"T'", to_text(t2)}});
    }
    return std::nullopt;
  }));

  out.push_back(run_check("translate_sound", lists.size(), jobs, [&](std::size_t i) -> CaseResult {
    const Triple& t = lists[i];
    for (const Tm& e : linear_terms[t.g1.size()]) {
      auto image = ltrans_image(t.g2, e);
      if (image.size() > 1)
        return with(triple_bindings(t), {{"E", print_term(e)}, {"E'", print_term(image[0])}, {"E''", print_term(image[1])}});
      std::optional<Tm> got;
      try {
        got = translate(t.g2, e);
      } catch (const TranslationError&) {
        got.reset();
      }
      bool ok = got ? (image.size() == 1 && image[0] == *got) : image.empty();
      if (!ok)
        return with(triple_bindings(t), {{"E", print_term(e)}, {"translate", got ? print_term(*got) : "error"}});
    }
    return std::nullopt;
  }));

  sort_reports(out);
  return out;
}

// ---------------------------------------------------------------------------
// Elaborated predicates against the hand-written ones

namespace {

TermCtx term_ctx(const TyCtx& g) { return map_ctx(g, [](const TyAssoc& a) { return to_term(a); }); }
TermCtx term_ctx(const VarCtx& g) { return map_ctx(g, [](const VarAssoc& a) { return to_term(a); }); }

const ContextSpec* lookup(const std::vector<ContextSpec>& specs, const std::string& name) {
  for (const auto& s : specs)
    if (s.name == name) return &s;
  return nullptr;
}

/// Small variations of a coordinated triple, mostly breaking the relation.
std::vector<Triple> mutants(const Triple& t, const std::vector<Ty>& types) {
  std::vector<Triple> out;
  auto e1 = elems(t.g1);
  auto e2 = elems(t.g2);
  auto e3 = elems(t.g3);
  if (!e3.empty()) {
    auto m = e3;
    m[0].ty = m[0].ty == types[0] ? types[1] : types[0];
    out.push_back({t.g1, t.g2, TyCtx::list(m)});
  }
  if (!e2.empty()) {
    auto m = e2;
    m[0].dst = m.back().dst == m[0].dst ? Name{"m", 9} : m.back().dst;
    out.push_back({t.g1, VarCtx::list(m), t.g3});
    std::vector<VarAssoc> rest(e2.begin() + 1, e2.end());
    out.push_back({t.g1, VarCtx::list(rest), t.g3});
  }
  if (!e1.empty()) {
    auto m = e1;
    m.push_back(e1[0]);
    out.push_back({TyCtx::list(m), t.g2, t.g3});
    m = e1;
    m[0].name = e2.empty() ? Name{"n", 9} : e2[0].dst;
    out.push_back({TyCtx::list(m), t.g2, t.g3});
  }
  return out;
}

}  // namespace

std::vector<CheckReport> fidelity_suite(const std::vector<ContextSpec>& specs, const GenBounds& b, int jobs) {
  std::vector<CheckReport> out;
  if (const ContextSpec* s = lookup(specs, "ty_ctx'")) {
    const auto pool = assoc_pool(b);
    const auto ls = gen_ctxs(pool, b.max_ctx, 1);
    const auto gs = gen_ctxs(pool, b.max_ctx, b.max_depth);
    out.push_back(run_check(s->name + "_list_fidelity", ls.size(), jobs, [&](std::size_t i) -> CaseResult {
      bool a = check_list_pred(*s, {term_ctx(ls[i])});
      if (a != ty_ctx_list(ls[i])) return Bindings{{"L", to_text(ls[i])}, {"elaborated", a ? "yes" : "no"}};
      return std::nullopt;
    }));
    out.push_back(run_check(s->name + "_mset_fidelity", gs.size(), jobs, [&](std::size_t i) -> CaseResult {
      bool a = check_mset_pred(*s, {term_ctx(gs[i])});
      if (a != ty_ctx_mset(gs[i])) return Bindings{{"G", to_text(gs[i])}, {"elaborated", a ? "yes" : "no"}};
      return std::nullopt;
    }));
  }
  if (const ContextSpec* s = lookup(specs, "trans_rel")) {
    const auto types = type_universe(b.type_depth);
    const auto lists = list_triples(b);
    std::vector<Triple> list_inputs;
    for (const auto& t : lists) {
      list_inputs.push_back(t);
      for (auto& m : mutants(t, types)) list_inputs.push_back(std::move(m));
    }
    std::vector<Triple> mset_inputs = mset_triples(lists, b, true);
    for (auto& m : mset_triples(list_inputs, b, false))
      mset_inputs.push_back(std::move(m));

    // Every triple of short lists over a few overlapping names.
    const std::vector<Ty> ab{Ty::base("a"), Ty::base("b")};
    const Name n1{"n", 1}, n2{"n", 2}, m1{"m", 1}, m2{"m", 2};
    std::vector<TyAssoc> p1, p3;
    for (const Ty& t : ab) {
      for (const Name& x : {n1, n2, m1}) p1.push_back({x, t});
      for (const Name& y : {m1, m2, n1}) p3.push_back({y, t});
    }
    std::vector<VarAssoc> p2;
    for (const Name& x : {n1, n2})
      for (const Name& y : {m1, m2}) p2.push_back({x, y});
    const auto c1 = gen_ctxs(p1, 2, 1);
    const auto c2 = gen_ctxs(p2, 2, 1);
    const auto c3 = gen_ctxs(p3, 2, 1);

    auto agree = [s](const Triple& t, bool list_level) -> CaseResult {
      CtxTuple ts{term_ctx(t.g1), term_ctx(t.g2), term_ctx(t.g3)};
      bool a = list_level ? check_list_pred(*s, ts) : check_mset_pred(*s, ts);
      bool h = list_level ? trans_rel_list(t.g1, t.g2, t.g3) : trans_rel_mset(t.g1, t.g2, t.g3);
      if (a != h) return with(triple_bindings(t), {{"elaborated", a ? "yes" : "no"}});
      return std::nullopt;
    };
    out.push_back(run_check(s->name + "_list_fidelity", list_inputs.size(), jobs,
                            [&](std::size_t i) { return agree(list_inputs[i], true); }));
    out.push_back(run_check(s->name + "_mset_fidelity", mset_inputs.size(), jobs,
                            [&](std::size_t i) { return agree(mset_inputs[i], false); }));
    out.push_back(run_check(s->name + "_small_fidelity", c1.size(), jobs, [&](std::size_t i) -> CaseResult {
      for (const auto& g2 : c2)
        for (const auto& g3 : c3) {
          Triple t{c1[i], g2, g3};
          if (auto cx = agree(t, true)) return cx;
          if (auto cx = agree(t, false)) return cx;
        }
      return std::nullopt;
    }));
  }
  sort_reports(out);
  return out;
}

std::vector<CheckReport> spec_suite(const std::vector<ContextSpec>& specs, const std::vector<LemmaStmt>& lemmas,
                                    const GenBounds& b, const CheckOptions& opts, int jobs, bool list_only) {
  std::vector<CheckReport> out;
  if (!list_only)
    for (const auto& s : specs)
      for (std::size_t i = 1; i <= s.arity; ++i) out.push_back(check_distr(s, i, b, opts, jobs));
  for (const auto& l : lemmas) {
    const ContextSpec& s = find_spec(specs, l.spec);
    if (list_only && l.level != Level::List) continue;
    out.push_back(verify_lemma(s, l, b, opts, jobs));
    if (l.level == Level::List && !list_only) {
      LiftedLemma lifted = lift_lemma(s, l, opts);
      out.push_back(verify_lifted(s, lifted, b, opts, jobs));
    }
  }
  sort_reports(out);
  return out;
}

}  // namespace bctx

#pragma once

// Multiset binding contexts built from `nil`, `::` and `++`, together with
// the relational vocabulary used to reason about them: member, select,
// no_elems, perm and the ordered list partition.

#include <algorithm>
#include <cassert>
#include <compare>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "bctx/errors.hpp"

namespace bctx {

/// Element types must be totally ordered so that permutation can be decided
/// by sorting and generators can emit a canonical order.
template <class E>
concept ContextElement = std::copyable<E> && std::totally_ordered<E>;

enum class Step : std::uint8_t { AtHead, InTail, InLeft, InRight };

/// Locates one element occurrence inside a context tree.
using OccPath = std::vector<Step>;

template <ContextElement E>
struct CtxNode;

template <ContextElement E>
class Ctx {
 public:
  enum class Kind : std::uint8_t { Empty, Cons, Union };

  Ctx() = default;

  static Ctx empty() { return Ctx(); }
  static Ctx cons(E head, Ctx tail);
  static Ctx join(Ctx left, Ctx right);

  /// Builds the list `x1 :: x2 :: ... :: nil`.
  static Ctx list(std::span<const E> xs);
  static Ctx list(std::initializer_list<E> xs) {
    return list(std::span<const E>(xs.begin(), xs.size()));
  }
  static Ctx list(const std::vector<E>& xs) { return list(std::span<const E>(xs)); }

  Kind kind() const;
  bool is_empty_node() const { return kind() == Kind::Empty; }

  const E& head() const;
  const Ctx& tail() const;
  const Ctx& left() const;
  const Ctx& right() const;

  /// Number of `Cons` nodes.
  std::size_t size() const;

  /// `nil` has depth 1, `::` keeps the depth of its tail and `++` adds one
  /// level above the deeper of its children.
  std::size_t depth() const;

  friend bool operator==(const Ctx& a, const Ctx& b) { return compare(a, b) == 0; }
  friend bool operator<(const Ctx& a, const Ctx& b) { return compare(a, b) < 0; }
  friend bool operator!=(const Ctx& a, const Ctx& b) { return !(a == b); }
  friend bool operator>(const Ctx& a, const Ctx& b) { return b < a; }
  friend bool operator<=(const Ctx& a, const Ctx& b) { return !(b < a); }
  friend bool operator>=(const Ctx& a, const Ctx& b) { return !(a < b); }

  /// Structural order: Empty < Cons < Union, then fields left to right.
  static int compare(const Ctx& a, const Ctx& b);

 private:
  explicit Ctx(std::shared_ptr<const CtxNode<E>> node) : node_(std::move(node)) {}

  std::shared_ptr<const CtxNode<E>> node_;
};

template <ContextElement E>
struct CtxNode {
  typename Ctx<E>::Kind kind;
  std::optional<E> head;
  Ctx<E> first;   // tail for Cons, left for Union
  Ctx<E> second;  // right for Union
  std::size_t count;
  std::size_t depth;
};

template <ContextElement E>
Ctx<E> Ctx<E>::cons(E head, Ctx tail) {
  std::size_t count = tail.size() + 1;
  std::size_t depth = tail.depth();
  return Ctx(std::make_shared<const CtxNode<E>>(
      CtxNode<E>{Kind::Cons, std::move(head), std::move(tail), Ctx(), count, depth}));
}

template <ContextElement E>
Ctx<E> Ctx<E>::join(Ctx left, Ctx right) {
  std::size_t count = left.size() + right.size();
  std::size_t depth = 1 + std::max(left.depth(), right.depth());
  return Ctx(std::make_shared<const CtxNode<E>>(
      CtxNode<E>{Kind::Union, std::nullopt, std::move(left), std::move(right), count, depth}));
}

template <ContextElement E>
Ctx<E> Ctx<E>::list(std::span<const E> xs) {
  Ctx out;
  for (auto it = xs.rbegin(); it != xs.rend(); ++it) out = cons(*it, std::move(out));
  return out;
}

template <ContextElement E>
typename Ctx<E>::Kind Ctx<E>::kind() const {
  return node_ ? node_->kind : Kind::Empty;
}

template <ContextElement E>
const E& Ctx<E>::head() const {
  assert(kind() == Kind::Cons);
  return *node_->head;
}

template <ContextElement E>
const Ctx<E>& Ctx<E>::tail() const {
  assert(kind() == Kind::Cons);
  return node_->first;
}

template <ContextElement E>
const Ctx<E>& Ctx<E>::left() const {
  assert(kind() == Kind::Union);
  return node_->first;
}

template <ContextElement E>
const Ctx<E>& Ctx<E>::right() const {
  assert(kind() == Kind::Union);
  return node_->second;
}

template <ContextElement E>
std::size_t Ctx<E>::size() const {
  return node_ ? node_->count : 0;
}

template <ContextElement E>
std::size_t Ctx<E>::depth() const {
  return node_ ? node_->depth : 1;
}

template <ContextElement E>
int Ctx<E>::compare(const Ctx& a, const Ctx& b) {
  if (a.node_ == b.node_) return 0;
  auto ka = static_cast<int>(a.kind());
  auto kb = static_cast<int>(b.kind());
  if (ka != kb) return ka < kb ? -1 : 1;
  switch (a.kind()) {
    case Kind::Empty:
      return 0;
    case Kind::Cons:
      if (a.head() < b.head()) return -1;
      if (b.head() < a.head()) return 1;
      return compare(a.tail(), b.tail());
    case Kind::Union:
      if (int c = compare(a.left(), b.left()); c != 0) return c;
      return compare(a.right(), b.right());
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Core relations

/// In-order flattening: a `::` head precedes its tail, and a union
/// contributes its left child before its right.
template <ContextElement E>
void append_elems(const Ctx<E>& g, std::vector<E>& out) {
  const Ctx<E>* cur = &g;
  while (true) {
    switch (cur->kind()) {
      case Ctx<E>::Kind::Empty:
        return;
      case Ctx<E>::Kind::Cons:
        out.push_back(cur->head());
        cur = &cur->tail();
        break;
      case Ctx<E>::Kind::Union:
        append_elems(cur->left(), out);
        cur = &cur->right();
        break;
    }
  }
}

template <ContextElement E>
std::vector<E> elems(const Ctx<E>& g) {
  std::vector<E> out;
  out.reserve(g.size());
  append_elems(g, out);
  return out;
}

template <ContextElement E>
std::vector<E> sorted_elems(const Ctx<E>& g) {
  auto xs = elems(g);
  std::sort(xs.begin(), xs.end());
  return xs;
}

template <ContextElement E>
bool member(const E& x, const Ctx<E>& g) {
  switch (g.kind()) {
    case Ctx<E>::Kind::Empty:
      return false;
    case Ctx<E>::Kind::Cons:
      return g.head() == x || member(x, g.tail());
    case Ctx<E>::Kind::Union:
      return member(x, g.left()) || member(x, g.right());
  }
  return false;
}

template <ContextElement E>
struct Selection {
  OccPath path;
  Ctx<E> residual;
};

/// Every way of removing one occurrence of `x` from `g`, in the order the
/// defining clauses produce them: the head before the tail, the left child
/// before the right.
template <ContextElement E>
std::vector<Selection<E>> select(const E& x, const Ctx<E>& g) {
  std::vector<Selection<E>> out;
  auto prefixed = [](Step s, OccPath p) {
    p.insert(p.begin(), s);
    return p;
  };
  switch (g.kind()) {
    case Ctx<E>::Kind::Empty:
      break;
    case Ctx<E>::Kind::Cons:
      if (g.head() == x) out.push_back({OccPath{Step::AtHead}, g.tail()});
      for (auto& s : select(x, g.tail()))
        out.push_back({prefixed(Step::InTail, std::move(s.path)),
                       Ctx<E>::cons(g.head(), std::move(s.residual))});
      break;
    case Ctx<E>::Kind::Union:
      for (auto& s : select(x, g.left()))
        out.push_back({prefixed(Step::InLeft, std::move(s.path)),
                       Ctx<E>::join(std::move(s.residual), g.right())});
      for (auto& s : select(x, g.right()))
        out.push_back({prefixed(Step::InRight, std::move(s.path)),
                       Ctx<E>::join(g.left(), std::move(s.residual))});
      break;
  }
  return out;
}

/// Follows `path` to the element occurrence it names.
template <ContextElement E>
const E& resolve(const Ctx<E>& g, const OccPath& path) {
  const Ctx<E>* cur = &g;
  for (Step s : path) {
    switch (s) {
      case Step::AtHead:
        if (cur->kind() != Ctx<E>::Kind::Cons) throw PreconditionViolated("path does not resolve");
        return cur->head();
      case Step::InTail:
        if (cur->kind() != Ctx<E>::Kind::Cons) throw PreconditionViolated("path does not resolve");
        cur = &cur->tail();
        break;
      case Step::InLeft:
      case Step::InRight:
        if (cur->kind() != Ctx<E>::Kind::Union) throw PreconditionViolated("path does not resolve");
        cur = s == Step::InLeft ? &cur->left() : &cur->right();
        break;
    }
  }
  throw PreconditionViolated("path does not end at a head");
}

template <ContextElement E>
bool no_elems(const Ctx<E>& g) {
  switch (g.kind()) {
    case Ctx<E>::Kind::Empty:
      return true;
    case Ctx<E>::Kind::Cons:
      return false;
    case Ctx<E>::Kind::Union:
      return no_elems(g.left()) && no_elems(g.right());
  }
  return false;
}

template <ContextElement E>
bool is_list(const Ctx<E>& g) {
  const Ctx<E>* cur = &g;
  while (cur->kind() == Ctx<E>::Kind::Cons) cur = &cur->tail();
  return cur->kind() == Ctx<E>::Kind::Empty;
}

/// Decided by comparing the sorted flattenings.
template <ContextElement E>
bool perm(const Ctx<E>& g1, const Ctx<E>& g2) {
  if (g1.size() != g2.size()) return false;
  return sorted_elems(g1) == sorted_elems(g2);
}

/// Literal search over the two inductive clauses of the permutation
/// relation. Exponential; only used to cross-check `perm`.
template <ContextElement E>
bool perm_rel(const Ctx<E>& g1, const Ctx<E>& g2) {
  if (no_elems(g1) && no_elems(g2)) return true;
  auto candidates = elems(g1);
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  for (const E& x : candidates) {
    auto right = select(x, g2);
    if (right.empty()) continue;
    for (const auto& s1 : select(x, g1))
      for (const auto& s2 : right)
        if (perm_rel(s1.residual, s2.residual)) return true;
  }
  return false;
}

/// The element sequences along which `g` can be emptied by repeated
/// `select`, ending in a context with no elements. Unfolding the second
/// permutation clause shows that `perm_rel(g1, g2)` holds exactly when the
/// two sets intersect, which turns the clause search into a per-context
/// computation.
template <ContextElement E>
std::set<std::vector<E>> extraction_words(const Ctx<E>& g) {
  std::set<std::vector<E>> out;
  if (no_elems(g)) out.insert(std::vector<E>{});
  auto candidates = elems(g);
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  for (const E& x : candidates)
    for (const auto& s : select(x, g))
      for (auto w : extraction_words(s.residual)) {
        w.insert(w.begin(), x);
        out.insert(std::move(w));
      }
  return out;
}

template <ContextElement E>
using CtxPair = std::pair<Ctx<E>, Ctx<E>>;

/// All `(L1, L2)` with `partition L L1 L2` derivable. For each head the
/// "goes left" derivations are listed before the "goes right" ones.
template <ContextElement E>
std::vector<CtxPair<E>> partition_list(const Ctx<E>& l) {
  if (!is_list(l)) throw PreconditionViolated("partition_list expects a list-form context");
  if (l.kind() == Ctx<E>::Kind::Empty) return {{Ctx<E>(), Ctx<E>()}};
  auto rest = partition_list(l.tail());
  std::vector<CtxPair<E>> out;
  out.reserve(rest.size() * 2);
  for (const auto& [l1, l2] : rest) out.emplace_back(Ctx<E>::cons(l.head(), l1), l2);
  for (const auto& [l1, l2] : rest) out.emplace_back(l1, Ctx<E>::cons(l.head(), l2));
  return out;
}

/// Decides whether `partition L L1 L2` is derivable.
template <ContextElement E>
bool is_partition(const Ctx<E>& l, const Ctx<E>& l1, const Ctx<E>& l2) {
  using K = typename Ctx<E>::Kind;
  if (!is_list(l) || !is_list(l1) || !is_list(l2)) return false;
  if (l.kind() == K::Empty) return l1.kind() == K::Empty && l2.kind() == K::Empty;
  if (l1.kind() == K::Cons && l1.head() == l.head() && is_partition(l.tail(), l1.tail(), l2))
    return true;
  return l2.kind() == K::Cons && l2.head() == l.head() && is_partition(l.tail(), l1, l2.tail());
}

/// Splits a list by a per-position side mask (false = left, true = right).
template <ContextElement E>
CtxPair<E> split_by_mask(const Ctx<E>& l, const std::vector<bool>& to_right) {
  auto xs = elems(l);
  if (!is_list(l) || xs.size() != to_right.size())
    throw PreconditionViolated("mask does not fit the list");
  std::vector<E> a, b;
  for (std::size_t i = 0; i < xs.size(); ++i) (to_right[i] ? b : a).push_back(xs[i]);
  return {Ctx<E>::list(a), Ctx<E>::list(b)};
}

/// Canonical solutions of `G ~ G1 ++ G2`: the list partitions of the
/// flattening of `G`. Complete up to permutation of either half.
template <ContextElement E>
std::vector<CtxPair<E>> splits(const Ctx<E>& g) {
  return partition_list(Ctx<E>::list(elems(g)));
}

/// Membership survives permutation. Throws when `x` is not in `g` or the
/// two contexts are not permutations of each other.
template <ContextElement E>
bool mem_transport(const E& x, const Ctx<E>& g, const Ctx<E>& g2) {
  if (!member(x, g)) throw PreconditionViolated("mem_transport: element is not a member");
  if (!perm(g, g2)) throw PreconditionViolated("mem_transport: contexts are not permutations");
  return member(x, g2);
}

/// Selection on `g2` mirroring a selection on a permutation `g1` of it.
/// Returns the first residual (in `select` order) that permutes to `g1r`.
template <ContextElement E>
Selection<E> sel_transport_at(const E& x, const Ctx<E>& g1, const Ctx<E>& g1r, const Ctx<E>& g2) {
  if (!perm(g1, g2)) throw PreconditionViolated("sel_transport: contexts are not permutations");
  auto here = select(x, g1);
  bool is_residual = std::any_of(here.begin(), here.end(),
                                 [&](const Selection<E>& s) { return s.residual == g1r; });
  if (!is_residual) throw PreconditionViolated("sel_transport: not a residual of select");
  for (auto& s : select(x, g2))
    if (perm(g1r, s.residual)) return std::move(s);
  throw std::logic_error("sel_transport: no matching residual (select replacement failed)");
}

template <ContextElement E>
Ctx<E> sel_transport(const E& x, const Ctx<E>& g1, const Ctx<E>& g1r, const Ctx<E>& g2) {
  return sel_transport_at(x, g1, g1r, g2).residual;
}

template <ContextElement E>
struct ListPartition {
  Ctx<E> left;
  Ctx<E> right;
  std::vector<bool> to_right;  // side taken by each position of the source list
};

/// Flattens `L ~ G1 ++ G2` into an ordered partition of `L`. Elements are
/// pulled front to back from whichever side holds them, `g1` first.
template <ContextElement E>
ListPartition<E> perm_to_part_mask(const Ctx<E>& l, const Ctx<E>& g1, const Ctx<E>& g2) {
  if (!is_list(l)) throw PreconditionViolated("perm_to_part expects a list-form context");
  Ctx<E> rest = Ctx<E>::join(g1, g2);
  if (!perm(l, rest)) throw PreconditionViolated("perm_to_part: L is not a permutation of G1 ++ G2");
  ListPartition<E> out;
  std::vector<E> a, b;
  for (const Ctx<E>* cur = &l; cur->kind() == Ctx<E>::Kind::Cons; cur = &cur->tail()) {
    const E& x = cur->head();
    auto s = sel_transport_at(x, *cur, cur->tail(), rest);
    bool right = s.path.front() == Step::InRight;
    (right ? b : a).push_back(x);
    out.to_right.push_back(right);
    rest = std::move(s.residual);
  }
  out.left = Ctx<E>::list(a);
  out.right = Ctx<E>::list(b);
  return out;
}

template <ContextElement E>
CtxPair<E> perm_to_part(const Ctx<E>& l, const Ctx<E>& g1, const Ctx<E>& g2) {
  auto p = perm_to_part_mask(l, g1, g2);
  return {std::move(p.left), std::move(p.right)};
}

template <ContextElement E>
bool part_to_perm(const Ctx<E>& l, const Ctx<E>& l1, const Ctx<E>& l2) {
  if (!is_partition(l, l1, l2)) throw PreconditionViolated("part_to_perm: not a partition");
  return perm(l, Ctx<E>::join(l1, l2));
}

/// Applies `f` to every element, keeping the shape.
template <ContextElement E, class F>
auto map_ctx(const Ctx<E>& g, F f) -> Ctx<std::invoke_result_t<F, const E&>> {
  using R = Ctx<std::invoke_result_t<F, const E&>>;
  switch (g.kind()) {
    case Ctx<E>::Kind::Empty:
      return R();
    case Ctx<E>::Kind::Cons:
      return R::cons(f(g.head()), map_ctx(g.tail(), f));
    case Ctx<E>::Kind::Union:
      return R::join(map_ctx(g.left(), f), map_ctx(g.right(), f));
  }
  return R();
}

// ---------------------------------------------------------------------------
// Bounded generation

namespace detail {

template <ContextElement E>
void gen_exact(const std::vector<E>& pool, std::size_t n, std::size_t depth,
               std::vector<std::vector<std::vector<Ctx<E>>>>& memo) {
  // memo[depth][n] holds every tree with exactly n elements and depth <= depth.
  if (!memo[depth][n].empty() || depth == 0) return;
  auto& out = memo[depth][n];
  // A tree is a run of k heads followed by `nil` or a union.
  for (std::size_t k = 0; k <= n; ++k) {
    std::size_t rest = n - k;
    std::vector<Ctx<E>> terminals;
    if (rest == 0) terminals.push_back(Ctx<E>());
    if (depth > 1) {
      for (std::size_t i = 0; i <= rest; ++i) {
        gen_exact(pool, i, depth - 1, memo);
        gen_exact(pool, rest - i, depth - 1, memo);
        for (const auto& l : memo[depth - 1][i])
          for (const auto& r : memo[depth - 1][rest - i]) terminals.push_back(Ctx<E>::join(l, r));
      }
    }
    std::vector<Ctx<E>> layer = std::move(terminals);
    for (std::size_t j = 0; j < k; ++j) {
      std::vector<Ctx<E>> grown;
      grown.reserve(layer.size() * pool.size());
      for (const E& x : pool)
        for (const auto& t : layer) grown.push_back(Ctx<E>::cons(x, t));
      layer = std::move(grown);
    }
    out.insert(out.end(), layer.begin(), layer.end());
  }
}

}  // namespace detail

/// Every context with at most `max_elems` elements drawn from `pool` and
/// depth at most `max_depth`, without duplicates, ordered by element count,
/// then depth, then structure.
template <ContextElement E>
std::vector<Ctx<E>> gen_ctxs(std::vector<E> pool, std::size_t max_elems, std::size_t max_depth) {
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  std::vector<Ctx<E>> out;
  if (max_depth == 0) return out;
  std::size_t usable = pool.empty() ? 0 : max_elems;
  std::vector<std::vector<std::vector<Ctx<E>>>> memo(
      max_depth + 1, std::vector<std::vector<Ctx<E>>>(usable + 1));
  for (std::size_t n = 0; n <= usable; ++n) {
    detail::gen_exact(pool, n, max_depth, memo);
    auto layer = memo[max_depth][n];
    std::sort(layer.begin(), layer.end(), [](const Ctx<E>& a, const Ctx<E>& b) {
      if (a.depth() != b.depth()) return a.depth() < b.depth();
      return a < b;
    });
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

/// A small fixed family of differently-shaped contexts holding exactly the
/// elements of the list `l`: the list itself, its reversal, the list behind
/// an empty union, each rotation of a cut into a union, and the head consed
/// onto a union-wrapped tail.
template <ContextElement E>
std::vector<Ctx<E>> reshapes(const Ctx<E>& l) {
  auto xs = elems(l);
  std::vector<Ctx<E>> out;
  auto add = [&](Ctx<E> g) {
    if (std::find(out.begin(), out.end(), g) == out.end()) out.push_back(std::move(g));
  };
  add(Ctx<E>::list(xs));
  std::vector<E> rev(xs.rbegin(), xs.rend());
  add(Ctx<E>::list(rev));
  add(Ctx<E>::join(Ctx<E>(), Ctx<E>::list(xs)));
  for (std::size_t k = 1; k < xs.size(); ++k) {
    std::vector<E> front(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(k));
    std::vector<E> back(xs.begin() + static_cast<std::ptrdiff_t>(k), xs.end());
    add(Ctx<E>::join(Ctx<E>::list(back), Ctx<E>::list(front)));
  }
  if (!xs.empty()) {
    std::vector<E> rest(xs.begin() + 1, xs.end());
    add(Ctx<E>::cons(xs.front(), Ctx<E>::join(Ctx<E>(), Ctx<E>::list(rest))));
  }
  return out;
}

}  // namespace bctx

#include "bctx/translation.hpp"

#include <algorithm>

#include "bctx/ctx_text.hpp"
#include "bctx/errors.hpp"

namespace bctx {

std::string to_text(const VarAssoc& a) { return "trans_to " + to_text(a.src) + " " + to_text(a.dst); }

VarAssoc parse_var_assoc(TokenStream& ts) {
  Token kw = ts.expect_ident();
  if (kw.text != "trans_to") ts.fail_at(kw, "expected 'trans_to'");
  Token a = ts.expect_ident();
  auto src = name_from_ident(a.text);
  if (!src) ts.fail_at(a, "expected a nominal constant");
  Token b = ts.expect_ident();
  auto dst = name_from_ident(b.text);
  if (!dst) ts.fail_at(b, "expected a nominal constant");
  return VarAssoc{*src, *dst};
}

VarCtx parse_var_ctx(std::string_view text) { return parse_ctx<VarAssoc>(text, parse_var_assoc); }

std::set<Name> names(const VarCtx& g) {
  std::set<Name> out;
  for (const auto& v : elems(g)) {
    out.insert(v.src);
    out.insert(v.dst);
  }
  return out;
}

namespace {

std::pair<Name, Name> fresh_pair(std::set<Name> avoid) {
  Name x = fresh(avoid);
  avoid.insert(x);
  return {x, fresh(avoid)};
}

template <class E>
std::vector<E> distinct_elems(const Ctx<E>& g) {
  auto xs = sorted_elems(g);
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

}  // namespace

bool ltrans_rel(const VarCtx& g, const Tm& e, const Tm& e2) {
  switch (e.kind()) {
    case Tm::Kind::Free: {
      if (e2.kind() != Tm::Kind::Free) return false;
      VarAssoc want{e.name(), e2.name()};
      for (const auto& s : select(want, g))
        if (no_elems(s.residual)) return true;
      return false;
    }
    case Tm::Kind::Bound:
      return false;
    case Tm::Kind::App:
      if (e2.kind() != Tm::Kind::App) return false;
      for (const auto& [g1, g2] : splits(g))
        if (ltrans_rel(g1, e.fn(), e2.fn()) && ltrans_rel(g2, e.arg(), e2.arg())) return true;
      return false;
    case Tm::Kind::Abs: {
      if (e2.kind() != Tm::Kind::Abs || !(e.ann() == e2.ann())) return false;
      std::set<Name> avoid = names(g);
      avoid.merge(free_names(e));
      avoid.merge(free_names(e2));
      auto [x, y] = fresh_pair(avoid);
      return ltrans_rel(VarCtx::cons(VarAssoc{x, y}, g), open(e.body(), x), open(e2.body(), y));
    }
    case Tm::Kind::Let: {
      // let T V E  ~>  app (abs T E') V'
      if (e2.kind() != Tm::Kind::App || e2.fn().kind() != Tm::Kind::Abs) return false;
      const Tm& abs = e2.fn();
      if (!(abs.ann() == e.ann())) return false;
      std::set<Name> avoid = names(g);
      avoid.merge(free_names(e));
      avoid.merge(free_names(e2));
      auto [x, y] = fresh_pair(avoid);
      Tm body = open(e.body(), x);
      Tm body2 = open(abs.body(), y);
      for (const auto& [g1, g2] : splits(g))
        if (ltrans_rel(g1, e.val(), e2.arg()) &&
            ltrans_rel(VarCtx::cons(VarAssoc{x, y}, g2), body, body2))
          return true;
      return false;
    }
  }
  return false;
}

std::vector<Tm> ltrans_image(const VarCtx& g, const Tm& e) {
  std::vector<Tm> out;
  switch (e.kind()) {
    case Tm::Kind::Free:
      for (const auto& v : distinct_elems(g)) {
        if (v.src != e.name()) continue;
        for (const auto& s : select(v, g))
          if (no_elems(s.residual)) {
            out.push_back(Tm::free(v.dst));
            break;
          }
      }
      break;
    case Tm::Kind::Bound:
      break;
    case Tm::Kind::App:
      for (const auto& [g1, g2] : splits(g)) {
        auto fs = ltrans_image(g1, e.fn());
        if (fs.empty()) continue;
        auto as = ltrans_image(g2, e.arg());
        for (const auto& f : fs)
          for (const auto& a : as) out.push_back(Tm::app(f, a));
      }
      break;
    case Tm::Kind::Abs: {
      std::set<Name> avoid = names(g);
      avoid.merge(free_names(e));
      auto [x, y] = fresh_pair(avoid);
      for (const auto& b : ltrans_image(VarCtx::cons(VarAssoc{x, y}, g), open(e.body(), x)))
        out.push_back(Tm::abs(e.ann(), close(b, y)));
      break;
    }
    case Tm::Kind::Let: {
      std::set<Name> avoid = names(g);
      avoid.merge(free_names(e));
      auto [x, y] = fresh_pair(avoid);
      Tm body = open(e.body(), x);
      for (const auto& [g1, g2] : splits(g)) {
        auto vs = ltrans_image(g1, e.val());
        if (vs.empty()) continue;
        for (const auto& b : ltrans_image(VarCtx::cons(VarAssoc{x, y}, g2), body))
          for (const auto& v : vs) out.push_back(Tm::app(Tm::abs(e.ann(), close(b, y)), v));
      }
      break;
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

class Translator {
 public:
  Translator(const VarCtx& g, const Tm& e) : remaining_(elems(g)) {
    taken_ = names(g);
    taken_.merge(free_names(e));
  }

  Tm run(const Tm& e) {
    Tm out = go(e);
    if (!remaining_.empty())
      throw TranslationError(TranslationError::Kind::LinearityViolation,
                             "variable " + to_text(remaining_.front().src) + " is never used");
    return out;
  }

 private:
  Tm go(const Tm& e) {
    switch (e.kind()) {
      case Tm::Kind::Free: {
        auto it = std::find_if(remaining_.begin(), remaining_.end(),
                               [&](const VarAssoc& v) { return v.src == e.name(); });
        if (it == remaining_.end()) {
          if (used_.contains(e.name()))
            throw TranslationError(TranslationError::Kind::LinearityViolation,
                                   "variable " + to_text(e.name()) + " is used more than once");
          throw TranslationError(TranslationError::Kind::UnmappedVariable,
                                 "variable " + to_text(e.name()) + " has no translation");
        }
        Name dst = it->dst;
        used_.insert(e.name());
        remaining_.erase(it);
        return Tm::free(dst);
      }
      case Tm::Kind::Bound:
        throw MalformedTerm("translate: term is not locally closed");
      case Tm::Kind::App: {
        Tm fn = go(e.fn());
        return Tm::app(fn, go(e.arg()));
      }
      case Tm::Kind::Abs:
        return Tm::abs(e.ann(), under_binder(e.body()));
      case Tm::Kind::Let: {
        Tm val = go(e.val());
        return Tm::app(Tm::abs(e.ann(), under_binder(e.body())), val);
      }
    }
    throw MalformedTerm("translate: unknown term");
  }

  Tm under_binder(const Tm& body) {
    Name x = fresh(taken_);
    taken_.insert(x);
    Name y = fresh(taken_);
    taken_.insert(y);
    remaining_.insert(remaining_.begin(), VarAssoc{x, y});
    Tm out = go(open(body, x));
    auto it = std::find_if(remaining_.begin(), remaining_.end(),
                           [&](const VarAssoc& v) { return v.src == x; });
    if (it != remaining_.end())
      throw TranslationError(TranslationError::Kind::LinearityViolation, "bound variable is never used");
    return close(out, y);
  }

  std::vector<VarAssoc> remaining_;
  std::set<Name> used_;
  std::set<Name> taken_;
};

}  // namespace

Tm translate(const VarCtx& g, const Tm& e) {
  if (!is_list(g)) throw PreconditionViolated("translate expects a list-form context");
  std::set<Name> srcs;
  for (const auto& v : elems(g))
    if (!srcs.insert(v.src).second)
      throw PreconditionViolated("translate: source name " + to_text(v.src) + " is mapped twice");
  return Translator(g, e).run(e);
}

bool trans_rel_list(const TyCtx& l1, const VarCtx& l2, const TyCtx& l3) {
  if (!is_list(l1) || !is_list(l2) || !is_list(l3)) return false;
  auto a = elems(l1);
  auto v = elems(l2);
  auto b = elems(l3);
  if (a.size() != v.size() || v.size() != b.size()) return false;
  std::set<Name> in_tails;
  for (std::size_t i = a.size(); i-- > 0;) {
    const Name& x = v[i].src;
    const Name& y = v[i].dst;
    if (a[i].name != x || b[i].name != y || !(a[i].ty == b[i].ty) || x == y) return false;
    if (in_tails.contains(x) || in_tails.contains(y)) return false;
    in_tails.insert(x);
    in_tails.insert(y);
  }
  return true;
}

namespace {

bool mentions(const TyCtx& g1, const VarCtx& g2, const TyCtx& g3, const Name& n) {
  auto in_ty = [&](const TyCtx& g) {
    auto xs = elems(g);
    return std::any_of(xs.begin(), xs.end(), [&](const TyAssoc& a) { return a.name == n; });
  };
  auto vs = elems(g2);
  return in_ty(g1) || in_ty(g3) ||
         std::any_of(vs.begin(), vs.end(), [&](const VarAssoc& v) { return v.src == n || v.dst == n; });
}

bool align(const TyCtx& g1, const VarCtx& g2, const TyCtx& g3, std::vector<TyAssoc>& a,
           std::vector<VarAssoc>& v, std::vector<TyAssoc>& b) {
  if (g1.size() != g2.size() || g2.size() != g3.size()) return false;
  if (g2.size() == 0) return no_elems(g1) && no_elems(g2) && no_elems(g3);
  VarAssoc pivot = elems(g2).front();
  if (pivot.src == pivot.dst) return false;
  VarCtx r2 = select(pivot, g2).front().residual;
  for (const auto& x : distinct_elems(g1)) {
    if (x.name != pivot.src) continue;
    TyCtx r1 = select(x, g1).front().residual;
    TyAssoc want{pivot.dst, x.ty};
    auto s3 = select(want, g3);
    if (s3.empty()) continue;
    const TyCtx& r3 = s3.front().residual;
    if (mentions(r1, r2, r3, pivot.src) || mentions(r1, r2, r3, pivot.dst)) continue;
    a.push_back(x);
    v.push_back(pivot);
    b.push_back(want);
    if (align(r1, r2, r3, a, v, b)) return true;
    a.pop_back();
    v.pop_back();
    b.pop_back();
  }
  return false;
}

}  // namespace

std::optional<TransRelLists> trans_rel_witness(const TyCtx& g1, const VarCtx& g2, const TyCtx& g3) {
  std::vector<TyAssoc> a, b;
  std::vector<VarAssoc> v;
  if (!align(g1, g2, g3, a, v, b)) return std::nullopt;
  return TransRelLists{TyCtx::list(a), VarCtx::list(v), TyCtx::list(b)};
}

bool trans_rel_mset(const TyCtx& g1, const VarCtx& g2, const TyCtx& g3) {
  return trans_rel_witness(g1, g2, g3).has_value();
}

}  // namespace bctx

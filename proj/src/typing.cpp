#include "bctx/typing.hpp"

#include <algorithm>

#include "bctx/ctx_text.hpp"
#include "bctx/errors.hpp"

namespace bctx {

std::string to_text(const TyAssoc& a) {
  std::string ty = to_text(a.ty);
  if (a.ty.kind() == Ty::Kind::Arrow) ty = "(" + ty + ")";
  return "ty_of " + to_text(a.name) + " " + ty;
}

namespace {

Name parse_name(TokenStream& ts) {
  Token t = ts.expect_ident();
  auto n = name_from_ident(t.text);
  if (!n) ts.fail_at(t, "expected a nominal constant");
  return *n;
}

void sort_unique(std::vector<Ty>& ts) {
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
}

bool contains(const std::vector<Ty>& ts, const Ty& t) {
  return std::binary_search(ts.begin(), ts.end(), t);
}

std::set<Name> avoid_set(const TyCtx& g, const Tm& e) {
  std::set<Name> avoid = names(g);
  avoid.merge(free_names(e));
  return avoid;
}

}  // namespace

TyAssoc parse_ty_assoc(TokenStream& ts) {
  Token kw = ts.expect_ident();
  if (kw.text != "ty_of") ts.fail_at(kw, "expected 'ty_of'");
  Name n = parse_name(ts);
  return TyAssoc{n, parse_type_atom(ts)};
}

TyCtx parse_ty_ctx(std::string_view text) {
  return parse_ctx<TyAssoc>(text, parse_ty_assoc);
}

std::set<Name> names(const TyCtx& g) {
  std::set<Name> out;
  for (const auto& a : elems(g)) out.insert(a.name);
  return out;
}

// ---------------------------------------------------------------------------
// Intuitionistic

namespace {

std::optional<Ty> infer(const TyCtx& l, const Tm& e) {
  switch (e.kind()) {
    case Tm::Kind::Free:
      for (const auto& a : elems(l))
        if (a.name == e.name()) return a.ty;
      return std::nullopt;
    case Tm::Kind::Bound:
    case Tm::Kind::Let:
      return std::nullopt;
    case Tm::Kind::App: {
      auto f = infer(l, e.fn());
      if (!f || f->kind() != Ty::Kind::Arrow) return std::nullopt;
      auto a = infer(l, e.arg());
      if (!a || !(*a == f->dom())) return std::nullopt;
      return f->cod();
    }
    case Tm::Kind::Abs: {
      Name x = fresh(avoid_set(l, e));
      auto body = infer(TyCtx::cons(TyAssoc{x, e.ann()}, l), open(e.body(), x));
      if (!body) return std::nullopt;
      return Ty::arrow(e.ann(), *body);
    }
  }
  return std::nullopt;
}

std::vector<Ty> all_types(const TyCtx& l, const Tm& e) {
  std::vector<Ty> out;
  switch (e.kind()) {
    case Tm::Kind::Free:
      for (const auto& a : elems(l))
        if (a.name == e.name()) out.push_back(a.ty);
      break;
    case Tm::Kind::Bound:
    case Tm::Kind::Let:
      break;
    case Tm::Kind::App: {
      auto fs = all_types(l, e.fn());
      if (fs.empty()) break;
      auto args = all_types(l, e.arg());
      for (const auto& f : fs)
        if (f.kind() == Ty::Kind::Arrow && contains(args, f.dom())) out.push_back(f.cod());
      break;
    }
    case Tm::Kind::Abs: {
      Name x = fresh(avoid_set(l, e));
      for (auto& t : all_types(TyCtx::cons(TyAssoc{x, e.ann()}, l), open(e.body(), x)))
        out.push_back(Ty::arrow(e.ann(), t));
      break;
    }
  }
  sort_unique(out);
  return out;
}

}  // namespace

std::optional<Ty> type_of_infer(const TyCtx& l, const Tm& e) {
  if (!is_list(l)) throw PreconditionViolated("type_of_infer expects a list-form context");
  return infer(l, e);
}

std::vector<Ty> type_of_all(const TyCtx& l, const Tm& e) { return all_types(l, e); }

bool ty_ctx_list(const TyCtx& l) {
  if (!is_list(l)) return false;
  std::set<Name> seen;
  for (const auto& a : elems(l))
    if (!seen.insert(a.name).second) return false;
  return true;
}

bool ty_ctx_mset(const TyCtx& g) { return ty_ctx_list(TyCtx::list(elems(g))); }

// ---------------------------------------------------------------------------
// Linear, relational

namespace {

std::vector<Ty> linear_types(const TyCtx& g, const Tm& e, bool allow_let) {
  std::vector<Ty> out;
  switch (e.kind()) {
    case Tm::Kind::Free: {
      auto candidates = sorted_elems(g);
      candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
      for (const auto& a : candidates) {
        if (a.name != e.name()) continue;
        for (const auto& s : select(a, g))
          if (no_elems(s.residual)) {
            out.push_back(a.ty);
            break;
          }
      }
      break;
    }
    case Tm::Kind::Bound:
      break;
    case Tm::Kind::App:
      for (const auto& [g1, g2] : splits(g)) {
        auto fs = linear_types(g1, e.fn(), allow_let);
        if (std::none_of(fs.begin(), fs.end(), [](const Ty& t) { return t.kind() == Ty::Kind::Arrow; }))
          continue;
        auto args = linear_types(g2, e.arg(), allow_let);
        for (const auto& f : fs)
          if (f.kind() == Ty::Kind::Arrow && contains(args, f.dom())) out.push_back(f.cod());
      }
      break;
    case Tm::Kind::Abs: {
      Name x = fresh(avoid_set(g, e));
      for (auto& t : linear_types(TyCtx::cons(TyAssoc{x, e.ann()}, g), open(e.body(), x), allow_let))
        out.push_back(Ty::arrow(e.ann(), t));
      break;
    }
    case Tm::Kind::Let: {
      if (!allow_let) break;
      Name x = fresh(avoid_set(g, e));
      Tm body = open(e.body(), x);
      for (const auto& [g1, g2] : splits(g)) {
        if (!contains(linear_types(g1, e.val(), allow_let), e.ann())) continue;
        for (auto& t : linear_types(TyCtx::cons(TyAssoc{x, e.ann()}, g2), body, allow_let))
          out.push_back(t);
      }
      break;
    }
  }
  sort_unique(out);
  return out;
}

// ---------------------------------------------------------------------------
// Linear, algorithmic

std::optional<LinearResult> thread(const TyCtx& g, const Tm& e, std::set<Name> used, bool allow_let) {
  switch (e.kind()) {
    case Tm::Kind::Free: {
      auto xs = elems(g);
      auto it = std::find_if(xs.begin(), xs.end(), [&](const TyAssoc& a) { return a.name == e.name(); });
      if (it == xs.end()) return std::nullopt;
      Ty ty = it->ty;
      xs.erase(it);
      used.insert(e.name());
      return LinearResult{ty, Leftover{TyCtx::list(xs), std::move(used)}};
    }
    case Tm::Kind::Bound:
      return std::nullopt;
    case Tm::Kind::App: {
      auto f = thread(g, e.fn(), std::move(used), allow_let);
      if (!f || f->ty.kind() != Ty::Kind::Arrow) return std::nullopt;
      auto a = thread(f->leftover.remaining, e.arg(), std::move(f->leftover.used), allow_let);
      if (!a || !(a->ty == f->ty.dom())) return std::nullopt;
      return LinearResult{f->ty.cod(), std::move(a->leftover)};
    }
    case Tm::Kind::Abs: {
      std::set<Name> avoid = avoid_set(g, e);
      avoid.insert(used.begin(), used.end());
      Name x = fresh(avoid);
      auto body = thread(TyCtx::cons(TyAssoc{x, e.ann()}, g), open(e.body(), x), std::move(used), allow_let);
      if (!body || names(body->leftover.remaining).contains(x)) return std::nullopt;
      return LinearResult{Ty::arrow(e.ann(), body->ty), std::move(body->leftover)};
    }
    case Tm::Kind::Let: {
      if (!allow_let) return std::nullopt;
      auto v = thread(g, e.val(), std::move(used), allow_let);
      if (!v || !(v->ty == e.ann())) return std::nullopt;
      std::set<Name> avoid = avoid_set(g, e);
      avoid.insert(v->leftover.used.begin(), v->leftover.used.end());
      Name x = fresh(avoid);
      auto body = thread(TyCtx::cons(TyAssoc{x, e.ann()}, v->leftover.remaining), open(e.body(), x),
                         std::move(v->leftover.used), allow_let);
      if (!body || names(body->leftover.remaining).contains(x)) return std::nullopt;
      return body;
    }
  }
  return std::nullopt;
}

std::optional<LinearResult> linear_check(const TyCtx& g, const Tm& e, bool allow_let) {
  if (!ty_ctx_list(g))
    throw PreconditionViolated("linear checker expects a list-form context with distinct names");
  return thread(g, e, {}, allow_let);
}

std::optional<Ty> top(const std::optional<LinearResult>& r) {
  if (!r || r->leftover.remaining.size() != 0) return std::nullopt;
  return r->ty;
}

}  // namespace

std::vector<Ty> ltype_types(const TyCtx& g, const Tm& e) { return linear_types(g, e, false); }

bool ltype_rel(const TyCtx& g, const Tm& e, const Ty& t) { return contains(ltype_types(g, e), t); }

std::vector<Ty> mltype_types(const TyCtx& g, const Tm& e) { return linear_types(g, e, true); }

bool mltype_rel(const TyCtx& g, const Tm& e, const Ty& t) { return contains(mltype_types(g, e), t); }

std::optional<LinearResult> ltype_check(const TyCtx& g, const Tm& e) { return linear_check(g, e, false); }

std::optional<LinearResult> mltype_check(const TyCtx& g, const Tm& e) { return linear_check(g, e, true); }

std::optional<Ty> ltype_check_top(const TyCtx& g, const Tm& e) { return top(ltype_check(g, e)); }

std::optional<Ty> mltype_check_top(const TyCtx& g, const Tm& e) { return top(mltype_check(g, e)); }

}  // namespace bctx

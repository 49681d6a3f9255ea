#include "bctx/gen.hpp"

#include <algorithm>
#include <map>
#include <utility>

namespace bctx {

std::vector<Ty> type_universe(std::size_t max_depth, const std::vector<std::string>& bases) {
  std::vector<Ty> out;
  if (max_depth == 0) return out;
  for (const auto& b : bases) out.push_back(Ty::base(b));
  std::vector<Ty> prev = out;
  for (std::size_t d = 2; d <= max_depth; ++d) {
    std::vector<Ty> layer;
    for (const auto& dom : prev)
      for (const auto& cod : prev) {
        if (dom.depth() != d - 1 && cod.depth() != d - 1) continue;
        layer.push_back(Ty::arrow(dom, cod));
      }
    std::sort(layer.begin(), layer.end());
    out.insert(out.end(), layer.begin(), layer.end());
    prev = out;
  }
  return out;
}

std::vector<Name> name_pool(std::size_t k, const std::string& stem) {
  std::vector<Name> out;
  for (std::size_t i = 1; i <= k; ++i) out.push_back(Name{stem, static_cast<std::uint32_t>(i)});
  return out;
}

namespace {

class TermEnumerator {
 public:
  explicit TermEnumerator(const TermSpace& space) : space_(space) {}

  // Terms of exactly `size` constructors under `depth` binders.
  const std::vector<Tm>& exact(std::size_t size, std::uint32_t depth) {
    auto key = std::make_pair(size, depth);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::vector<Tm> out;
    if (size == 1) {
      for (const auto& n : space_.free) out.push_back(Tm::free(n));
      for (std::uint32_t i = 0; i < depth; ++i) out.push_back(Tm::bound(i));
    } else if (size > 1) {
      for (std::size_t s1 = 1; s1 + 1 < size; ++s1) {
        const auto& fs = exact(s1, depth);
        const auto& as = exact(size - 1 - s1, depth);
        for (const auto& f : fs)
          for (const auto& a : as) out.push_back(Tm::app(f, a));
      }
      const auto& bodies = exact(size - 1, depth + 1);
      for (const auto& t : space_.annots)
        for (const auto& b : bodies) out.push_back(Tm::abs(t, b));
      if (space_.allow_let) {
        for (std::size_t s1 = 1; s1 + 1 < size; ++s1) {
          const auto& vs = exact(s1, depth);
          const auto& bs = exact(size - 1 - s1, depth + 1);
          for (const auto& t : space_.annots)
            for (const auto& v : vs)
              for (const auto& b : bs) out.push_back(Tm::let(t, v, b));
        }
      }
    }
    std::sort(out.begin(), out.end());
    return memo_.emplace(key, std::move(out)).first->second;
  }

 private:
  const TermSpace& space_;
  std::map<std::pair<std::size_t, std::uint32_t>, std::vector<Tm>> memo_;
};

}  // namespace

std::vector<Tm> gen_terms(const TermSpace& space, std::size_t max_size) {
  TermEnumerator en(space);
  std::vector<Tm> out;
  for (std::size_t s = 1; s <= max_size; ++s) {
    const auto& layer = en.exact(s, 0);
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

}  // namespace bctx

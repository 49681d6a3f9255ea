#pragma once

// Bounded enumeration of types and terms for exhaustive checking.

#include <cstddef>
#include <string>
#include <vector>

#include "bctx/syntax.hpp"

namespace bctx {

/// Size limits shared by every bounded check.
struct GenBounds {
  std::size_t max_term_size = 4;
  std::size_t max_ctx = 3;     // elements per context / clause applications
  std::size_t max_depth = 2;   // context depth (1 = list form)
  std::size_t name_pool = 3;
  std::size_t type_depth = 2;  // base types have depth 1
};

/// Types over the base labels `a` and `b` up to the given depth, smallest
/// first.
std::vector<Ty> type_universe(std::size_t max_depth, const std::vector<std::string>& bases = {"a", "b"});

/// Nominal constants `<stem>1 .. <stem>k`.
std::vector<Name> name_pool(std::size_t k, const std::string& stem = "n");

struct TermSpace {
  std::vector<Name> free;   // nominal constants that may occur
  std::vector<Ty> annots;   // annotations on abs/let
  bool allow_let = false;
};

/// Every locally closed term with at most `max_size` constructors, ordered by
/// size and then structurally.
std::vector<Tm> gen_terms(const TermSpace& space, std::size_t max_size);

}  // namespace bctx

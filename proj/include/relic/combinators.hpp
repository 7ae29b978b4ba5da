#pragma once

#include <optional>
#include <vector>

#include "relic/structure.hpp"

namespace relic {

// E-union of finite structures: disjoint sum over per-block renamed
// signatures, expanded by an equivalence relation E whose classes are
// exactly the input blocks.
struct ECombined {
  Structure base;
  std::vector<std::vector<int>> classes;  // block i -> its elements in base
};

ECombined e_combination(const std::vector<Structure>& ss);

enum class PMode { Disjoint, Repeat, General };

// Identification of element `elem_a` of block `block_a` with `elem_b` of
// `block_b` (general mode only).
struct Identify {
  int block_a = 0;
  int elem_a = 0;
  int block_b = 0;
  int elem_b = 0;
};

// P-union: blocks renamed apart and tagged by unary predicates P0, P1, ...
// `extra` appends elements outside every P_i (a finite stand-in for
// realizations of p_infty); they may carry relations from extra's own
// signature, among themselves only — never links into the blocks.
struct PCombined {
  Structure base;
  PMode mode = PMode::Disjoint;
  std::vector<std::vector<int>> blocks;  // P_i extents
};

PCombined p_combination(const std::vector<Structure>& ss, PMode mode,
                        const std::optional<Structure>& extra = std::nullopt,
                        const std::vector<Identify>& overlap = {});

// Induced substructure on the elements outside all P_i, reduced to the
// symbols with at least one tuple inside that extent.
Structure p_infty_extent(const PCombined& pc);

}  // namespace relic

#pragma once

#include <vector>

#include "relic/iso.hpp"
#include "relic/structure.hpp"

namespace relic {

// Language-uniformity report: for each arity occurring in the signature,
// whether every permutation of the non-empty tables of that arity yields an
// isomorphic structure.  Transpositions generate all permutations and
// preservation composes, so pairwise swap tests decide this exactly.
struct LuArity {
  int arity = 0;
  bool uniform = true;
  int nonempty_symbols = 0;
};

struct LuReport {
  std::vector<LuArity> per_arity;  // sorted by arity
  bool all() const {
    for (const auto& a : per_arity)
      if (!a.uniform) return false;
    return true;
  }
};

LuReport lu_check(const Structure& s, const IsoCaps& caps = {});

// Almost-language-uniformity: per arity, the coarsest partition of that
// arity's symbols such that every class-preserving substitution yields an
// isomorphic structure.  Classes are listed by smallest member symbol index;
// members are sorted.  Swap-interchangeability is an equivalence relation
// (conjugation gives transitivity), so the coarsest partition is its set of
// classes.
struct ArityPartition {
  int arity = 0;
  std::vector<std::vector<int>> classes;  // symbol indices into s.sig
};

std::vector<ArityPartition> alu_partition(const Structure& s, const IsoCaps& caps = {});

// Structure with tables of two same-arity symbols exchanged.
Structure swap_tables(const Structure& s, int i, int j);

}  // namespace relic

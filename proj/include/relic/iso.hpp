#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "relic/refine.hpp"
#include "relic/structure.hpp"

namespace relic {

struct IsoCaps {
  long node_cap = 10'000'000;       // backtracking nodes before CapExceeded
  std::size_t max_tuples = 100000;  // cap on size^n for orbit computations
};

// Isomorphism between structures.  Signatures are matched by name when the
// name sets coincide, else positionally when the arity sequences agree
// ("name matching"); anything else is a precondition error.
// Returns the witness map (a-element -> b-element) or nullopt.
std::optional<std::vector<int>> find_isomorphism(const Structure& a, const Structure& b,
                                                 const IsoCaps& caps = {});
bool isomorphic(const Structure& a, const Structure& b, const IsoCaps& caps = {});

// An automorphism of s extending the prescribed partial map (exhaustive
// backtracking; nullopt means none exists).
std::optional<std::vector<int>> find_automorphism(
    const Structure& s, const std::vector<std::pair<int, int>>& prescribed,
    const IsoCaps& caps = {});

// Partition of all n-tuples into automorphism orbits.  m_n, the number of
// n-types of the theory of s, equals num_orbits.
struct OrbitPartition {
  int n = 0;
  int num_orbits = 0;
  std::vector<int> orbit_of;         // size^n entries in lex order
  std::vector<Tuple> representatives;  // lex-least member per orbit
};

// Computed by canonical-form hashing of tuple-pointed structures when the
// size allows it, else by refinement blocks verified with automorphism
// searches (both exact).
OrbitPartition automorphism_orbits(const Structure& s, int n, const IsoCaps& caps = {});

}  // namespace relic

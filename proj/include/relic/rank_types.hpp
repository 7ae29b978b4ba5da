#pragma once

#include <vector>

#include "relic/iso.hpp"
#include "relic/structure.hpp"

namespace relic {

// Partition of the n-tuples of a structure at rank q.
//
// Rank 0 is atomic-diagram equality; rank k+1 refines rank k by the multiset
// of (atomic type of the extended tuple, classes of coordinate replacements)
// over all extension elements.  The chain refines monotonically; its limit
// is the automorphism-orbit partition at desk scale, and for q >= size the
// orbit partition is returned outright (computed exactly).  Class ids are
// numbered by each class's lexicographically least member tuple.
struct RankTypePartition {
  int n = 0;
  int q = 0;
  int num_classes = 0;
  std::vector<int> class_of;  // size^n entries, lex tuple order
  bool stabilized = false;    // partition equals the orbit partition
};

struct RankTypeCaps {
  std::size_t max_tuples = 100000;
  long node_cap = 10'000'000;  // automorphism searches in the orbit path
};

RankTypePartition rank_types(const Structure& s, int n, int q, const RankTypeCaps& caps = {});

// m_n: the number of n-types of the theory of s (= tuple orbit count).
int type_count(const Structure& s, int n, const RankTypeCaps& caps = {});

}  // namespace relic

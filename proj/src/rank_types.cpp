#include "relic/rank_types.hpp"

#include <map>

#include "relic/base.hpp"
#include "relic/refine.hpp"

namespace relic {

namespace {

// Renumber ids in order of first occurrence (= least member tuple).
std::vector<int> by_first_member(const std::vector<int>& ids, int* num_out) {
  std::map<int, int> seen;
  std::vector<int> out(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    auto [it, fresh] = seen.emplace(ids[i], static_cast<int>(seen.size()));
    (void)fresh;
    out[i] = it->second;
  }
  if (num_out) *num_out = static_cast<int>(seen.size());
  return out;
}

}  // namespace

RankTypePartition rank_types(const Structure& s, int n, int q, const RankTypeCaps& caps) {
  s.validate();
  if (n < 1 || q < 0) throw PreconditionError("rank_types: need n >= 1, q >= 0");
  if (s.size < 1) throw PreconditionError("rank_types: empty universe");
  RankTypePartition out;
  out.n = n;
  out.q = q;

  IsoCaps icaps;
  icaps.node_cap = caps.node_cap;
  icaps.max_tuples = caps.max_tuples;

  if (q >= s.size) {
    const auto orbits = automorphism_orbits(s, n, icaps);
    out.class_of = by_first_member(orbits.orbit_of, &out.num_classes);
    out.stabilized = true;
    return out;
  }

  const auto part = wl_partition(s, n, q, RefineCaps{caps.max_tuples});
  out.class_of = by_first_member(part.class_of, &out.num_classes);
  out.stabilized = false;
  // The chain only ever splits classes, so one more round that splits nothing
  // means it has converged; equality with the orbit partition is then decided
  // by automorphism search.  If round q+1 still splits, the rank-q partition
  // is strictly coarser than the orbits.
  const auto next = wl_partition(s, n, q + 1, RefineCaps{caps.max_tuples});
  if (next.num_classes == out.num_classes) {
    const auto orbits = automorphism_orbits(s, n, icaps);
    int orbit_classes = 0;
    const auto normalized = by_first_member(orbits.orbit_of, &orbit_classes);
    out.stabilized = normalized == out.class_of;
  }
  return out;
}

int type_count(const Structure& s, int n, const RankTypeCaps& caps) {
  s.validate();
  if (s.size < 1) throw PreconditionError("type_count: empty universe");
  IsoCaps icaps;
  icaps.node_cap = caps.node_cap;
  icaps.max_tuples = caps.max_tuples;
  return automorphism_orbits(s, n, icaps).num_orbits;
}

}  // namespace relic

#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "relic/structure.hpp"

namespace relic {

// Total, isomorphism-invariant encoding of a finite structure: two structures
// have equal canonical forms iff they are isomorphic over the same signature
// (names included).  Theories of finite structures are identified with these.
struct CanonicalForm {
  std::vector<std::uint8_t> bytes;
  auto operator<=>(const CanonicalForm&) const = default;
  std::string hex() const;
};

struct CanonCaps {
  int max_size = 10;             // permutation search beyond this is rejected
  long max_perms = 5'000'000;    // cap on color-respecting permutations
};

// Lexicographically minimal encoding over all universe relabelings that
// respect the stable refinement coloring.  This is a desk-scale tool: sizes
// above the cap throw CapExceeded.
CanonicalForm canonical_form(const Structure& s, const CanonCaps& caps = {});
// Serial reference for the permutation-scan kernel (results must be equal).
CanonicalForm canonical_form_serial(const Structure& s, const CanonCaps& caps = {});

// Canonical form with symbol names erased (positional placeholders), for
// name-blind isomorphism tests between arity-compatible signatures.
CanonicalForm canonical_key_name_blind(const Structure& s, const CanonCaps& caps = {});

}  // namespace relic

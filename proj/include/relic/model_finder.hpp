#pragma once

#include <climits>
#include <optional>
#include <vector>

#include "relic/formula.hpp"
#include "relic/structure.hpp"

namespace relic {

struct FinderCaps {
  int max_size = 8;
  long node_cap = 10'000'000;      // search-tree nodes per size
  long eval_budget = 2'000'000;    // atom queries per pruning evaluation
};

// All n-element models of the sentence f over signature sig, up to
// isomorphism, at most `limit` of them, sorted by canonical form.  Search:
// backtracking over relation-table bits, pruned by three-valued evaluation
// and a lex-leader test under universe transpositions; complete (up to iso)
// whenever it returns without hitting the node cap.  Every returned
// structure is re-checked against f; failure would be a bug and throws.
std::vector<Structure> find_models(const FormulaPtr& f, const Signature& sig, int n,
                                   int limit = INT_MAX, const FinderCaps& caps = {});

// Sizes n <= N having a model: {n : find_models(f, sig, n, 1) nonempty}.
std::vector<int> fin_spectrum(const FormulaPtr& f, const Signature& sig, int N,
                              const FinderCaps& caps = {});

// Bounded verdict on "f forces the infinity" (= f has no finite models):
// refuted with a witness when some size <= N has one, else the honest
// bounded statement — never an unbounded claim.
struct ForcesInfinityVerdict {
  bool refuted = false;
  int n = 0;  // refuting size, or the bound N
  std::optional<Structure> witness;
};

ForcesInfinityVerdict forces_infinity(const FormulaPtr& f, const Signature& sig, int N,
                                      const FinderCaps& caps = {});

}  // namespace relic

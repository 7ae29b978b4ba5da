#pragma once

#include <map>
#include <string>
#include <vector>

#include "relic/eval.hpp"
#include "relic/formula.hpp"
#include "relic/structure.hpp"

namespace relic {

// Exact q-round back-and-forth (EF) typing.  Class ids are interned in a
// shared registry, so ids are comparable across every structure classified
// through the same EfUniverse: equal id <=> the tuples satisfy the same
// formulas of quantifier rank <= q (over the union language, with absent
// symbols read as empty relations).  Intended for small q (default cap 3);
// the cost of one call is about size^(q - |t| ... q) recursion nodes.
struct EfCaps {
  int max_q = 8;
  long max_nodes = 20'000'000;  // recursion nodes per top-level call
};

class EfUniverse {
 public:
  using Caps = EfCaps;

  explicit EfUniverse(EfCaps caps = {}) : caps_(caps) {}

  // Rank-q class id of tuple t (possibly empty) in s.
  int classify(const Structure& s, const Tuple& t, int q);
  // Rank-q elementary type of s itself: classify(s, (), q).
  int fingerprint(const Structure& s, int q);
  bool equivalent(const Structure& a, const Structure& b, int q);

  // Characteristic (Hintikka) formula of t's rank-q class, free variables
  // x0..x{|t|-1}; satisfied by exactly the tuples classified equal over the
  // language `lang` (default: s.sig).  Quantifier rank exactly q.
  FormulaPtr hintikka(const Structure& s, const Tuple& t, int q,
                      const Signature* lang = nullptr);
  FormulaPtr hintikka_sentence(const Structure& s, int q, const Signature* lang = nullptr);

  // Exact EF partition of all n-tuples at rank q (test oracle; costs
  // size^(n+q)).  Returns canonical ids: per-structure class numbers in
  // order of the lexicographically least member tuple.
  std::vector<int> tuple_classes(const Structure& s, int n, int q);

 private:
  friend class EfWalk;
  Caps caps_;
  std::map<std::string, int> registry_;
};

// ---- diagram-style characteristic formulas (exact for finite structures) --

// Sentence whose finite models are exactly the isomorphic copies of s:
// existentially names every element (ordered so each new element is maximally
// constrained by earlier ones), asserts the full atomic diagram and that the
// named elements exhaust the universe.  Quantifier rank size+1.
FormulaPtr scott_sentence(const Structure& s);

// Formula with free variables x0..x{n-1} defining the automorphism orbit of
// tuple t in s: satisfied by exactly the tuples in t's orbit.
FormulaPtr orbit_formula(const Structure& s, const Tuple& t);

// "Exactly n elements" / "at least n elements" (empty language).
FormulaPtr size_exactly_sentence(int n);
FormulaPtr size_at_least_sentence(int n);

// ---- rank-q sentence stream ----

struct SentenceBudget {
  int max_q = 3;
  int max_size = 4;          // structures enumerated up to this size
  long max_structures = 300000;
};

struct SentenceStream {
  std::vector<FormulaPtr> sentences;  // Hintikka sentence per realized class
  bool complete = false;              // true when the budget provably covers
                                      // every rank-q class over sig
  std::string note;
};

// Hintikka-normal-form enumeration of rank-q sentences over sig: one
// characteristic sentence per rank-q equivalence class realized by a
// structure of size <= budget.max_size (all rank-<=q sentences over sig are
// boolean combinations of the complete stream).  Deterministic order.
SentenceStream sentences_up_to(const Signature& sig, int q, const SentenceBudget& budget = {});

}  // namespace relic

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "relic/closure.hpp"
#include "relic/family.hpp"
#include "relic/rank_types.hpp"
#include "relic/structure.hpp"

namespace relic {

// Symbolic subset of Z+ with exact membership up to any bound.
//
//   Empty         {}
//   FiniteSet     the listed elements
//   Progressions  union of k*Z+ over the generators
//   SumClosure    all sums of generators with repetition (at least one term)
//   Complement    Z+ minus the inner set
//
// `minus` removes finitely many elements after the form's own test.
struct CardinalitySet {
  enum class Form { Empty, FiniteSet, Progressions, SumClosure, Complement };
  Form form = Form::Empty;
  std::vector<int> elems;                       // FiniteSet (sorted, unique)
  std::vector<int> gens;                        // Progressions / SumClosure
  std::shared_ptr<const CardinalitySet> inner;  // Complement
  std::vector<int> minus;                       // applied last

  bool contains(int n) const;
  std::vector<int> up_to(int bound) const;
  std::string render() const;
};

CardinalitySet card_empty();
CardinalitySet card_finite(std::vector<int> elems);
CardinalitySet card_progressions(std::vector<int> ks);
CardinalitySet card_sum_closure(std::vector<int> ks);
CardinalitySet card_zplus();                             // 1*Z+
CardinalitySet card_cofinite(std::vector<int> missing);  // Z+ minus a finite set
CardinalitySet card_complement(const CardinalitySet& y);
CardinalitySet card_minus(CardinalitySet base, std::vector<int> remove);
bool card_equal_up_to(const CardinalitySet& a, const CardinalitySet& b, int bound);

// c: the sizes of the family's finite models; c_bar: the additional sizes
// the operator's closure realizes; c_hat: the sizes realized on the
// never-tagged part of combined models.
struct CardProfile {
  OpTag op = OpTag::E;
  CardinalitySet c, c_bar, c_hat;
};

// Rules: the E operator tags every element, so c_bar = c_hat = {}.  A finite
// family contributes nothing new under any operator.  An infinite
// empty-language family leaves the never-tagged part an arbitrary pure set
// (c_hat = Z+, c_bar = Z+ minus c).  An infinite block family (relabel,
// iilu, tagged-copies) assembles never-tagged parts from whole blocks of a
// fixed size k (c_hat = k*Z+, c_bar = c_hat minus c).  Cube streams have no
// represented size set and are rejected.
CardProfile card_profile(const FamilyDescriptor& fam, OpTag op, const ClosureCaps& caps = {});

// An empty-language family whose size set is exactly Y, so that the new
// sizes of its unary-predicate closures are Z+ minus Y.  Y must be
// symbolically infinite: one progression k*Z+, a cofinite set, or Z+.
FamilyDescriptor complement_family(const CardinalitySet& y);

// {m <= bound : m is a sum of generators with repetition, at least one term}
std::vector<int> semigroup_set(const std::vector<int>& gens, int bound);

struct RecoverResult {
  std::optional<std::vector<int>> generators;  // minimal set, when consistent
  std::string reason;                          // first obstruction otherwise
};

// Inverse problem: the unique minimal K with semigroup_set(K, bound) ==
// sample, taking each smallest unexplained element as a generator.
RecoverResult recover_generators(const std::vector<int>& sample, int bound);

struct PinfValidation {
  bool ok = false;
  int k0 = 0;  // min K, when complete and accepted
  std::string reason;
};

// Divisibility law: a complete profile set must lie inside k0*Z+ for
// k0 = min K; incomplete profiles are unconstrained.
PinfValidation validate_complete_pinf(const std::vector<int>& k, bool complete);

// Element selector for semi-isolation: everything, the elements outside the
// listed unary predicates, or one rank-q 1-type class.
struct SISelector {
  enum class Kind { All, Outside, TypeClass };
  Kind kind = SISelector::Kind::All;
  std::vector<std::string> predicates;  // Outside
  int type_class = -1;                  // TypeClass

  static SISelector all() { return {}; }
  static SISelector outside(std::vector<std::string> preds);
  static SISelector type_class_of(int cls);
};

struct SIRelation {
  std::string structure_name;
  int q = 0;
  std::vector<int> selected;           // element indices of s
  std::vector<std::vector<bool>> rel;  // directed, indexed by positions in `selected`

  bool symmetric() const;
  bool is_equivalence() const;  // reflexivity and transitivity hold by construction
  // Equivalence classes as element-index lists; requires is_equivalence().
  std::vector<std::vector<int>> classes() const;
};

// Bounded-rank semi-isolation: (a, b) is in SI when every selected b' with
// the same rank-q pair type over a as b lies inside a's co-occurrence
// component (the minimal a-definable rank-q set containing b stays within
// a's linked part).  Closed reflexively and transitively.
SIRelation si_relation(const Structure& s, const SISelector& selector, int q,
                       const RankTypeCaps& caps = {});

// Component id per element, where elements sharing a tuple in any table are
// linked.
std::vector<int> component_ids(const Structure& s);

// SumClosure over the distinct class sizes (multiplicity is irrelevant: the
// realizable sums depend only on the value set).
CardinalitySet chat_from_si_classes(const std::vector<int>& class_sizes);

// Do the no-repeat and repeat-allowing closures realize the same
// never-tagged sizes?  Decided on the descriptor's profiles by bounded
// membership comparison.
bool chat_d_equals_dr(const FamilyDescriptor& fam, const ClosureCaps& caps = {}, int bound = 128);

}  // namespace relic

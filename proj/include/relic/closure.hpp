#pragma once

#include <optional>
#include <string>
#include <vector>

#include "relic/combinators.hpp"
#include "relic/family.hpp"
#include "relic/model_finder.hpp"

namespace relic {

// The four combination operators a family can be closed under: equivalence
// tagging (E), and the unary-predicate operator in its general, disjoint,
// and disjoint-repeat-allowing modes (P, Pd, Pdr).
enum class OpTag { E, P, Pd, Pdr };

std::string op_tag_name(OpTag op);

// How many members of a family satisfy a sentence.  Exact and Infinite carry
// a certificate note; AtLeast is the honest fallback when only finitely many
// members could be probed and no tail rule applied.
struct Count {
  enum class Kind { Exact, AtLeast, Infinite };
  Kind kind = Count::Kind::Exact;
  long value = 0;  // Exact / AtLeast payload
  std::string note;

  bool infinite() const { return kind == Kind::Infinite; }
};

// Yes/No answers that were actually checked only up to a rank and a probe
// bound are reported as BoundedYes (the neighborhood verdict) or as No with
// a concrete separating witness.
struct Verdict {
  enum class Kind { Yes, No, BoundedYes };
  Kind kind = Verdict::Kind::No;
  int rank = -1;        // rank actually exercised
  long bound = -1;      // probe / size bound actually exercised
  FormulaPtr witness;   // separating or infinity-forcing sentence, when No
  std::string note;

  bool positive() const { return kind != Kind::No; }
};

struct ClosureCaps {
  int rank = 3;       // accumulation checks run at this rank
  long probe = 6;     // member-stream prefixes / probe languages examined
  int size_bound = 8; // model searches stop at this universe size
  TheoryCaps theory;
  FinderCaps finder;
};

// Number of members T of fam with f in T.  Generators answer through
// per-kind tail rules (noted in the result); an undecidable member oracle
// propagates as Unsupported.
Count count_satisfying(const FamilyDescriptor& fam, const FormulaPtr& f,
                       const ClosureCaps& caps = {});

// Is t an accumulation point of fam (t not a member, but every neighborhood
// (t)_sigma meets fam in infinitely many members)?  Neighborhoods are probed
// via the rank-caps.rank characteristic sentences of t over the probe
// languages of fam; a No carries the separating sentence.
Verdict is_accumulation_point(const FamilyDescriptor& fam, const TheoryRef& t,
                              const ClosureCaps& caps = {});

// E-closure of a family with pairwise disjoint member languages: the family
// plus T0(n) for every size realized by infinitely many members and T0inf
// when sizes are unbounded (or infinitely many members lack finite models).
// Each addition is re-certified via is_accumulation_point.  Idempotent.
FamilyDescriptor closure_E_disjoint(const FamilyDescriptor& fam, const ClosureCaps& caps = {});

// Closure under the other operators.  For disjoint-language families the
// P-closures coincide with the E-closure (the repeat-allowing mode merely
// also tolerates duplicate member theories); the general P mode is
// unsupported.
FamilyDescriptor closure_disjoint(const FamilyDescriptor& fam, OpTag op,
                                  const ClosureCaps& caps = {});

// Least generating set of a closed family: the members isolated by some
// sentence (each reported with its isolating sentence); the non-isolated
// members must be accumulation points of the isolated part.  When a member
// is neither, no least generating set exists and it is reported as the
// blocker.
struct LeastSetResult {
  bool exists = false;
  FamilyDescriptor least;                   // when exists
  std::vector<std::string> isolated;        // display names, probed members
  std::vector<FormulaPtr> isolating;        // parallel isolating sentences
  std::vector<std::string> limit_members;   // members generated by the rest
  std::optional<TheoryRef> blocker;         // when !exists
  std::string note;
};

LeastSetResult least_generating_set(const FamilyDescriptor& fam, const ClosureCaps& caps = {});

// Where a family's combinations live: inside the finitely-axiomatizable-in-
// size world, or escaping it.
struct ClassifyReport {
  Verdict stays_small;                   // all combined models bounded by `size_bound`
  std::optional<int> size_bound;         // max member model size, when bounded
  bool escapes_fin = false;              // unbounded finite sizes -> combinations outside T_fin(<=N) for every N
  bool closure_avoids_fin = false;       // no finite sizes at all -> closure meets no finite theory
  std::vector<std::string> notes;
};

ClassifyReport classify(const FamilyDescriptor& fam, OpTag op = OpTag::E,
                        const ClosureCaps& caps = {});

// Can every rank-<=q sentence of t be realized in a finite model of size
// <= N?  Yes-path: a single model of the rank-q characteristic sentence
// works for all of them.  No-path: an axiom-presented theory whose axiom is
// declared infinity-forcing and has no model up to N.
Verdict finite_approximable(const TheoryRef& t, int q, int N, const ClosureCaps& caps = {});

// Tagged-copies family over a base structure: member A_i consists of `count`
// copies of base with E<i> grouping the copies and every other E<j> equal to
// equality, plus the disjoint unary-predicate assembly of all members with
// one extra base copy outside every predicate.
struct Prop33Family {
  FamilyDescriptor fam;
  std::vector<Structure> members;  // the A_i, i < count
  PCombined assembly;
};

Prop33Family build_prop33_family(const Structure& base, int count);

}  // namespace relic

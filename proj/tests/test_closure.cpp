#include "doctest.h"

#include <set>
#include <string>
#include <vector>

#include "relic/base.hpp"
#include "relic/closure.hpp"
#include "relic/combinators.hpp"
#include "relic/cube.hpp"
#include "relic/family.hpp"
#include "relic/formula.hpp"
#include "relic/iso.hpp"
#include "relic/structure.hpp"
#include "relic/theory.hpp"

#include "helpers.hpp"

using namespace relic;
using testutil::make_unary;

namespace {

std::set<std::string> member_displays(const FamilyDescriptor& fam) {
  std::set<std::string> out;
  for (const TheoryRef& t : fam.members) out.insert(t.display);
  return out;
}

// Displays present in `closed` but not in `fam`.
std::set<std::string> additions(const FamilyDescriptor& fam, const FamilyDescriptor& closed) {
  std::set<std::string> before = member_displays(fam), out;
  for (const TheoryRef& t : closed.members)
    if (!before.count(t.display)) out.insert(t.display);
  return out;
}

}  // namespace

TEST_CASE("theory references: normalization and sentence membership") {
  // A structure with no tuples at all presents the same theory as the pure
  // set of its size.
  Structure empty5 = make_unary(5, {{}});
  TheoryRef t = fin_theory(empty5);
  CHECK(t.kind == TheoryKind::T0);
  CHECK(t.display == "T0(5)");
  CHECK(finite_model_size(t) == 5);

  FormulaPtr ge2 = size_at_least_sentence(2);
  FormulaPtr ge4 = size_at_least_sentence(4);
  CHECK(theory_contains(t0_theory(3), ge2));
  CHECK_FALSE(theory_contains(t0_theory(3), ge4));
  CHECK(theory_contains(t0inf_theory(), ge4));
  CHECK(theory_contains(t0inf_theory(), size_at_least_sentence(9)));
  CHECK_FALSE(theory_contains(t0inf_theory(), size_exactly_sentence(2)));

  // Every hypercube has all degrees positive and no isolated vertex.
  FormulaPtr no_isolated = parse_formula("forall x. exists y. R(x,y)");
  FormulaPtr isolated = parse_formula("exists x. forall y. !R(x,y)");
  CHECK(theory_contains(omega_cube_theory(), no_isolated));
  CHECK_FALSE(theory_contains(omega_cube_theory(), isolated));

  CHECK(omega_categorical(t0inf_theory()));
  CHECK(omega_categorical(dlo_theory()));
  CHECK_FALSE(omega_categorical(omega_cube_theory()));
  CHECK_FALSE(finite_model_size(dlo_theory()).has_value());
  CHECK(same_theory(fin_theory(empty5), t0_theory(5)));
  CHECK_FALSE(same_theory(t0_theory(5), t0_theory(4)));
}

TEST_CASE("counting members that satisfy a sentence") {
  ClosureCaps caps;

  // Disjoint edge symbols: only Q1 interprets R1 non-emptily.
  FamilyDescriptor cubes = ncube_family("cubes", true);
  Count one = count_satisfying(cubes, parse_formula("exists x. exists y. R1(x,y)"), caps);
  CHECK(one.kind == Count::Kind::Exact);
  CHECK(one.value == 1);

  // Every cube satisfies "some edge" over its own symbol; in the shared
  // language that is one sentence true in all infinitely many members.
  FamilyDescriptor shared = ncube_family("cubes_shared", false);
  Count all = count_satisfying(shared, parse_formula("exists x. exists y. R(x,y)"), caps);
  CHECK(all.infinite());

  // Pure-set sizes {2, 5} then every size from 7 upward.
  FamilyDescriptor sizes = empty_lang_family("sz", {2, 5}, 7);
  Count small = count_satisfying(sizes, size_exactly_sentence(2), caps);
  CHECK(small.kind == Count::Kind::Exact);
  CHECK(small.value == 1);
  CHECK(count_satisfying(sizes, size_at_least_sentence(3), caps).infinite());

  // Strided tail: even sizes only.
  FamilyDescriptor even = empty_lang_family("even", {}, 2, 2);
  CHECK(count_satisfying(even, size_at_least_sentence(3), caps).infinite());
  Count two = count_satisfying(even, size_exactly_sentence(2), caps);
  CHECK(two.kind == Count::Kind::Exact);
  CHECK(two.value == 1);
}

TEST_CASE("accumulation points of member streams") {
  ClosureCaps caps;

  FamilyDescriptor cubes = ncube_family("cubes", true);
  CHECK(is_accumulation_point(cubes, t0inf_theory(), caps).positive());
  // T0(2) is realized only by the neighborhood of Q1's language; the larger
  // cubes pin more than two elements apart at rank 3.
  CHECK_FALSE(is_accumulation_point(cubes, t0_theory(2), caps).positive());

  // Infinitely many relabeled copies of one 5-element structure accumulate
  // at the pure 5-element set and nowhere else.
  FamilyDescriptor rel5 = disjoint_relabel_family("rel5", make_unary(5, {{0}}, "b5"));
  CHECK(is_accumulation_point(rel5, t0_theory(5), caps).positive());
  Verdict off = is_accumulation_point(rel5, t0_theory(4), caps);
  CHECK_FALSE(off.positive());
  CHECK(off.witness != nullptr);  // a separating sentence is produced

  // Members are never accumulation points of a finite explicit family.
  FamilyDescriptor fin = explicit_family("fin", {t0_theory(2), t0_theory(3)}, true);
  CHECK_FALSE(is_accumulation_point(fin, t0_theory(2), caps).positive());
  CHECK_FALSE(is_accumulation_point(fin, t0inf_theory(), caps).positive());
}

TEST_CASE("limit closure: additions are exactly the certified limits") {
  ClosureCaps caps;

  FamilyDescriptor cubes = ncube_family("cubes", true);
  FamilyDescriptor cubes_cl = closure_E_disjoint(cubes, caps);
  CHECK(additions(cubes, cubes_cl) == std::set<std::string>{"T0inf"});

  FamilyDescriptor rel5 = disjoint_relabel_family("rel5", make_unary(5, {{0}}, "b5"));
  FamilyDescriptor rel5_cl = closure_E_disjoint(rel5, caps);
  CHECK(additions(rel5, rel5_cl) == std::set<std::string>{"T0(5)"});

  // Unbounded pure-set sizes accumulate at the infinite pure set.
  FamilyDescriptor even = empty_lang_family("even", {}, 2, 2);
  CHECK(additions(even, closure_E_disjoint(even, caps)) == std::set<std::string>{"T0inf"});

  FamilyDescriptor fin = explicit_family("fin", {t0_theory(2), t0_theory(3)}, true);
  CHECK(additions(fin, closure_E_disjoint(fin, caps)).empty());

  // Idempotence, and agreement of the repeat-allowing p closure.
  for (const FamilyDescriptor* fam : {&cubes_cl, &rel5_cl, &fin}) {
    FamilyDescriptor again = closure_E_disjoint(*fam, caps);
    CHECK(member_displays(again) == member_displays(*fam));
  }
  FamilyDescriptor via_pd = closure_disjoint(cubes, OpTag::Pd, caps);
  FamilyDescriptor via_pdr = closure_disjoint(cubes, OpTag::Pdr, caps);
  CHECK(member_displays(via_pd) == member_displays(cubes_cl));
  CHECK(member_displays(via_pdr) == member_displays(cubes_cl));
  CHECK_THROWS_AS((void)closure_disjoint(cubes, OpTag::P, caps), PreconditionError);
}

TEST_CASE("least generating sets") {
  ClosureCaps caps;

  // All pure-set sizes plus their limit: the sizes are each isolated by a
  // size sentence, the limit is generated by them.
  FamilyDescriptor sizes = empty_lang_family("t0all", {}, 1);
  FamilyDescriptor closed = closure_E_disjoint(sizes, caps);
  LeastSetResult res = least_generating_set(closed, caps);
  CHECK(res.exists);
  CHECK(res.limit_members == std::vector<std::string>{"T0inf"});
  CHECK(res.isolated.size() >= 3);
  CHECK(res.isolated.size() == res.isolating.size());
  for (std::size_t i = 0; i < res.isolated.size(); ++i) CHECK(res.isolating[i] != nullptr);

  // A descriptor declaring every member a limit of the others has no least
  // generating set.
  FamilyDescriptor dense = explicit_family("dense", {t0_theory(2), t0_theory(3)}, true);
  dense.declared_dense = true;
  LeastSetResult none = least_generating_set(dense, caps);
  CHECK_FALSE(none.exists);
  CHECK(none.blocker.has_value());
}

TEST_CASE("classification against the finite-size world") {
  ClosureCaps caps;

  FamilyDescriptor cubes = ncube_family("cubes", true);
  ClassifyReport rep = classify(cubes, OpTag::E, caps);
  CHECK(rep.escapes_fin);
  CHECK_FALSE(rep.stays_small.kind == Verdict::Kind::Yes);

  FamilyDescriptor fin = explicit_family("fin", {t0_theory(2), t0_theory(3)}, true);
  ClassifyReport frep = classify(fin, OpTag::E, caps);
  CHECK_FALSE(frep.escapes_fin);
  CHECK(frep.stays_small.positive());
  CHECK(frep.size_bound.has_value());
  CHECK(*frep.size_bound == 3);
}

TEST_CASE("finite approximability") {
  ClosureCaps caps;
  CHECK(finite_approximable(t0inf_theory(), 2, 3, caps).positive());
  CHECK(finite_approximable(t0_theory(4), 2, 4, caps).positive());

  FormulaPtr nomax = parse_formula(
      "(forall x. forall y. forall z. ((Lt(x,y) & Lt(y,z)) -> Lt(x,z)))"
      " & (forall x. !Lt(x,x)) & (forall x. exists y. Lt(x,y))");
  TheoryRef order = axiom_theory("order_nomax", nomax, /*forces_infinity=*/true);
  Verdict v = finite_approximable(order, 2, 4, caps);
  CHECK_FALSE(v.positive());
}

TEST_CASE("tagged-copies family and its assembly") {
  Structure base = make_unary(2, {{0}}, "b2");
  Prop33Family p33 = build_prop33_family(base, 2);

  CHECK(p33.fam.kind == FamilyKind::Prop33);
  CHECK(family_infinite(p33.fam));
  REQUIRE(p33.members.size() == 2);
  for (const Structure& m : p33.members) {
    CHECK(m.size == 4);  // two tagged copies of the 2-element base
    CHECK(m.sig.has("E0"));
    CHECK(m.sig.has("E1"));
    CHECK(m.sig.has("P0"));
  }

  // The part of the assembly outside every predicate is one untouched base
  // copy; dropping the tag symbols recovers the base itself.
  Structure ext = p_infty_extent(p33.assembly);
  std::vector<std::string> keep;
  for (const auto& sym : base.sig.symbols())
    if (ext.sig.has(sym.name)) keep.push_back(sym.name);
  Structure red = reduct(ext, keep);
  CHECK(isomorphic(red, base));
}

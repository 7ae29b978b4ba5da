#include "doctest.h"

#include <algorithm>
#include <set>
#include <vector>

#include "relic/base.hpp"
#include "relic/cardinalities.hpp"
#include "relic/closure.hpp"
#include "relic/family.hpp"
#include "relic/structure.hpp"
#include "relic/theory.hpp"

#include "helpers.hpp"

using namespace relic;
using testutil::make_unary;

namespace {

// Reference membership test, independent of the library's table filling:
// n is a nonempty sum of generators iff n == g for some generator or
// n - g is one for some generator.
bool sum_reachable(int n, const std::vector<int>& gens) {
  if (n <= 0) return false;
  for (int g : gens) {
    if (g == n) return true;
    if (g < n && sum_reachable(n - g, gens)) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("numerical semigroup enumeration matches the reference recursion") {
  std::vector<std::vector<int>> cases = {{2}, {3}, {2, 3}, {4, 6}, {3, 5, 7}, {5, 8}};
  for (const auto& gens : cases) {
    std::vector<int> got = semigroup_set(gens, 40);
    std::vector<int> want;
    for (int n = 1; n <= 40; ++n)
      if (sum_reachable(n, gens)) want.push_back(n);
    CHECK(got == want);
  }
  CHECK_THROWS_AS((void)semigroup_set({}, 10), PreconditionError);
  CHECK_THROWS_AS((void)semigroup_set({0}, 10), PreconditionError);
}

TEST_CASE("generator recovery from a sample") {
  for (std::vector<int> gens : {std::vector<int>{2}, {2, 3}, {3, 5, 7}, {4, 6, 9}}) {
    RecoverResult res = recover_generators(semigroup_set(gens, 120), 120);
    REQUIRE(res.generators.has_value());
    CHECK(*res.generators == gens);
  }
  // {3, 5} forces 8, 10, ... and in particular 6; a sample without it is
  // not an initial segment of any generated set.
  RecoverResult bad = recover_generators({3, 5}, 20);
  CHECK_FALSE(bad.generators.has_value());
  CHECK(bad.reason.find("6") != std::string::npos);
}

TEST_CASE("complete-set validation") {
  PinfValidation ok = validate_complete_pinf({3, 6, 9}, true);
  CHECK(ok.ok);
  CHECK(ok.k0 == 3);
  PinfValidation rej = validate_complete_pinf({2, 3}, true);
  CHECK_FALSE(rej.ok);
  CHECK(rej.reason.find("2") != std::string::npos);
  // Incomplete samples carry no divisibility obligation.
  PinfValidation inc = validate_complete_pinf({2, 3}, false);
  CHECK(inc.ok);
  CHECK(inc.k0 == 0);
}

TEST_CASE("cardinality sets: containment, rendering, complements") {
  CardinalitySet evens = card_progressions({2});
  CHECK(evens.render() == "2Z+");
  CHECK(evens.contains(4));
  CHECK_FALSE(evens.contains(3));
  CHECK(evens.up_to(8) == std::vector<int>{2, 4, 6, 8});

  CardinalitySet zp = card_zplus();
  CHECK(zp.render() == "Z+");
  CHECK(zp.contains(1));

  CardinalitySet sums = card_sum_closure({2, 3});
  CHECK(sums.render() == "<2,3>");
  CHECK_FALSE(sums.contains(1));
  CHECK(sums.up_to(6) == std::vector<int>{2, 3, 4, 5, 6});
  CHECK(card_sum_closure({4}).render() == "4Z+");

  CardinalitySet odd = card_complement(evens);
  CHECK(odd.contains(1));
  CHECK_FALSE(odd.contains(2));
  CHECK(odd.render() == "Z+ \\ 2Z+");
  // Complement twice unwraps.
  CHECK(card_equal_up_to(card_complement(odd), evens, 100));

  CardinalitySet cof = card_cofinite({1, 2, 4});
  CHECK(cof.contains(3));
  CHECK_FALSE(cof.contains(4));
  CHECK(card_complement(card_empty()).render() == "Z+");
  CHECK(card_complement(zp).up_to(50).empty());

  CardinalitySet trimmed = card_minus(evens, {2, 6});
  CHECK_FALSE(trimmed.contains(2));
  CHECK(trimmed.contains(4));
  CHECK_FALSE(trimmed.contains(6));
}

TEST_CASE("cardinality profiles per family and operator") {
  ClosureCaps caps;

  // E-combinations never create classes: both difference sets are empty.
  FamilyDescriptor rel3 = disjoint_relabel_family("rel3", make_unary(3, {{0}}, "b3"));
  CardProfile e = card_profile(rel3, OpTag::E, caps);
  CHECK(e.c.render() == "{3}");
  CHECK(e.c_bar.up_to(64).empty());
  CHECK(e.c_hat.up_to(64).empty());

  // Tagged combinations of infinitely many 3-element blocks realize every
  // multiple of 3 and nothing else new.
  CardProfile pd = card_profile(rel3, OpTag::Pd, caps);
  CHECK(pd.c_hat.render() == "3Z+");
  CHECK(pd.c_hat.contains(6));
  CHECK_FALSE(pd.c_bar.contains(3));  // the member size itself is not new
  CHECK(pd.c_bar.contains(6));

  // Finite families: nothing to accumulate.
  FamilyDescriptor fin = explicit_family("fin", {t0_theory(2), t0_theory(3)}, true);
  CardProfile fp = card_profile(fin, OpTag::Pd, caps);
  CHECK(fp.c.up_to(10) == std::vector<int>{2, 3});
  CHECK(fp.c_bar.up_to(64).empty());
  CHECK(fp.c_hat.up_to(64).empty());

  // Pure-set families: combined sizes run over all of Z+.
  FamilyDescriptor even = empty_lang_family("even", {}, 2, 2);
  CardProfile ep = card_profile(even, OpTag::Pd, caps);
  CHECK(ep.c.render() == "2Z+");
  CHECK(ep.c_hat.render() == "Z+");
  CHECK(card_equal_up_to(ep.c_bar, card_complement(card_progressions({2})), 100));
}

TEST_CASE("families realizing the complement of a symbolic set") {
  for (int k : {1, 2, 3}) {
    FamilyDescriptor fam = complement_family(card_progressions({k}));
    CardProfile prof = card_profile(fam, OpTag::Pd, ClosureCaps{});
    CHECK(card_equal_up_to(prof.c, card_progressions({k}), 60));
    CHECK(card_equal_up_to(prof.c_bar, card_complement(card_progressions({k})), 60));
  }
  FamilyDescriptor cof = complement_family(card_cofinite({1, 2, 4}));
  CardProfile prof = card_profile(cof, OpTag::Pd, ClosureCaps{});
  CHECK(card_equal_up_to(prof.c, card_cofinite({1, 2, 4}), 60));
  CHECK(prof.c_bar.up_to(60) == std::vector<int>{1, 2, 4});

  CHECK_THROWS_AS((void)complement_family(card_finite({2, 3})), PreconditionError);
}

TEST_CASE("semi-isolation over unlinked blocks") {
  // Two cliques of sizes 2 and 3: semi-isolation holds within a block and
  // fails across, so the classes are exactly the blocks.
  Structure s;
  s.name = "blocks23";
  s.sig.add({"R", 2});
  s.size = 5;
  s.tables.resize(1);
  auto clique = [&](std::vector<int> block) {
    for (int a : block)
      for (int b : block)
        if (a != b) table_insert(s.tables[0], {a, b});
  };
  clique({0, 1});
  clique({2, 3, 4});

  SIRelation si = si_relation(s, SISelector::all(), s.size);
  CHECK(si.is_equivalence());
  std::vector<std::vector<int>> classes = si.classes();
  REQUIRE(classes.size() == 2);
  std::set<std::vector<int>> got(classes.begin(), classes.end());
  std::set<std::vector<int>> want = {{0, 1}, {2, 3, 4}};
  CHECK(got == want);

  // Component structure agrees.
  std::vector<int> comp = component_ids(s);
  CHECK(comp[0] == comp[1]);
  CHECK(comp[2] == comp[3]);
  CHECK(comp[0] != comp[2]);

  // Equal-size blocks still separate.
  Structure twin;
  twin.name = "blocks22";
  twin.sig.add({"R", 2});
  twin.size = 4;
  twin.tables.resize(1);
  for (auto [a, b] : std::vector<std::pair<int, int>>{{0, 1}, {1, 0}, {2, 3}, {3, 2}})
    table_insert(twin.tables[0], {a, b});
  SIRelation tsi = si_relation(twin, SISelector::all(), twin.size);
  CHECK(tsi.is_equivalence());
  CHECK(tsi.classes().size() == 2);
}

TEST_CASE("selectors restrict the semi-isolation base set") {
  Structure s = make_unary(4, {{0, 1}}, "u");
  SIRelation out = si_relation(s, SISelector::outside({"P0"}), s.size);
  CHECK(out.selected == std::vector<int>{2, 3});
  SIRelation cls = si_relation(s, SISelector::type_class_of(0), s.size);
  CHECK_FALSE(cls.selected.empty());
  CHECK_THROWS_AS((void)si_relation(s, SISelector::type_class_of(9), s.size),
                  PreconditionError);
}

TEST_CASE("class sizes induce the sum-closed cardinality set") {
  CardinalitySet chat = chat_from_si_classes({2, 3});
  std::vector<int> dp = semigroup_set({2, 3}, 50);
  for (int n = 1; n <= 50; ++n)
    CHECK(chat.contains(n) == (std::find(dp.begin(), dp.end(), n) != dp.end()));
  // Multiplicity of a size does not change the generated set.
  CHECK(card_equal_up_to(chat_from_si_classes({2, 2, 3}), chat, 50));

  FamilyDescriptor rel3 = disjoint_relabel_family("rel3", make_unary(3, {{0}}, "b3"));
  CHECK(chat_d_equals_dr(rel3));
}

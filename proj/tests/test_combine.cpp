#include "doctest.h"

#include <algorithm>
#include <set>

#include "relic/base.hpp"
#include "relic/canonical.hpp"
#include "relic/combinators.hpp"
#include "relic/cube.hpp"
#include "relic/ef.hpp"
#include "relic/eval.hpp"
#include "relic/iso.hpp"
#include "relic/model_finder.hpp"
#include "relic/refine.hpp"

#include "helpers.hpp"

using namespace relic;
using testutil::make_cycle;
using testutil::relabel;

namespace {

Signature graph_sig() {
  Signature sig;
  sig.add({"R", 2});
  return sig;
}

bool is_equivalence(const Table& e, int size) {
  auto has = [&](int a, int b) { return table_contains(e, {a, b}); };
  for (int a = 0; a < size; ++a)
    if (!has(a, a)) return false;
  for (int a = 0; a < size; ++a)
    for (int b = 0; b < size; ++b) {
      if (has(a, b) != has(b, a)) return false;
      for (int c = 0; c < size; ++c)
        if (has(a, b) && has(b, c) && !has(a, c)) return false;
    }
  return true;
}

Structure block_restriction(const Structure& base, const std::vector<int>& block,
                            const Signature& block_sig) {
  Structure ind = induced_substructure(base, block);
  std::vector<std::string> keep;
  for (const auto& sym : block_sig.symbols()) keep.push_back(sym.name);
  return reduct(ind, keep);
}

int naive_model_count(const FormulaPtr& f, int n) {
  // All {R/2} tables of size n, filtered by evaluate, deduplicated by
  // canonical form — the completeness oracle for the finder.
  std::set<CanonicalForm> seen;
  const std::size_t cells = (std::size_t)n * (std::size_t)n;
  for (std::size_t mask = 0; mask < (std::size_t{1} << cells); ++mask) {
    Structure s;
    s.name = "naive";
    s.sig = graph_sig();
    s.size = n;
    s.tables.resize(1);
    for (std::size_t c = 0; c < cells; ++c)
      if (mask & (std::size_t{1} << c))
        table_insert(s.tables[0], {(int)(c / (std::size_t)n), (int)(c % (std::size_t)n)});
    if (evaluate(s, f)) seen.insert(canonical_form(s));
  }
  return (int)seen.size();
}

}  // namespace

TEST_CASE("e-combination") {
  Structure q2 = make_ncube(2), q3 = make_ncube(3);
  ECombined ec = e_combination({q2, q3});
  CHECK(ec.base.size == 12);
  REQUIRE(ec.classes.size() == 2);
  CHECK(ec.classes[0].size() == 4);
  CHECK(ec.classes[1].size() == 8);
  CHECK(ec.base.sig.has("E"));
  CHECK(ec.base.sig.has("R_0"));
  CHECK(ec.base.sig.has("R_1"));

  const Table& e = ec.base.table("E");
  CHECK(is_equivalence(e, ec.base.size));
  CHECK(e.size() == 16 + 64);  // two full blocks
  CHECK_FALSE(table_contains(e, {0, 4}));  // no cross-block pairs

  // Per-class reduct recovers the inputs up to isomorphism.
  Signature s0, s1;
  s0.add({"R_0", 2});
  s1.add({"R_1", 2});
  CHECK(isomorphic(block_restriction(ec.base, ec.classes[0], s0), q2));
  CHECK(isomorphic(block_restriction(ec.base, ec.classes[1], s1), q3));

  // Single input: the structure expanded by a total E.
  ECombined one = e_combination({q2});
  CHECK(one.base.size == 4);
  CHECK(one.base.table("E").size() == 16);

  CHECK_THROWS_AS(e_combination({}), PreconditionError);
}

TEST_CASE("p-combination modes") {
  Structure q2 = make_ncube(2), q3 = make_ncube(3);

  PCombined rep = p_combination({q2, q2}, PMode::Repeat);
  CHECK(rep.base.size == 8);
  REQUIRE(rep.blocks.size() == 2);
  Signature s0, s1;
  s0.add({"R_0", 2});
  s1.add({"R_1", 2});
  CHECK(isomorphic(block_restriction(rep.base, rep.blocks[0], s0), q2));
  CHECK(isomorphic(block_restriction(rep.base, rep.blocks[1], s1), q2));
  // P extents are disjoint and cover everything (no extra part).
  CHECK(rep.base.table("P0").size() == 4);
  CHECK(rep.base.table("P1").size() == 4);
  CHECK(p_infty_extent(rep).size == 0);

  // Disjoint mode rejects duplicate isomorphism types.
  CHECK_THROWS_WITH_AS(p_combination({q2, relabel(q2, {3, 2, 1, 0})}, PMode::Disjoint),
                       "p_combination: repetition requires mode repeat", PreconditionError);
  CHECK_NOTHROW(p_combination({q2, q3}, PMode::Disjoint));

  // Theory invariance: replacing blocks by isomorphic copies leaves the
  // canonical form of the combination unchanged.
  PCombined a = p_combination({q2, q3}, PMode::Disjoint);
  PCombined b = p_combination({relabel(q2, {2, 3, 0, 1}), relabel(q3, {7, 6, 5, 4, 3, 2, 1, 0})},
                              PMode::Disjoint);
  CanonCaps big;
  big.max_size = 12;
  CHECK(canonical_form(a.base, big) == canonical_form(b.base, big));

  CHECK_THROWS_AS(p_combination({}, PMode::Repeat), PreconditionError);
  CHECK_THROWS_AS(p_combination({q2, q3}, PMode::Disjoint, std::nullopt, {{0, 0, 1, 0}}),
                  PreconditionError);
}

TEST_CASE("p-infinity extents") {
  Structure q2 = make_ncube(2), q3 = make_ncube(3);

  // Three loose elements: a finite stand-in for a T0_3 model.
  Structure loose;
  loose.name = "loose";
  loose.size = 3;
  PCombined pc = p_combination({q2, q3}, PMode::Disjoint, loose);
  Structure ext = p_infty_extent(pc);
  CHECK(ext.size == 3);
  CHECK(ext.sig.empty());

  // Extra with its own relations: two 2-element classes (k=2 shape).
  Structure classes2;
  classes2.name = "k2";
  classes2.sig.add({"Ecl", 2});
  classes2.size = 4;
  classes2.tables.resize(1);
  for (int base : {0, 2})
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) table_insert(classes2.tables[0], {base + a, base + b});
  PCombined pk = p_combination({q2}, PMode::Repeat, classes2);
  Structure kext = p_infty_extent(pk);
  CHECK(kext.size == 4);
  REQUIRE(kext.sig.size() == 1);
  CHECK(kext.sig.has("Ecl"));
  CHECK(isomorphic(kext, classes2));
  // No links between the extra part and the blocks.
  for (const auto& tup : pk.base.table("R_0"))
    for (int v : tup) CHECK(v < 4);

  // Extra signature clash is rejected.
  Structure clash;
  clash.name = "clash";
  clash.sig.add({"P0", 1});
  clash.size = 1;
  clash.tables.resize(1);
  CHECK_THROWS_AS(p_combination({q2}, PMode::Repeat, clash), PreconditionError);
}

TEST_CASE("general mode overlaps") {
  Structure p2 = testutil::make_path(2, "p2", "R");
  PCombined g = p_combination({p2, p2}, PMode::General, std::nullopt, {{0, 0, 1, 0}});
  CHECK(g.base.size == 3);  // 2 + 2 - 1 identified
  CHECK(g.blocks[0] == std::vector<int>{0, 1});
  CHECK(g.blocks[1] == std::vector<int>{0, 2});
  CHECK(table_contains(g.base.table("P0"), {0}));
  CHECK(table_contains(g.base.table("P1"), {0}));

  // Identifying two elements of one block (here transitively) is rejected.
  CHECK_THROWS_WITH_AS(
      p_combination({p2, p2}, PMode::General, std::nullopt, {{0, 0, 1, 0}, {0, 1, 1, 0}}),
      "p_combination: overlap map inconsistent", PreconditionError);
  CHECK_THROWS_AS(p_combination({p2, p2}, PMode::General, std::nullopt, {{0, 0, 0, 1}}),
                  PreconditionError);
  CHECK_THROWS_AS(p_combination({p2, p2}, PMode::General, std::nullopt, {{0, 0, 2, 0}}),
                  PreconditionError);
}

TEST_CASE("model finder: small exact counts") {
  Signature sig = graph_sig();
  FormulaPtr nonempty = parse_formula("exists x. x = x", sig);
  CHECK(find_models(nonempty, sig, 1).size() == 2);  // loop or no loop

  FormulaPtr full = parse_formula("forall x. forall y. R(x,y)", sig);
  auto fm = find_models(full, sig, 2);
  REQUIRE(fm.size() == 1);
  CHECK(fm[0].tables[0].size() == 4);

  // Completeness oracle: naive enumeration over all tables, n <= 3.
  std::vector<const char*> sentences = {
      "forall x. exists y. R(x,y)",
      "exists x. R(x,x) & (forall x. forall y. (R(x,y) -> R(y,x)))",
      "forall x. !R(x,x) & (forall x. forall y. (R(x,y) -> R(y,x)))",
      "exists x. forall y. R(x,y) | R(y,x)",
  };
  for (const char* text : sentences) {
    FormulaPtr f = parse_formula(text, sig);
    for (int n = 1; n <= 3; ++n)
      CHECK((int)find_models(f, sig, n).size() == naive_model_count(f, n));
  }

  // Soundness: every reported model satisfies the sentence.
  for (const char* text : sentences) {
    FormulaPtr f = parse_formula(text, sig);
    for (const auto& m : find_models(f, sig, 3))
      CHECK(evaluate(m, f));
  }

  CHECK_THROWS_AS(find_models(parse_formula("R(x,y)", sig), sig, 2), PreconditionError);
  CHECK_THROWS_AS(find_models(nonempty, sig, 0), PreconditionError);
  CHECK_THROWS_AS(find_models(nonempty, sig, 9), CapExceeded);
  Signature empty_sig;
  CHECK_THROWS_AS(find_models(parse_formula("exists x. R(x,x)"), empty_sig, 2),
                  PreconditionError);
}

TEST_CASE("model finder: spectra and forcing the infinity") {
  Signature sig = graph_sig();
  FormulaPtr order_nomax = parse_formula(
      "(forall x. !R(x,x))"
      " & (forall x. forall y. forall z. (R(x,y) & R(y,z) -> R(x,z)))"
      " & (forall x. exists y. R(x,y))",
      sig);
  CHECK(fin_spectrum(order_nomax, sig, 5).empty());
  ForcesInfinityVerdict v = forces_infinity(order_nomax, sig, 5);
  CHECK_FALSE(v.refuted);
  CHECK(v.n == 5);

  FormulaPtr loop = parse_formula("exists x. R(x,x)", sig);
  ForcesInfinityVerdict r = forces_infinity(loop, sig, 1);
  CHECK(r.refuted);
  CHECK(r.n == 1);
  REQUIRE(r.witness.has_value());
  CHECK(evaluate(*r.witness, loop));

  // The Scott sentence of Q_2 pins size 4 and the cube itself.
  FormulaPtr sigma = scott_sentence(make_ncube(2));
  CHECK(fin_spectrum(sigma, sig, 5) == std::vector<int>{4});
  auto models = find_models(sigma, sig, 4);
  REQUIRE(models.size() == 1);
  CHECK(isomorphic(models[0], make_ncube(2)));
  ForcesInfinityVerdict s = forces_infinity(sigma, sig, 4);
  CHECK(s.refuted);
  CHECK(s.n == 4);

  // Empty-relation signature: every size has the (unique) model.
  Signature none;
  FormulaPtr pair = parse_formula("exists x. exists y. !(x = y)");
  CHECK(fin_spectrum(pair, none, 4) == std::vector<int>{2, 3, 4});
}

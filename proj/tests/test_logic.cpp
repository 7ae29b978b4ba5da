#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <random>

#include "relic/base.hpp"
#include "relic/cube.hpp"
#include "relic/ef.hpp"
#include "relic/eval.hpp"
#include "relic/formula.hpp"
#include "relic/iso.hpp"
#include "relic/lang_uniform.hpp"
#include "relic/rank_types.hpp"
#include "relic/refine.hpp"
#include "relic/type_algebra.hpp"

#include "helpers.hpp"

using namespace relic;
using testutil::make_cycle;
using testutil::make_unary;
using testutil::relabel;

namespace {

Signature graph_sig() {
  Signature sig;
  sig.add({"R", 2});
  return sig;
}

Structure two_triangles() {
  Structure s = disjoint_copies(make_cycle(3, "t", "R"), 2);
  s.name = "t2";
  return s;
}

Structure edgeless(int k) {
  Structure s;
  s.name = "e" + std::to_string(k);
  s.sig = graph_sig();
  s.size = k;
  s.tables.resize(1);
  return s;
}

Structure random_graph(int size, std::mt19937& rng) {
  Structure s = edgeless(size);
  std::bernoulli_distribution coin(0.5);
  for (int a = 0; a < size; ++a)
    for (int b = 0; b < size; ++b)
      if (coin(rng)) table_insert(s.tables[0], {a, b});
  return s;
}

std::vector<int> normalized(const std::vector<int>& classes) {
  std::vector<int> remap(classes.size(), -1), out;
  int next = 0;
  for (int c : classes) {
    if (remap[(std::size_t)c] < 0) remap[(std::size_t)c] = next++;
    out.push_back(remap[(std::size_t)c]);
  }
  return out;
}

}  // namespace

TEST_CASE("formula parse, render, rank, free variables") {
  Signature sig = graph_sig();
  FormulaPtr f = parse_formula("forall x. exists y. R(x,y)", sig);
  CHECK(quantifier_rank(f) == 2);
  CHECK(is_sentence(f));
  CHECK(free_vars(f).empty());

  FormulaPtr g = parse_formula("R(x,y) & !(x = y) -> exists z. R(y,z)", sig);
  CHECK(quantifier_rank(g) == 1);
  CHECK(free_vars(g) == std::vector<std::string>{"x", "y"});

  // Round trip through the renderer preserves alpha-equivalence.
  for (const char* text :
       {"forall x. exists y. R(x,y)", "R(x,y) & !(x = y) -> exists z. R(y,z)",
        "(forall x. R(x,x)) <-> (true -> exists y. R(y,y))", "x = y | false"}) {
    FormulaPtr a = parse_formula(text, sig);
    FormulaPtr b = parse_formula(render_formula(a), sig);
    CHECK(alpha_key(a) == alpha_key(b));
  }

  CHECK(alpha_key(parse_formula("forall x. R(x,x)", sig)) ==
        alpha_key(parse_formula("forall y. R(y,y)", sig)));
  CHECK(alpha_key(parse_formula("forall x. R(x,x)", sig)) !=
        alpha_key(parse_formula("exists x. R(x,x)", sig)));

  CHECK_THROWS_AS(parse_formula("Q(x)", sig), ParseError);        // unknown symbol
  CHECK_THROWS_AS(parse_formula("R(x)", sig), ParseError);        // arity mismatch
  CHECK_THROWS_AS(parse_formula("forall x x", sig), ParseError);  // missing dot
  CHECK_THROWS_AS(parse_formula("R(x,y) &", sig), ParseError);

  Signature inferred = inferred_signature(parse_formula("S(x,y,z) & P(x)"));
  CHECK(inferred.has("S"));
  CHECK(inferred.arity("S") == 3);
  CHECK(inferred.arity("P") == 1);
}

TEST_CASE("evaluation on cubes and dualities") {
  Structure q2 = make_ncube(2);
  Signature sig = graph_sig();
  CHECK(evaluate(q2, parse_formula("forall x. exists y. R(x,y)", sig)));
  CHECK_FALSE(evaluate(q2, parse_formula("exists x. R(x,x)", sig)));
  CHECK(evaluate(q2, parse_formula("R(x,y) | x = y", sig), {{"x", 0}, {"y", 1}}));
  CHECK_FALSE(evaluate(q2, parse_formula("R(x,y)", sig), {{"x", 0}, {"y", 3}}));
  CHECK_THROWS_AS(evaluate(q2, parse_formula("R(x,y)", sig), {{"x", 0}}), PreconditionError);

  // exists x. x = x  <=>  size >= 1 (including the empty structure).
  FormulaPtr nonempty = parse_formula("exists x. x = x", sig);
  Structure empty;
  empty.name = "nothing";
  empty.sig = graph_sig();
  empty.size = 0;
  empty.tables.resize(1);
  CHECK_FALSE(evaluate(empty, nonempty));
  CHECK(evaluate(make_ncube(0), nonempty));

  // Dualities, exhaustively over all {R/2}-structures of size <= 2.
  std::vector<FormulaPtr> fs = {
      parse_formula("forall x. exists y. R(x,y)", sig),
      parse_formula("exists x. R(x,x)", sig),
      parse_formula("forall x. (R(x,x) -> exists y. R(y,x))", sig),
  };
  for (int size = 1; size <= 2; ++size) {
    const std::size_t cells = (std::size_t)size * (std::size_t)size;
    for (std::size_t mask = 0; mask < (std::size_t{1} << cells); ++mask) {
      Structure s = edgeless(size);
      for (std::size_t c = 0; c < cells; ++c)
        if (mask & (std::size_t{1} << c))
          table_insert(s.tables[0], {(int)(c / (std::size_t)size), (int)(c % (std::size_t)size)});
      for (const auto& f : fs) CHECK(evaluate(s, f_not(f)) == !evaluate(s, f));
      // forall u. f  <=>  every instance of the body holds.
      FormulaPtr open_f = parse_formula("exists y. R(u,y)", sig);
      bool every = true;
      for (int v = 0; v < size; ++v) every = every && evaluate(s, open_f, {{"u", v}});
      CHECK(evaluate(s, bind_formula(f_forall("u", open_f))) == every);
    }
  }
}

TEST_CASE("solution sets: parallel kernel matches serial reference") {
  Structure q3 = make_ncube(3);
  Signature sig = graph_sig();
  FormulaPtr edge = parse_formula("R(x,y)", sig);
  auto par = solution_set(q3, edge, {"x", "y"});
  auto ser = solution_set_serial(q3, edge, {"x", "y"});
  REQUIRE(par.size() == 64);
  CHECK(par == ser);
  CHECK(std::accumulate(par.begin(), par.end(), 0) == 24);  // 12 undirected edges

  FormulaPtr dist2 = parse_formula("exists z. R(x,z) & R(z,y)", sig);
  CHECK(solution_set(q3, dist2, {"x", "y"}) == solution_set_serial(q3, dist2, {"x", "y"}));

  CHECK_THROWS_AS(solution_set(q3, edge, {"x"}), PreconditionError);  // y uncovered
}

TEST_CASE("three-valued evaluation") {
  Signature sig = graph_sig();
  auto unknown = [](std::size_t, const Tuple&) { return Tri::Unknown; };
  auto yes = [](std::size_t, const Tuple&) { return Tri::True; };

  FormulaPtr loop = parse_formula("exists x. R(x,x)", sig);
  CHECK(eval3(loop, sig, 2, unknown) == Tri::Unknown);
  CHECK(eval3(loop, sig, 2, yes) == Tri::True);

  // Kleene logic does not validate the excluded middle on unknowns.
  FormulaPtr lem = parse_formula("forall x. R(x,x) | !R(x,x)", sig);
  CHECK(eval3(lem, sig, 2, unknown) == Tri::Unknown);

  // Equality never consults the oracle.
  FormulaPtr eq = parse_formula("forall x. x = x", sig);
  CHECK(eval3(eq, sig, 3, unknown) == Tri::True);

  // Determinate parts decide regardless of unknowns elsewhere.
  auto diag = [](std::size_t, const Tuple& t) {
    return t[0] == t[1] ? Tri::True : Tri::Unknown;
  };
  CHECK(eval3(loop, sig, 2, diag) == Tri::True);
}

TEST_CASE("rank-q equivalence and characteristic sentences") {
  Structure c6 = make_cycle(6, "c6", "R");
  Structure t2 = two_triangles();
  EfUniverse ef;

  // Relabeling never changes the fingerprint.
  Structure moved = relabel(c6, {3, 1, 5, 0, 4, 2});
  CHECK(ef.fingerprint(c6, 3) == ef.fingerprint(moved, 3));

  // C6 vs two triangles: 2-round equivalent, 3-round separable.
  CHECK(ef.equivalent(c6, t2, 2));
  CHECK_FALSE(ef.equivalent(c6, t2, 3));
  // Independent certificate: the rank-3 triangle sentence separates them.
  FormulaPtr triangle =
      parse_formula("exists x. exists y. exists z. R(x,y) & R(y,z) & R(z,x)", graph_sig());
  CHECK(quantifier_rank(triangle) == 3);
  CHECK(evaluate(t2, triangle));
  CHECK_FALSE(evaluate(c6, triangle));

  // Hintikka sentence of C6 at rank 3 holds exactly on the C6 side.
  FormulaPtr h = ef.hintikka_sentence(c6, 3);
  CHECK(quantifier_rank(h) == 3);
  CHECK(evaluate(c6, h));
  CHECK(evaluate(moved, h));
  CHECK_FALSE(evaluate(t2, h));

  // Q_2 vs the 4-element edgeless graph separate at rank 2.
  Structure q2 = make_ncube(2);
  CHECK_FALSE(ef.equivalent(q2, edgeless(4), 2));
  CHECK(ef.equivalent(q2, edgeless(4), 1));
}

TEST_CASE("hintikka formulas define their tuple classes") {
  Structure p3 = testutil::make_path(3, "p3", "R");
  EfUniverse ef;
  for (int q = 0; q <= 2; ++q) {
    std::vector<int> classes = ef.tuple_classes(p3, 1, q);
    for (int v = 0; v < 3; ++v) {
      FormulaPtr phi = ef.hintikka(p3, {v}, q);
      auto sol = solution_set(p3, phi, {"x0"});
      for (int w = 0; w < 3; ++w) CHECK((sol[(std::size_t)w] != 0) == (classes[(std::size_t)w] == classes[(std::size_t)v]));
    }
  }
}

TEST_CASE("scott sentences and orbit formulas") {
  Structure c6 = make_cycle(6, "c6", "R");
  FormulaPtr sigma = scott_sentence(c6);
  CHECK(quantifier_rank(sigma) == 7);
  CHECK(evaluate(c6, sigma));
  CHECK(evaluate(relabel(c6, {5, 3, 1, 0, 2, 4}), sigma));
  CHECK_FALSE(evaluate(two_triangles(), sigma));
  CHECK_FALSE(evaluate(make_cycle(5, "c5", "R"), sigma));
  CHECK_FALSE(evaluate(make_cycle(7, "c7", "R"), sigma));

  Structure p3 = testutil::make_path(3, "p3", "R");
  auto ends = solution_set(p3, orbit_formula(p3, {0}), {"x0"});
  CHECK(ends == std::vector<std::uint8_t>{1, 0, 1});
  auto mid = solution_set(p3, orbit_formula(p3, {1}), {"x0"});
  CHECK(mid == std::vector<std::uint8_t>{0, 1, 0});

  CHECK(evaluate(make_ncube(0), size_exactly_sentence(1)));
  CHECK_FALSE(evaluate(make_ncube(1), size_exactly_sentence(1)));
  CHECK(evaluate(make_ncube(1), size_at_least_sentence(2)));
  CHECK_FALSE(evaluate(make_ncube(0), size_at_least_sentence(2)));
}

TEST_CASE("rank type partitions and type counts") {
  Structure p3 = testutil::make_path(3, "p3", "R");
  RankTypePartition r0 = rank_types(p3, 1, 0);
  CHECK(r0.num_classes == 1);  // all vertices share the atomic type
  CHECK_FALSE(r0.stabilized);
  RankTypePartition r1 = rank_types(p3, 1, 1);
  CHECK(r1.num_classes == 2);  // endpoints vs middle
  CHECK(r1.stabilized);
  CHECK(r1.class_of == std::vector<int>{0, 1, 0});
  CHECK(type_count(p3, 1) == 2);

  Structure q3 = make_ncube(3);
  CHECK(rank_types(q3, 1, 0).num_classes == 1);
  CHECK(type_count(q3, 1) == 1);  // vertex-transitive

  // The refinement chain's limit is the orbit partition (random graphs).
  std::mt19937 rng(20240817);
  for (int trial = 0; trial < 24; ++trial) {
    int size = 3 + (int)(rng() % 3);  // 3..5
    Structure s = random_graph(size, rng);
    for (int n = 1; n <= 2; ++n) {
      TuplePartition wl = wl_partition(s, n, -1);
      OrbitPartition orb = automorphism_orbits(s, n);
      CHECK(normalized(wl.class_of) == normalized(orb.orbit_of));
      RankTypePartition deep = rank_types(s, n, size);
      CHECK(deep.stabilized);
      CHECK(normalized(deep.class_of) == normalized(orb.orbit_of));
    }
  }
}

TEST_CASE("type algebra over tuple orbits") {
  Structure q3 = make_ncube(3);
  TypeAlgebra one = type_algebra(q3, 1);
  CHECK(one.type_count() == 1);
  CHECK(one.element_count() == 2);
  CHECK(one.less(one.bottom(), one.top()));
  CHECK(one.rho(one.bottom(), one.top()) == 1);

  // Two disjoint 3-cubes: m_2 = 5, so B_2 has 2^5 elements and diameter 5.
  Structure pair3 = disjoint_copies(q3, 2);
  TypeAlgebra ta = type_algebra(pair3, 2);
  CHECK(ta.type_count() == 5);
  CHECK(ta.element_count() == 32);
  CHECK(ta.rho(ta.bottom(), ta.top()) == 5);
  CHECK(ta.rho(ta.top(), ta.top()) == 0);
  for (int i = 0; i < 5; ++i) CHECK(ta.rho(ta.bottom(), ta.atom(i)) == 1);
  CHECK(ta.meet(ta.atom(0), ta.atom(1)) == ta.bottom());
  CHECK(ta.join(ta.complement(ta.atom(0)), ta.atom(0)) == ta.top());
  CHECK(ta.leq(ta.atom(2), ta.join(ta.atom(2), ta.atom(4))));
  CHECK_THROWS_AS(ta.rho(ta.top() + 1, ta.bottom()), PreconditionError);

  // m_2 = n + 2 for k >= 2 disjoint n-cubes.
  for (int n = 1; n <= 3; ++n)
    CHECK(type_algebra(disjoint_copies(make_ncube(n), 2), 2).type_count() == n + 2);
  CHECK(type_algebra(disjoint_copies(make_ncube(2), 3), 2).type_count() == 4);

  // Labels: bottom and top are the canonical (un)satisfiable formulas; an
  // atom's label defines exactly its orbit.
  auto bot_sol = solution_set(q3, one.label(one.bottom()), {"x0"});
  auto top_sol = solution_set(q3, one.label(one.top()), {"x0"});
  CHECK(std::count(bot_sol.begin(), bot_sol.end(), 1) == 0);
  CHECK(std::count(top_sol.begin(), top_sol.end(), 1) == 8);
  Structure p3 = testutil::make_path(3, "p3", "R");
  TypeAlgebra tp = type_algebra(p3, 1);
  REQUIRE(tp.type_count() == 2);
  auto a0 = solution_set(p3, tp.label(tp.atom(0)), {"x0"});
  CHECK(a0 == std::vector<std::uint8_t>{1, 0, 1});
}

TEST_CASE("witnessing between solution sets") {
  Structure q3 = make_ncube(3);
  Signature sig = graph_sig();
  FormulaPtr phi = parse_formula("R(x,y)", sig);
  FormulaPtr psi = parse_formula("exists z. (R(x,z) & R(z,y)) | R(x,y) | x = y", sig);
  CHECK(witnesses(q3, phi, psi, 2));
  CHECK_FALSE(witnesses(q3, psi, phi, 2));
  CHECK_FALSE(witnesses(q3, phi, phi, 2));  // not strict

  FormulaPtr unsat = parse_formula("R(x,y) & !(x = x)", sig);
  FormulaPtr all = parse_formula("x = x & y = y", sig);
  CHECK(witnesses(q3, unsat, all, 2));

  CHECK_THROWS_AS(witnesses(q3, phi, parse_formula("x = x", sig), 2), PreconditionError);
}

TEST_CASE("language uniformity and its coarsest partition") {
  // Unary: P0 full, P1 empty, P2 full -> classes {P0,P2} | {P1}.
  Structure u = make_unary(3, {{0, 1, 2}, {}, {0, 1, 2}});
  auto parts = alu_partition(u);
  REQUIRE(parts.size() == 1);
  CHECK(parts[0].arity == 1);
  CHECK(parts[0].classes == std::vector<std::vector<int>>{{0, 2}, {1}});
  CHECK(lu_check(u).all());  // only one *non-empty* pair to swap, and it preserves

  // Binary: R1 = full square, R2 = a single pair -> not LU at arity 2.
  Structure b;
  b.name = "b";
  b.sig.add({"R1", 2});
  b.sig.add({"R2", 2});
  b.size = 2;
  b.tables.resize(2);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) table_insert(b.tables[0], {x, y});
  table_insert(b.tables[1], {0, 1});
  LuReport rep = lu_check(b);
  REQUIRE(rep.per_arity.size() == 1);
  CHECK(rep.per_arity[0].arity == 2);
  CHECK_FALSE(rep.per_arity[0].uniform);
  CHECK_FALSE(rep.all());
  auto bparts = alu_partition(b);
  CHECK(bparts[0].classes == std::vector<std::vector<int>>{{0}, {1}});  // discrete

  // Single symbol: vacuously uniform.
  CHECK(lu_check(make_cycle(5)).all());

  // Two interchangeable nonempty unary predicates: one class, LU.
  Structure v = make_unary(4, {{0, 1}, {2, 3}});
  CHECK(lu_check(v).all());
  auto vparts = alu_partition(v);
  CHECK(vparts[0].classes == std::vector<std::vector<int>>{{0, 1}});

  // Swap helper sanity.
  CHECK_THROWS_AS(swap_tables(b, 0, 2), PreconditionError);
  Structure sw = swap_tables(b, 0, 1);
  CHECK(sw.tables[0].size() == 1);
  CHECK(sw.tables[1].size() == 4);
}

TEST_CASE("hypercubes") {
  Structure q3 = make_ncube(3);
  CHECK(q3.size == 8);
  CHECK(q3.tables[0].size() == 24);  // 12 undirected edges
  Structure q0 = make_ncube(0);
  CHECK(q0.size == 1);
  CHECK(q0.tables[0].empty());
  CHECK(isomorphic(make_ncube(2), make_cycle(4)));
  CHECK_THROWS_AS(make_ncube(-1), PreconditionError);
  CHECK_THROWS_AS(make_ncube(13), PreconditionError);
}

TEST_CASE("rank-q sentence streams") {
  Signature punary;
  punary.add({"P", 1});
  SentenceStream st = sentences_up_to(punary, 1);
  CHECK(st.complete);
  CHECK(!st.sentences.empty());
  for (const auto& f : st.sentences) {
    CHECK(is_sentence(f));
    CHECK(quantifier_rank(f) <= 1);
  }
  // The stream separates the all-P point from the no-P point.
  Structure pfull = make_unary(1, {{0}}, "pf");
  Structure pnone = make_unary(1, {{}}, "pn");
  {
    Structure a = pfull, b = pnone;
    // align symbol names with the stream's signature
    a.sig = punary;
    b.sig = punary;
    bool separated = false;
    for (const auto& f : st.sentences)
      if (evaluate(a, f) != evaluate(b, f)) separated = true;
    CHECK(separated);
  }

  // Over {R/2} at rank 2 the stream distinguishes Q_2 from edgeless 4.
  SentenceStream gr = sentences_up_to(graph_sig(), 2);
  CHECK_FALSE(gr.complete);  // binary language: enumeration is a lower bound
  bool separated = false;
  for (const auto& f : gr.sentences)
    if (evaluate(make_ncube(2), f) != evaluate(edgeless(4), f)) separated = true;
  CHECK(separated);
}

#pragma once

#include <cstdint>
#include <vector>

#include "relic/formula.hpp"
#include "relic/iso.hpp"
#include "relic/structure.hpp"

namespace relic {

// The Boolean algebra of n-type sets of a finite structure's theory: one
// atom per tuple orbit (m_n atoms, 2^{m_n} elements).  Elements are subsets
// of the atom set as bitmasks; the lattice order is subset inclusion and the
// cube realization's graph distance is Hamming distance between masks.
class TypeAlgebra {
 public:
  using Elem = std::uint64_t;

  TypeAlgebra(Structure s, int n, OrbitPartition orbits);

  int n() const { return orbits_.n; }
  int type_count() const { return orbits_.num_orbits; }  // m_n
  unsigned long long element_count() const { return 1ULL << type_count(); }

  Elem bottom() const { return 0; }
  Elem top() const { return (type_count() == 0) ? 0 : ((Elem{1} << type_count()) - 1); }
  Elem atom(int type_index) const;
  Elem meet(Elem u, Elem v) const { return check(u) & check(v); }
  Elem join(Elem u, Elem v) const { return check(u) | check(v); }
  Elem complement(Elem u) const { return check(u) ^ top(); }
  bool leq(Elem u, Elem v) const { return (check(u) & check(v)) == u; }
  bool less(Elem u, Elem v) const { return u != v && leq(u, v); }

  // Cube-realization (Hamming) distance.
  int rho(Elem u, Elem v) const;

  // Defining formula of an element: disjunction of its types' orbit
  // formulas; bottom renders as !(x0 = x0) and top as x0 = x0.
  FormulaPtr label(Elem u) const;
  // Defining formula of a single type (orbit of its representative tuple).
  FormulaPtr type_formula(int type_index) const;

  const Structure& structure() const { return s_; }
  const OrbitPartition& orbits() const { return orbits_; }

 private:
  Elem check(Elem u) const;

  Structure s_;
  OrbitPartition orbits_;
};

struct TypeAlgebraCaps {
  std::size_t max_tuples = 100000;
  long node_cap = 10'000'000;
  int max_types = 62;  // bitmask representation bound
};

TypeAlgebra type_algebra(const Structure& s, int n, const TypeAlgebraCaps& caps = {});

// True iff the phi-solution set is strictly contained in the psi-solution
// set in t2 (the theory of t2 witnesses the label inequality).  phi and psi
// must have the same free variables, exactly n of them; variables are read
// in sorted name order.
bool witnesses(const Structure& t2, const FormulaPtr& phi, const FormulaPtr& psi, int n);

}  // namespace relic

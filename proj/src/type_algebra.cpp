#include "relic/type_algebra.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <string>

#include "relic/base.hpp"
#include "relic/ef.hpp"
#include "relic/eval.hpp"

namespace relic {

TypeAlgebra::TypeAlgebra(Structure s, int n, OrbitPartition orbits)
    : s_(std::move(s)), orbits_(std::move(orbits)) {
  if (n != orbits_.n) throw PreconditionError("type algebra: arity mismatch");
}

TypeAlgebra::Elem TypeAlgebra::atom(int type_index) const {
  if (type_index < 0 || type_index >= type_count())
    throw PreconditionError("type algebra: type index out of range");
  return Elem{1} << type_index;
}

TypeAlgebra::Elem TypeAlgebra::check(Elem u) const {
  if ((u & ~top()) != 0) throw PreconditionError("type algebra: element out of range");
  return u;
}

int TypeAlgebra::rho(Elem u, Elem v) const {
  return std::popcount(check(u) ^ check(v));
}

FormulaPtr TypeAlgebra::type_formula(int type_index) const {
  if (type_index < 0 || type_index >= type_count())
    throw PreconditionError("type algebra: type index out of range");
  return orbit_formula(s_, orbits_.representatives[type_index]);
}

FormulaPtr TypeAlgebra::label(Elem u) const {
  check(u);
  std::vector<FormulaPtr> self_eqs;
  for (int i = 0; i < n(); ++i) {
    std::string x = "x" + std::to_string(i);
    self_eqs.push_back(f_eq(x, x));
  }
  FormulaPtr tautology = f_and_all(self_eqs);
  if (u == bottom()) return f_not(tautology);
  if (u == top()) return tautology;
  std::vector<FormulaPtr> parts;
  for (int i = 0; i < type_count(); ++i)
    if (u & (Elem{1} << i)) parts.push_back(type_formula(i));
  return f_or_all(parts);
}

TypeAlgebra type_algebra(const Structure& s, int n, const TypeAlgebraCaps& caps) {
  IsoCaps icaps;
  icaps.node_cap = caps.node_cap;
  icaps.max_tuples = caps.max_tuples;
  OrbitPartition orbits = automorphism_orbits(s, n, icaps);
  if (orbits.num_orbits > caps.max_types)
    throw CapExceeded("type algebra: more than " + std::to_string(caps.max_types) + " types");
  return TypeAlgebra(s, n, std::move(orbits));
}

bool witnesses(const Structure& t2, const FormulaPtr& phi, const FormulaPtr& psi, int n) {
  if (n < 1) throw PreconditionError("witnesses: n must be >= 1");
  std::vector<std::string> pv = free_vars(phi);
  std::vector<std::string> qv = free_vars(psi);
  std::set<std::string> ps(pv.begin(), pv.end()), qs(qv.begin(), qv.end());
  if (ps != qs) throw PreconditionError("witnesses: free-variable mismatch");
  if ((int)ps.size() != n) throw PreconditionError("witnesses: formulas are not n-ary");
  std::vector<std::string> vars(ps.begin(), ps.end());  // sorted name order
  std::vector<std::uint8_t> a = solution_set(t2, phi, vars);
  std::vector<std::uint8_t> b = solution_set(t2, psi, vars);
  bool proper = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] && !b[i]) return false;
    if (b[i] && !a[i]) proper = true;
  }
  return proper;
}

}  // namespace relic

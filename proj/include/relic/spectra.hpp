#pragma once

#include <string>
#include <utility>
#include <vector>

#include "relic/closure.hpp"
#include "relic/family.hpp"

namespace relic {

// Which theories count toward a relative spectrum value.
struct ClassFilter {
  enum class Kind { All, Fin, FinN, FinLe, Inf, OmegaCat };
  Kind kind = ClassFilter::Kind::All;
  int n = 0;  // FinN / FinLe parameter

  static ClassFilter all() { return {}; }
  static ClassFilter fin() { return {Kind::Fin, 0}; }
  static ClassFilter fin_n(int n) { return {Kind::FinN, n}; }
  static ClassFilter fin_le(int n) { return {Kind::FinLe, n}; }
  static ClassFilter inf() { return {Kind::Inf, 0}; }
  static ClassFilter omega_cat() { return {Kind::OmegaCat, 0}; }
};

bool in_class(const TheoryRef& t, const ClassFilter& filter);
std::string class_filter_name(const ClassFilter& filter);

// Value of the e-spectrum relative to a class: the number of new theories
// (beyond the members) realized in E-classes of models of E-combinations,
// restricted to the class.  For families the closure machinery decides
// exactly, the value is Exact with the new theories as witnesses; otherwise
// it is AtLeast with every certified candidate listed.
struct SpectrumValue {
  enum class Kind { Exact, AtLeast };
  Kind kind = SpectrumValue::Kind::Exact;
  long value = 0;
  std::vector<TheoryRef> witnesses;
  std::string note;
};

SpectrumValue e_spectrum(const FamilyDescriptor& fam, const ClassFilter& filter = {},
                         const ClosureCaps& caps = {});

// Monotony (smaller class, no larger value) and additivity (a partition of
// classes sums to the whole) on every Exact cell of the relative spectrum.
struct SpectrumLawReport {
  bool monotone = true;
  bool additive = true;
  std::vector<std::string> checks;  // one line per verified instance
};

SpectrumLawReport check_spectrum_laws(const FamilyDescriptor& fam, const ClosureCaps& caps = {});

// Disjoint unary-predicate spectrum: over an infinite disjoint-language
// family the part outside all predicates realizes at most one new theory per
// class — value 1 for size n exactly when there are infinitely many blocks
// and T0(n) is not already a member, likewise for the infinite class.
struct PSpectrumReport {
  bool infinitely_many_blocks = false;
  std::vector<std::pair<int, int>> fin_values;  // (size, 0/1)
  int inf_value = 0;
  std::string note;
};

PSpectrumReport p_spectrum_disjoint(const FamilyDescriptor& fam, const std::vector<int>& sizes,
                                    const ClosureCaps& caps = {});

// Residue-row family: members B_{t,i} have `size` elements and unary symbols
// Q0..Q{t+i*mu}, with Qj full exactly when j = t (mod mu).  Every member is
// language-uniform; the closure adds exactly the mu residue limit theories.
// mu = 0 degenerates to the one-member family (closure adds nothing).
FamilyDescriptor iilu_family(int size, int mu);

// The iilu closure: fam plus its certified residue limits.
FamilyDescriptor iilu_closure(const FamilyDescriptor& fam, const ClosureCaps& caps = {});

// All 2^l structures on `size` elements over arity-m symbols R0..R{l-1},
// each symbol full or empty according to the subset; pairwise
// non-isomorphic, each language-uniform.
struct PowerFamilyResult {
  FamilyDescriptor fam;
  std::vector<Structure> structures;
};

PowerFamilyResult power_family(int m, int l, int size = 1);

}  // namespace relic

#pragma once

#include <optional>
#include <string>

#include "relic/formula.hpp"
#include "relic/structure.hpp"

namespace relic {

// A theory is always the complete first-order theory of a concrete object,
// represented so that membership of a rank-capped sentence is decidable:
//
//   Fin    - theory of one finite structure (elementary equivalence of finite
//            structures is isomorphism, so the structure itself is the
//            representation).  A finite structure whose tables are all empty
//            is normalized to T0(size): the two agree on every sentence under
//            the absent-symbol-as-empty convention.
//   T0     - the empty-language theory whose models have exactly n elements.
//   T0Inf  - the empty-language theory of infinite pure sets.
//   Limit  - the theory of an infinite structure presented by a named
//            generator together with a bounded-rank decision procedure:
//              "omega_cube"  infinite-dimensional cube (limit of n-cubes);
//              "dlo"         dense linear order without endpoints;
//              "iilu"        limit of a residue row of an iilu family:
//                            size-n models over unary Q0, Q1, ... where Qj is
//                            full exactly when j = residue (mod modulus);
//              "axiom"       presented by a declared axiom sentence only
//                            (membership beyond the axiom is Unsupported).
enum class TheoryKind { Fin, T0, T0Inf, Limit };

struct TheoryRef {
  TheoryKind kind = TheoryKind::T0Inf;
  std::string display;

  // Fin
  std::optional<Structure> model;
  // T0 (model size); also the model size of "iilu" limits
  int size = 0;
  // Limit
  std::string generator;     // "omega_cube" | "dlo" | "iilu" | "axiom"
  std::string order_symbol;  // dlo: relation name interpreted as the order
  int modulus = 0;           // iilu
  int residue = 0;           // iilu
  FormulaPtr axioms;         // axiom generator: one declared sentence
  bool forces_infinity_declared = false;  // axiom generator certificate
};

struct TheoryCaps {
  int max_rank = 6;       // oracle queries beyond this rank are rejected
  int max_cube_dim = 8;   // omega_cube proxies use cubes of dimension <= this
  long dlo_nodes = 20'000'000;  // dlo pattern recursion budget
};

TheoryRef fin_theory(Structure s);
TheoryRef t0_theory(int n);
TheoryRef t0inf_theory();
TheoryRef omega_cube_theory();
TheoryRef dlo_theory(const std::string& order_symbol = "Lt");
TheoryRef iilu_limit_theory(int size, int modulus, int residue);
TheoryRef axiom_theory(const std::string& name, const FormulaPtr& axiom_sentence,
                       bool forces_infinity_declared);

// Identity of theories as mathematical objects (not representations):
// Fin by isomorphism over the same named signature, T0 by size, Limit by
// generator and parameters.  Cross-kind pairs are distinct (fin_theory
// already normalizes the one overlapping case, all-empty models, to T0).
bool same_theory(const TheoryRef& a, const TheoryRef& b);

// Does sentence f belong to the theory?  Exact for every kind it accepts:
//   Fin/T0   evaluate on the (proxy) model;
//   T0Inf    evaluate on an empty structure of size max(rank, 1) - a rank-q
//            empty-language sentence is decided by any pure set of size >= q;
//   omega_cube  evaluate on a finite cube inside a stabilization window:
//            the smallest d with Q_d, Q_{d+1}, Q_{d+2} pairwise rank-q
//            equivalent (the rank-q fragment is eventually constant in the
//            dimension; the window certifies the plateau has been reached);
//   dlo      exact recursion over insertion patterns: each quantifier ranges
//            over "equal to an existing value" or "inside one of the gaps",
//            which is exhaustive up to automorphism by density and the
//            absence of endpoints;
//   iilu     evaluate on the size-n structure interpreting each unary symbol
//            "Q<j>" of f as full when j = residue (mod modulus), else empty;
//   axiom    decides only the declared axiom itself (else Unsupported).
bool theory_contains(const TheoryRef& t, const FormulaPtr& f, const TheoryCaps& caps = {});

// A finite structure whose rank-q theory over language `lang` (default: its
// own) equals t's rank-q fragment.  Unsupported for dlo and axiom theories;
// iilu requires an explicit lang (it tells which Q<j> to materialize).
Structure theory_proxy(const TheoryRef& t, int q, const Signature* lang = nullptr,
                       const TheoryCaps& caps = {});

// Characteristic rank-q sentence of t over `lang`: a single sentence that
// entails every rank-<=q sentence of t in that language.  Built from the
// proxy's Hintikka sentence; for dlo, from the insertion-pattern recursion.
FormulaPtr characteristic_sentence(const TheoryRef& t, int q, const Signature& lang,
                                   const TheoryCaps& caps = {});

// Model-size metadata: the unique finite model size, when the theory has
// finite models (Fin, T0, iilu limits); nullopt for T0Inf, omega_cube, dlo
// and axiom-presented theories, whose models here are all infinite.
std::optional<int> finite_model_size(const TheoryRef& t);

// Declared omega-categoricity (infinite-model count at aleph_0 equal to 1):
// true for T0Inf and dlo, false for Fin/T0/iilu (no infinite models) and for
// omega_cube and axiom theories (not claimed).
bool omega_categorical(const TheoryRef& t);

// The empty structure of size n over an empty signature.
Structure empty_structure(int n, const std::string& name = "");

}  // namespace relic

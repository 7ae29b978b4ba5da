#include "doctest.h"

#include <set>
#include <string>
#include <vector>

#include "relic/base.hpp"
#include "relic/closure.hpp"
#include "relic/family.hpp"
#include "relic/iso.hpp"
#include "relic/lang_uniform.hpp"
#include "relic/spectra.hpp"
#include "relic/structure.hpp"
#include "relic/theory.hpp"

#include "helpers.hpp"

using namespace relic;
using testutil::make_unary;

TEST_CASE("class filters") {
  CHECK(in_class(t0_theory(3), ClassFilter::all()));
  CHECK(in_class(t0_theory(3), ClassFilter::fin()));
  CHECK(in_class(t0_theory(3), ClassFilter::fin_n(3)));
  CHECK(in_class(t0_theory(3), ClassFilter::fin_le(4)));
  CHECK_FALSE(in_class(t0_theory(3), ClassFilter::fin_le(2)));
  CHECK_FALSE(in_class(t0_theory(3), ClassFilter::inf()));
  CHECK(in_class(t0inf_theory(), ClassFilter::inf()));
  CHECK(in_class(t0inf_theory(), ClassFilter::omega_cat()));
  CHECK(in_class(dlo_theory(), ClassFilter::omega_cat()));
  CHECK_FALSE(in_class(omega_cube_theory(), ClassFilter::omega_cat()));
  CHECK(in_class(omega_cube_theory(), ClassFilter::inf()));
  CHECK(class_filter_name(ClassFilter::fin_le(4)) == "fin<=4");
}

TEST_CASE("e-spectrum per family shape") {
  ClosureCaps caps;

  // Disjoint member languages: the closure diff is exact.
  FamilyDescriptor cubes = ncube_family("cubesd", true);
  SpectrumValue v = e_spectrum(cubes, ClassFilter::all(), caps);
  CHECK(v.kind == SpectrumValue::Kind::Exact);
  CHECK(v.value == 1);
  REQUIRE(v.witnesses.size() == 1);
  CHECK(v.witnesses[0].display == "T0inf");
  CHECK(e_spectrum(cubes, ClassFilter::fin(), caps).value == 0);
  CHECK(e_spectrum(cubes, ClassFilter::inf(), caps).value == 1);
  CHECK(e_spectrum(cubes, ClassFilter::omega_cat(), caps).value == 1);

  // Shared member language: certified candidates are a lower bound only.
  FamilyDescriptor shared = ncube_family("cubes", false);
  SpectrumValue lower = e_spectrum(shared, ClassFilter::all(), caps);
  CHECK(lower.kind == SpectrumValue::Kind::AtLeast);
  CHECK(lower.value == 1);
  REQUIRE(lower.witnesses.size() == 1);
  CHECK(lower.witnesses[0].display == "Limit(omega_cube)");

  // A finite family adds nothing.
  FamilyDescriptor fin = explicit_family("fin", {t0_theory(2), t0_theory(3)}, true);
  SpectrumValue fv = e_spectrum(fin, ClassFilter::all(), caps);
  CHECK(fv.kind == SpectrumValue::Kind::Exact);
  CHECK(fv.value == 0);
}

TEST_CASE("spectrum laws: monotony and additivity on exact cells") {
  ClosureCaps caps;
  for (FamilyDescriptor fam : {ncube_family("cubesd", true), iilu_family(2, 2),
                               explicit_family("fin", {t0_theory(2), t0_theory(3)}, true)}) {
    SpectrumLawReport rep = check_spectrum_laws(fam, caps);
    CHECK(rep.monotone);
    CHECK(rep.additive);
    for (const std::string& line : rep.checks) CHECK(line.rfind("ok:", 0) == 0);
  }
  // Laws are only asserted on exact cells; the shared-language family has
  // none, so its report is vacuous rather than wrong.
  SpectrumLawReport vac = check_spectrum_laws(ncube_family("cubes", false), caps);
  CHECK(vac.monotone);
  CHECK(vac.additive);
}

TEST_CASE("p-operator spectrum over disjoint languages") {
  ClosureCaps caps;
  FamilyDescriptor cubes = ncube_family("cubesd", true);
  PSpectrumReport rep = p_spectrum_disjoint(cubes, {2, 4, 8}, caps);
  CHECK(rep.infinitely_many_blocks);
  REQUIRE(rep.fin_values.size() == 3);
  for (auto [n, value] : rep.fin_values) {
    CHECK(value == 1);  // the untagged part contributes the pure n-set only
    CHECK((n == 2 || n == 4 || n == 8));
  }
  CHECK(rep.inf_value == 1);

  // Finite families leave every class untouched.
  FamilyDescriptor fin = explicit_family("fin", {t0_theory(2), t0_theory(3)}, true);
  PSpectrumReport frep = p_spectrum_disjoint(fin, {2, 3}, caps);
  CHECK_FALSE(frep.infinitely_many_blocks);
  for (auto [n, value] : frep.fin_values) CHECK(value == 0);
  CHECK(frep.inf_value == 0);

  CHECK_THROWS_AS((void)p_spectrum_disjoint(ncube_family("cubes", false), {2}, caps),
                  PreconditionError);
}

TEST_CASE("staircase families and their residue limits") {
  ClosureCaps caps;
  for (int mu = 0; mu <= 3; ++mu) {
    FamilyDescriptor fam = iilu_family(2, mu);
    FamilyDescriptor closed = iilu_closure(fam, caps);
    CHECK(static_cast<int>(closed.members.size()) - static_cast<int>(fam.members.size()) == mu);
    // Recounting is stable: closing again adds nothing.
    FamilyDescriptor again = iilu_closure(closed, caps);
    CHECK(again.members.size() == closed.members.size());
  }

  // The residue limits are distinct finite-sized theories, so they land in
  // the fin cells of the e-spectrum.
  FamilyDescriptor fam = iilu_family(2, 2);
  SpectrumValue v = e_spectrum(fam, ClassFilter::all(), caps);
  CHECK(v.kind == SpectrumValue::Kind::Exact);
  CHECK(v.value == 2);
  CHECK(e_spectrum(fam, ClassFilter::fin_n(2), caps).value == 2);
  CHECK(e_spectrum(fam, ClassFilter::inf(), caps).value == 0);

  CHECK_THROWS_AS((void)iilu_family(2, 9), PreconditionError);
}

TEST_CASE("power families: all unary masks, pairwise distinct") {
  PowerFamilyResult res = power_family(1, 3);
  REQUIRE(res.structures.size() == 8);
  for (const Structure& s : res.structures) {
    CHECK(s.size == 1);
    CHECK(s.sig.size() == 3);
    CHECK(lu_check(s).all());
  }
  for (std::size_t i = 0; i < res.structures.size(); ++i)
    for (std::size_t j = i + 1; j < res.structures.size(); ++j)
      CHECK_FALSE(isomorphic(res.structures[i], res.structures[j]));

  // Binary variant on a two-element universe.
  PowerFamilyResult bin = power_family(2, 2, 2);
  REQUIRE(bin.structures.size() == 4);
  for (std::size_t i = 0; i < bin.structures.size(); ++i)
    for (std::size_t j = i + 1; j < bin.structures.size(); ++j)
      CHECK_FALSE(isomorphic(bin.structures[i], bin.structures[j]));

  CHECK_THROWS_AS((void)power_family(3, 1), PreconditionError);
}

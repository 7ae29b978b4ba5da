#include "relic/spectra.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "relic/base.hpp"

namespace relic {

namespace {

Table full_table(int arity, int n) {
  Table t;
  std::vector<int> tup(static_cast<std::size_t>(arity), 0);
  while (true) {
    t.push_back(tup);
    int pos = arity - 1;
    while (pos >= 0 && ++tup[static_cast<std::size_t>(pos)] == n) {
      tup[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return t;
}

std::vector<TheoryRef> closure_additions(const FamilyDescriptor& fam,
                                         const FamilyDescriptor& closed,
                                         const ClassFilter& filter) {
  std::vector<TheoryRef> out;
  for (const auto& m : closed.members)
    if (!family_contains(fam, m) && in_class(m, filter)) out.push_back(m);
  return out;
}

}  // namespace

bool in_class(const TheoryRef& t, const ClassFilter& filter) {
  switch (filter.kind) {
    case ClassFilter::Kind::All:
      return true;
    case ClassFilter::Kind::Fin:
      return finite_model_size(t).has_value();
    case ClassFilter::Kind::FinN: {
      auto s = finite_model_size(t);
      return s.has_value() && *s == filter.n;
    }
    case ClassFilter::Kind::FinLe: {
      auto s = finite_model_size(t);
      return s.has_value() && *s <= filter.n;
    }
    case ClassFilter::Kind::Inf:
      return !finite_model_size(t).has_value();
    case ClassFilter::Kind::OmegaCat:
      return omega_categorical(t);
  }
  throw PreconditionError("in_class: unknown class filter");
}

std::string class_filter_name(const ClassFilter& filter) {
  switch (filter.kind) {
    case ClassFilter::Kind::All:
      return "all";
    case ClassFilter::Kind::Fin:
      return "fin";
    case ClassFilter::Kind::FinN:
      return "fin=" + std::to_string(filter.n);
    case ClassFilter::Kind::FinLe:
      return "fin<=" + std::to_string(filter.n);
    case ClassFilter::Kind::Inf:
      return "inf";
    case ClassFilter::Kind::OmegaCat:
      return "omega-cat";
  }
  return "?";
}

SpectrumValue e_spectrum(const FamilyDescriptor& fam, const ClassFilter& filter,
                         const ClosureCaps& caps) {
  SpectrumValue out;
  if (!family_infinite(fam)) {
    out.kind = SpectrumValue::Kind::Exact;
    out.value = 0;
    out.note = "finite family: every class of a combined model realizes a member theory";
    return out;
  }
  if (fam.languages_disjoint) {
    FamilyDescriptor closed = closure_E_disjoint(fam, caps);
    out.witnesses = closure_additions(fam, closed, filter);
    out.kind = SpectrumValue::Kind::Exact;
    out.value = static_cast<long>(out.witnesses.size());
    out.note = "disjoint member languages: new theories are exactly the certified pure-set limits";
    return out;
  }
  if (fam.kind == FamilyKind::Iilu) {
    FamilyDescriptor closed = iilu_closure(fam, caps);
    out.witnesses = closure_additions(fam, closed, filter);
    out.kind = SpectrumValue::Kind::Exact;
    out.value = static_cast<long>(out.witnesses.size());
    out.note = "residue rows converge to their residue limits and to nothing else";
    return out;
  }
  if (fam.kind == FamilyKind::NCubeSeq) {
    for (const TheoryRef& c : {omega_cube_theory(), t0inf_theory()}) {
      if (family_contains(fam, c) || !in_class(c, filter)) continue;
      Verdict v = is_accumulation_point(fam, c, caps);
      if (v.positive()) out.witnesses.push_back(c);
    }
    out.kind = SpectrumValue::Kind::AtLeast;
    out.value = static_cast<long>(out.witnesses.size());
    out.note = "shared member language: certified candidates give a lower bound only";
    return out;
  }
  out.kind = SpectrumValue::Kind::AtLeast;
  out.value = 0;
  out.note = "no tail certificate for this family shape";
  return out;
}

SpectrumLawReport check_spectrum_laws(const FamilyDescriptor& fam, const ClosureCaps& caps) {
  SpectrumLawReport rep;
  auto exact = [](const SpectrumValue& v) { return v.kind == SpectrumValue::Kind::Exact; };
  auto record = [&rep](bool ok, const std::string& line, bool* flag) {
    rep.checks.push_back((ok ? "ok: " : "FAIL: ") + line);
    if (!ok) *flag = false;
  };
  auto cell_str = [&fam](const ClassFilter& f, const SpectrumValue& v) {
    return "Sp[" + class_filter_name(f) + "](" + fam.name + ") = " + std::to_string(v.value);
  };

  ClassFilter f_all = ClassFilter::all();
  ClassFilter f_fin = ClassFilter::fin();
  ClassFilter f_inf = ClassFilter::inf();
  ClassFilter f_cat = ClassFilter::omega_cat();
  SpectrumValue all = e_spectrum(fam, f_all, caps);
  SpectrumValue fin = e_spectrum(fam, f_fin, caps);
  SpectrumValue inf = e_spectrum(fam, f_inf, caps);
  SpectrumValue cat = e_spectrum(fam, f_cat, caps);

  if (exact(fin) && exact(all))
    record(fin.value <= all.value, cell_str(f_fin, fin) + " <= " + cell_str(f_all, all),
           &rep.monotone);
  if (exact(inf) && exact(all))
    record(inf.value <= all.value, cell_str(f_inf, inf) + " <= " + cell_str(f_all, all),
           &rep.monotone);
  if (exact(cat) && exact(all))
    record(cat.value <= all.value, cell_str(f_cat, cat) + " <= " + cell_str(f_all, all),
           &rep.monotone);
  if (exact(cat) && exact(inf))
    record(cat.value <= inf.value, cell_str(f_cat, cat) + " <= " + cell_str(f_inf, inf),
           &rep.monotone);

  std::set<int> sizes;
  for (const auto& w : fin.witnesses)
    if (auto n = finite_model_size(w)) sizes.insert(*n);
  long sum = 0;
  bool cells_exact = exact(fin);
  for (int n : sizes) {
    ClassFilter f_n = ClassFilter::fin_n(n);
    ClassFilter f_le = ClassFilter::fin_le(n);
    SpectrumValue cell = e_spectrum(fam, f_n, caps);
    SpectrumValue le = e_spectrum(fam, f_le, caps);
    if (exact(cell) && exact(le))
      record(cell.value <= le.value, cell_str(f_n, cell) + " <= " + cell_str(f_le, le),
             &rep.monotone);
    if (exact(le) && exact(fin))
      record(le.value <= fin.value, cell_str(f_le, le) + " <= " + cell_str(f_fin, fin),
             &rep.monotone);
    if (exact(cell))
      sum += cell.value;
    else
      cells_exact = false;
  }

  if (exact(fin) && exact(inf) && exact(all))
    record(fin.value + inf.value == all.value,
           cell_str(f_fin, fin) + " + " + cell_str(f_inf, inf) + " == " + cell_str(f_all, all),
           &rep.additive);
  if (cells_exact && !sizes.empty())
    record(sum == fin.value,
           "sum over realized sizes = " + std::to_string(sum) + " == " + cell_str(f_fin, fin),
           &rep.additive);
  return rep;
}

PSpectrumReport p_spectrum_disjoint(const FamilyDescriptor& fam, const std::vector<int>& sizes,
                                    const ClosureCaps& caps) {
  (void)caps;
  if (!fam.languages_disjoint)
    throw PreconditionError("p_spectrum_disjoint: member languages must be pairwise disjoint");
  PSpectrumReport rep;
  rep.infinitely_many_blocks = family_infinite(fam);
  for (int n : sizes) {
    if (n < 1) throw PreconditionError("p_spectrum_disjoint: sizes must be >= 1");
    int v = rep.infinitely_many_blocks && !family_contains(fam, t0_theory(n)) ? 1 : 0;
    rep.fin_values.emplace_back(n, v);
  }
  rep.inf_value = rep.infinitely_many_blocks && !family_contains(fam, t0inf_theory()) ? 1 : 0;
  rep.note = rep.infinitely_many_blocks
                 ? "the never-tagged part of a combined model is an arbitrary pure set, so each "
                   "class gains at most one new theory"
                 : "finitely many blocks: the never-tagged part can be kept empty";
  return rep;
}

FamilyDescriptor iilu_family(int size, int mu) {
  if (size < 1) throw PreconditionError("iilu_family: size must be >= 1");
  if (mu < 0 || mu > 8) throw PreconditionError("iilu_family: mu must be in [0, 8]");
  FamilyDescriptor fam;
  fam.name = "iilu_n" + std::to_string(size) + "_mu" + std::to_string(mu);
  fam.kind = FamilyKind::Iilu;
  fam.param_n = size;
  fam.modulus = mu;
  if (mu >= 1)
    fam.spectrum.infinite_multiplicity.push_back(size);
  else
    fam.spectrum.finite[size] = 1;
  return fam;
}

FamilyDescriptor iilu_closure(const FamilyDescriptor& fam, const ClosureCaps& caps) {
  if (fam.kind != FamilyKind::Iilu)
    throw PreconditionError("iilu_closure: family is not an iilu generator");
  FamilyDescriptor out = fam;
  if (out.name.find("_cl") == std::string::npos) out.name += "_clE";
  for (int t = 0; t < fam.modulus; ++t) {
    TheoryRef lim = iilu_limit_theory(fam.param_n, fam.modulus, t);
    if (family_contains(out, lim)) continue;
    Verdict v = is_accumulation_point(fam, lim, caps);
    if (!v.positive())
      throw PreconditionError("iilu_closure: residue " + std::to_string(t) +
                              " failed certification: " + v.note);
    out = with_member(out, lim);
  }
  return out;
}

PowerFamilyResult power_family(int m, int l, int size) {
  if (m < 1 || m > 2) throw PreconditionError("power_family: arity m must be 1 or 2");
  if (l < 0 || l > 10) throw PreconditionError("power_family: l must be in [0, 10]");
  if (size < 1) throw PreconditionError("power_family: size must be >= 1");
  PowerFamilyResult res;
  res.fam.name = "power_m" + std::to_string(m) + "_l" + std::to_string(l) + "_n" +
                 std::to_string(size);
  res.fam.kind = FamilyKind::PowerFamily;
  res.fam.param_m = m;
  res.fam.param_l = l;
  res.fam.param_n = size;
  res.fam.spectrum.finite[size] = 1L << l;
  for (long mask = 0; mask < (1L << l); ++mask) {
    Structure s;
    s.name = res.fam.name + "_S" + std::to_string(mask);
    s.size = size;
    for (int j = 0; j < l; ++j) {
      s.sig.add({"R" + std::to_string(j), m});
      s.tables.push_back((mask >> j) & 1 ? full_table(m, size) : Table{});
    }
    s.validate();
    res.structures.push_back(std::move(s));
  }
  return res;
}

}  // namespace relic

#include "relic/family.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "relic/base.hpp"
#include "relic/cube.hpp"
#include "relic/formula.hpp"

namespace relic {

namespace {

bool is_power_of_two(int n) { return n >= 1 && (n & (n - 1)) == 0; }

int log2_exact(int n) {
  int d = 0;
  while ((1 << d) < n) ++d;
  return d;
}

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

// Parse "<prefix><digits>" -> digits value, or -1.
int suffix_index(const std::string& name, const std::string& prefix) {
  if (name.size() <= prefix.size() || name.compare(0, prefix.size(), prefix) != 0) return -1;
  long v = 0;
  for (std::size_t i = prefix.size(); i < name.size(); ++i) {
    char c = name[i];
    if (c < '0' || c > '9') return -1;
    v = v * 10 + (c - '0');
    if (v > 1'000'000) return -1;
  }
  return static_cast<int>(v);
}

// Parse "<base>_<digits>" -> {base, digits} with digits >= 0, or index -1.
std::pair<std::string, int> split_copy_suffix(const std::string& name) {
  auto pos = name.rfind('_');
  if (pos == std::string::npos || pos + 1 >= name.size()) return {"", -1};
  long v = 0;
  for (std::size_t i = pos + 1; i < name.size(); ++i) {
    char c = name[i];
    if (c < '0' || c > '9') return {"", -1};
    v = v * 10 + (c - '0');
    if (v > 1'000'000) return {"", -1};
  }
  return {name.substr(0, pos), static_cast<int>(v)};
}

Structure ncube_member(const FamilyDescriptor& fam, long d) {
  Structure s = make_ncube(static_cast<int>(d));
  if (fam.ncube_disjoint) s = rename_symbols(s, {"R"}, {"R" + std::to_string(d)});
  return s;
}

Structure relabel_member(const FamilyDescriptor& fam, long i) {
  const Structure& base = *fam.base;
  std::vector<std::string> from, to;
  for (const auto& sym : base.sig.symbols()) {
    from.push_back(sym.name);
    to.push_back(sym.name + "_" + std::to_string(i));
  }
  Structure s = rename_symbols(base, from, to);
  s.name = base.name + "_" + std::to_string(i);
  return s;
}

Structure power_member(const FamilyDescriptor& fam, long mask) {
  Structure s;
  s.name = fam.name + "_S" + std::to_string(mask);
  s.size = fam.param_n;
  for (int j = 0; j < fam.param_l; ++j) {
    s.sig.add({"R" + std::to_string(j), fam.param_m});
    s.tables.push_back((mask >> j) & 1 ? full_table(fam.param_m, fam.param_n) : Table{});
  }
  s.validate();
  return s;
}

Structure iilu_member(const FamilyDescriptor& fam, int t, long i) {
  Structure s;
  s.name = "B" + std::to_string(t) + "_" + std::to_string(i);
  s.size = fam.param_n;
  int mu = std::max(fam.modulus, 1);
  int top = fam.modulus == 0 ? 0 : t + static_cast<int>(i) * mu;
  for (int j = 0; j <= top; ++j) {
    s.sig.add({"Q" + std::to_string(j), 1});
    s.tables.push_back(j % mu == t % mu ? full_table(1, fam.param_n) : Table{});
  }
  s.validate();
  return s;
}

long generated_count(const FamilyDescriptor& fam) {
  switch (fam.kind) {
    case FamilyKind::Explicit: return 0;
    case FamilyKind::NCubeSeq: return -1;
    case FamilyKind::DisjointRelabel: return -1;
    case FamilyKind::EmptyLang:
      return fam.empty_all_from ? -1 : static_cast<long>(fam.empty_sizes.size());
    case FamilyKind::PowerFamily: return 1L << fam.param_l;
    case FamilyKind::Iilu: return fam.modulus == 0 ? 1 : -1;
    case FamilyKind::Prop33: return fam.count;
  }
  throw PreconditionError("unknown family kind");
}

TheoryRef generated_member(const FamilyDescriptor& fam, long index) {
  switch (fam.kind) {
    case FamilyKind::NCubeSeq: return fin_theory(ncube_member(fam, index + 1));
    case FamilyKind::DisjointRelabel: return fin_theory(relabel_member(fam, index));
    case FamilyKind::EmptyLang: {
      long listed = static_cast<long>(fam.empty_sizes.size());
      if (index < listed) return t0_theory(fam.empty_sizes[static_cast<std::size_t>(index)]);
      return t0_theory(static_cast<int>(*fam.empty_all_from + fam.empty_step * (index - listed)));
    }
    case FamilyKind::PowerFamily: return fin_theory(power_member(fam, index));
    case FamilyKind::Iilu: {
      int mu = std::max(fam.modulus, 1);
      return fin_theory(iilu_member(fam, static_cast<int>(index % mu), index / mu));
    }
    case FamilyKind::Prop33: return fin_theory(prop33_member(*fam.base, fam.count, static_cast<int>(index)));
    case FamilyKind::Explicit: break;
  }
  throw PreconditionError("family_member: index beyond the member stream");
}

void derive_member_spectrum(CardinalitySpectrum& sp, const TheoryRef& t) {
  if (auto n = finite_model_size(t)) {
    sp.finite[*n] += 1;
    return;
  }
  if (t.kind == TheoryKind::T0Inf || (t.kind == TheoryKind::Limit && t.generator != "axiom")) {
    sp.infinite_model_members += 1;
    return;
  }
  if (t.kind == TheoryKind::Limit && t.forces_infinity_declared) sp.infinite_model_members += 1;
  // Undeclared axiom theories contribute nothing to the size spectrum.
}

}  // namespace

bool CardinalitySpectrum::infinitely_many_of(int n) const {
  return std::find(infinite_multiplicity.begin(), infinite_multiplicity.end(), n) !=
         infinite_multiplicity.end();
}

bool CardinalitySpectrum::any_finite_sizes() const {
  return !finite.empty() || !infinite_multiplicity.empty() || all_sizes_from.has_value() ||
         unbounded_sizes;
}

std::optional<int> CardinalitySpectrum::max_finite_size() const {
  if (sizes_unbounded()) return std::nullopt;
  std::optional<int> m;
  if (!finite.empty()) m = finite.rbegin()->first;
  for (int n : infinite_multiplicity) m = std::max(m.value_or(0), n);
  return m;
}

Structure prop33_member(const Structure& base, int count, int index) {
  if (count < 2) throw PreconditionError("prop33: count must be >= 2");
  if (index < 0 || index >= count) throw PreconditionError("prop33: index out of range");
  if (base.size < 1) throw PreconditionError("prop33: base must be nonempty");
  for (int j = 0; j < count; ++j)
    if (base.sig.has("E" + std::to_string(j)))
      throw PreconditionError("prop33: base signature clashes with tag symbol E" + std::to_string(j));
  Structure s;
  s.name = base.name + "_A" + std::to_string(index);
  s.size = count * base.size;
  for (const auto& sym : base.sig.symbols()) s.sig.add(sym);
  s.tables.resize(base.sig.size());
  for (int c = 0; c < count; ++c) {
    int shift = c * base.size;
    for (std::size_t k = 0; k < base.sig.size(); ++k)
      for (const auto& tup : base.tables[k]) {
        Tuple shifted = tup;
        for (int& v : shifted) v += shift;
        table_insert(s.tables[k], std::move(shifted));
      }
  }
  for (int j = 0; j < count; ++j) {
    s.sig.add({"E" + std::to_string(j), 2});
    Table tab;
    if (j == index) {
      for (int c = 0; c < count; ++c)
        for (int x = 0; x < base.size; ++x)
          for (int y = 0; y < base.size; ++y)
            table_insert(tab, Tuple{c * base.size + x, c * base.size + y});
    } else {
      for (int v = 0; v < s.size; ++v) table_insert(tab, Tuple{v, v});
    }
    s.tables.push_back(std::move(tab));
  }
  s.validate();
  return s;
}

FamilyDescriptor explicit_family(std::string name, std::vector<TheoryRef> members,
                                 bool languages_disjoint) {
  if (members.empty()) throw PreconditionError("explicit_family: no members");
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j)
      if (same_theory(members[i], members[j]))
        throw PreconditionError("explicit_family: duplicate member " + members[j].display);
  FamilyDescriptor fam;
  fam.name = std::move(name);
  fam.kind = FamilyKind::Explicit;
  fam.members = std::move(members);
  fam.languages_disjoint = languages_disjoint;
  for (const auto& t : fam.members) derive_member_spectrum(fam.spectrum, t);
  return fam;
}

FamilyDescriptor ncube_family(std::string name, bool disjoint_languages) {
  FamilyDescriptor fam;
  fam.name = std::move(name);
  fam.kind = FamilyKind::NCubeSeq;
  fam.ncube_disjoint = disjoint_languages;
  fam.languages_disjoint = disjoint_languages;
  fam.spectrum.unbounded_sizes = true;
  return fam;
}

FamilyDescriptor disjoint_relabel_family(std::string name, Structure base) {
  base.validate();
  if (base.tuple_count() == 0)
    throw PreconditionError(
        "disjoint_relabel_family: base must interpret some symbol nontrivially "
        "(otherwise all copies share one theory)");
  FamilyDescriptor fam;
  fam.name = std::move(name);
  fam.kind = FamilyKind::DisjointRelabel;
  fam.languages_disjoint = true;
  fam.spectrum.infinite_multiplicity = {base.size};
  fam.base = std::move(base);
  return fam;
}

FamilyDescriptor empty_lang_family(std::string name, std::vector<int> sizes,
                                   std::optional<int> all_from, int step) {
  std::sort(sizes.begin(), sizes.end());
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
  for (int n : sizes)
    if (n < 1) throw PreconditionError("empty_lang_family: sizes must be >= 1");
  if (step < 1) throw PreconditionError("empty_lang_family: step must be >= 1");
  if (all_from) {
    if (*all_from < 1) throw PreconditionError("empty_lang_family: from must be >= 1");
    std::erase_if(sizes, [&](int n) { return n >= *all_from && (n - *all_from) % step == 0; });
  }
  if (sizes.empty() && !all_from) throw PreconditionError("empty_lang_family: no members");
  FamilyDescriptor fam;
  fam.name = std::move(name);
  fam.kind = FamilyKind::EmptyLang;
  fam.languages_disjoint = true;
  fam.empty_sizes = std::move(sizes);
  fam.empty_all_from = all_from;
  fam.empty_step = step;
  for (int n : fam.empty_sizes) fam.spectrum.finite[n] = 1;
  if (all_from) {
    if (step == 1)
      fam.spectrum.all_sizes_from = all_from;
    else
      fam.spectrum.unbounded_sizes = true;
  }
  return fam;
}

bool family_infinite(const FamilyDescriptor& fam) { return generated_count(fam) < 0; }

long family_member_count(const FamilyDescriptor& fam) {
  long gen = generated_count(fam);
  if (gen < 0) return -1;
  return gen + static_cast<long>(fam.members.size()) - static_cast<long>(fam.excluded.size());
}

TheoryRef family_member(const FamilyDescriptor& fam, long index) {
  if (index < 0) throw PreconditionError("family_member: negative index");
  long gen = generated_count(fam);
  if (gen < 0 || index < gen) return generated_member(fam, index);
  std::size_t k = static_cast<std::size_t>(index - gen);
  if (k >= fam.members.size()) throw PreconditionError("family_member: index beyond the member stream");
  return fam.members[k];
}

bool family_excluded(const FamilyDescriptor& fam, const TheoryRef& t) {
  for (const auto& x : fam.excluded)
    if (same_theory(x, t)) return true;
  return false;
}

std::vector<TheoryRef> probe_members(const FamilyDescriptor& fam, long k) {
  std::vector<TheoryRef> out;
  long gen = generated_count(fam);
  long take = gen < 0 ? k : std::min(gen, k);
  for (long i = 0; i < take; ++i) {
    TheoryRef t = generated_member(fam, i);
    if (!family_excluded(fam, t)) out.push_back(std::move(t));
  }
  for (const auto& t : fam.members)
    if (!family_excluded(fam, t)) out.push_back(t);
  return out;
}

bool family_contains(const FamilyDescriptor& fam, const TheoryRef& t) {
  if (family_excluded(fam, t)) return false;
  for (const auto& m : fam.members)
    if (same_theory(m, t)) return true;
  switch (fam.kind) {
    case FamilyKind::Explicit: return false;
    case FamilyKind::NCubeSeq: {
      if (t.kind != TheoryKind::Fin || !is_power_of_two(t.size) || t.size < 2) return false;
      long d = log2_exact(t.size);
      return same_theory(t, generated_member(fam, d - 1));
    }
    case FamilyKind::DisjointRelabel: {
      if (t.kind != TheoryKind::Fin || t.size != fam.base->size) return false;
      if (t.model->sig.size() != fam.base->sig.size() || fam.base->sig.empty()) return false;
      auto [stem, idx] = split_copy_suffix(t.model->sig.at(0).name);
      if (idx < 0 || stem != fam.base->sig.at(0).name) return false;
      return same_theory(t, generated_member(fam, idx));
    }
    case FamilyKind::EmptyLang: {
      if (t.kind != TheoryKind::T0) return false;
      if (fam.empty_all_from && t.size >= *fam.empty_all_from &&
          (t.size - *fam.empty_all_from) % fam.empty_step == 0)
        return true;
      return std::binary_search(fam.empty_sizes.begin(), fam.empty_sizes.end(), t.size);
    }
    case FamilyKind::PowerFamily: {
      if (t.kind != TheoryKind::Fin && t.kind != TheoryKind::T0) return false;
      if (t.size != fam.param_n) return false;
      for (long mask = 0; mask < (1L << fam.param_l); ++mask)
        if (same_theory(t, generated_member(fam, mask))) return true;
      return false;
    }
    case FamilyKind::Iilu: {
      if (fam.modulus == 0) return t.kind == TheoryKind::Fin && same_theory(t, generated_member(fam, 0));
      if (t.kind != TheoryKind::Fin || t.size != fam.param_n) return false;
      // Deduce the row from the top symbol index: members carry Q0..Q{t+i*mu}.
      int top = -1;
      for (const auto& sym : t.model->sig.symbols()) top = std::max(top, suffix_index(sym.name, "Q"));
      if (top < 0) return false;
      int row = top % fam.modulus;
      long i = (top - row) / fam.modulus;
      return same_theory(t, generated_member(fam, i * fam.modulus + row));
    }
    case FamilyKind::Prop33: {
      if (t.kind != TheoryKind::Fin || t.size != fam.count * fam.base->size) return false;
      for (int i = 0; i < fam.count; ++i)
        if (same_theory(t, generated_member(fam, i))) return true;
      return false;
    }
  }
  return false;
}

Signature family_probe_language(const FamilyDescriptor& fam, long k) {
  Signature lang;
  auto add_sig = [&](const Signature& sig) {
    for (const auto& sym : sig.symbols()) {
      if (lang.has(sym.name)) {
        if (lang.arity(sym.name) != sym.arity)
          throw PreconditionError("family_probe_language: arity clash on " + sym.name);
        continue;
      }
      lang.add(sym);
    }
  };
  auto add_theory = [&](const TheoryRef& t) {
    switch (t.kind) {
      case TheoryKind::Fin: add_sig(t.model->sig); break;
      case TheoryKind::T0:
      case TheoryKind::T0Inf: break;
      case TheoryKind::Limit:
        if (t.generator == "omega_cube") add_sig(Signature{{Symbol{"R", 2}}});
        else if (t.generator == "dlo") add_sig(Signature{{Symbol{t.order_symbol, 2}}});
        else if (t.generator == "axiom") add_sig(inferred_signature(t.axioms));
        // iilu limits have an unbounded language; they contribute nothing here.
        break;
    }
  };
  for (const auto& t : probe_members(fam, k)) add_theory(t);
  return lang;
}

FamilyDescriptor with_member(FamilyDescriptor fam, const TheoryRef& t) {
  for (auto it = fam.excluded.begin(); it != fam.excluded.end(); ++it)
    if (same_theory(*it, t)) {
      fam.excluded.erase(it);
      return fam;
    }
  if (family_contains(fam, t))
    throw PreconditionError("with_member: " + t.display + " is already a member");
  fam.members.push_back(t);
  derive_member_spectrum(fam.spectrum, t);
  return fam;
}

FamilyDescriptor without_member(FamilyDescriptor fam, const TheoryRef& t) {
  for (auto it = fam.members.begin(); it != fam.members.end(); ++it)
    if (same_theory(*it, t)) {
      fam.members.erase(it);
      if (auto n = finite_model_size(t)) {
        auto f = fam.spectrum.finite.find(*n);
        if (f != fam.spectrum.finite.end() && --f->second <= 0) fam.spectrum.finite.erase(f);
      }
      return fam;
    }
  if (!family_contains(fam, t))
    throw PreconditionError("without_member: " + t.display + " is not a member");
  fam.excluded.push_back(t);
  return fam;
}

// ---- family file format ----

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> toks;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) toks.push_back(tok);
  return toks;
}

std::map<std::string, std::string> parse_kv(const std::vector<std::string>& toks, std::size_t from,
                                            int line_no) {
  std::map<std::string, std::string> kv;
  for (std::size_t i = from; i < toks.size(); ++i) {
    auto eq = toks[i].find('=');
    if (eq == std::string::npos || eq == 0)
      throw ParseError("family line " + std::to_string(line_no) + ": expected key=value, got '" +
                       toks[i] + "'");
    kv[toks[i].substr(0, eq)] = toks[i].substr(eq + 1);
  }
  return kv;
}

int parse_int_tok(const std::string& tok, int line_no) {
  try {
    std::size_t used = 0;
    int v = std::stoi(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ParseError("family line " + std::to_string(line_no) + ": expected integer, got '" + tok +
                     "'");
  }
}

std::vector<int> parse_int_list(const std::string& tok, int line_no) {
  std::vector<int> out;
  std::string cur;
  std::istringstream in(tok);
  while (std::getline(in, cur, ',')) out.push_back(parse_int_tok(cur, line_no));
  return out;
}

bool parse_bool_tok(const std::string& tok, int line_no) {
  if (tok == "true") return true;
  if (tok == "false") return false;
  throw ParseError("family line " + std::to_string(line_no) + ": expected true|false, got '" + tok +
                   "'");
}

std::string resolve_path(const std::string& base_dir, const std::string& file) {
  if (base_dir.empty()) return file;
  std::filesystem::path p(file);
  if (p.is_absolute()) return file;
  return (std::filesystem::path(base_dir) / p).string();
}

}  // namespace

FamilyDescriptor parse_family(const std::string& text, const std::string& base_dir) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  bool seen_family = false, seen_end = false, seen_generator = false;
  std::string declared_kind;
  std::string name;
  std::vector<TheoryRef> members;
  std::optional<FamilyDescriptor> generated;
  bool languages_line = false, languages_value = false;
  struct SpectrumLine {
    std::string what;
    int n = 0;
    long mult = 0;
  };
  std::vector<SpectrumLine> spectrum_lines;

  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto toks = split_ws(line);
    if (toks.empty()) continue;
    if (seen_end) throw ParseError("family line " + std::to_string(line_no) + ": text after end");
    const std::string& head = toks[0];
    if (head == "family") {
      if (seen_family || toks.size() != 2)
        throw ParseError("family line " + std::to_string(line_no) + ": bad family header");
      name = toks[1];
      seen_family = true;
      continue;
    }
    if (!seen_family)
      throw ParseError("family line " + std::to_string(line_no) + ": expected 'family <name>' first");
    if (head == "kind") {
      if (toks.size() != 2 || (toks[1] != "explicit" && toks[1] != "generator"))
        throw ParseError("family line " + std::to_string(line_no) + ": kind must be explicit|generator");
      declared_kind = toks[1];
    } else if (head == "member") {
      if (toks.size() < 2) throw ParseError("family line " + std::to_string(line_no) + ": empty member");
      if (toks[1] == "T0inf") {
        members.push_back(t0inf_theory());
      } else if (toks[1] == "T0") {
        if (toks.size() != 3) throw ParseError("family line " + std::to_string(line_no) + ": member T0 <n>");
        members.push_back(t0_theory(parse_int_tok(toks[2], line_no)));
      } else {
        std::string which = toks.size() >= 3 ? toks[2] : "";
        members.push_back(fin_theory(load_structure(resolve_path(base_dir, toks[1]), which)));
      }
    } else if (head == "generator") {
      if (seen_generator) throw ParseError("family line " + std::to_string(line_no) + ": second generator");
      seen_generator = true;
      if (toks.size() < 2) throw ParseError("family line " + std::to_string(line_no) + ": empty generator");
      auto kv = parse_kv(toks, 2, line_no);
      auto need = [&](const char* key) -> const std::string& {
        auto it = kv.find(key);
        if (it == kv.end())
          throw ParseError("family line " + std::to_string(line_no) + ": generator needs " +
                           std::string(key) + "=...");
        return it->second;
      };
      if (toks[1] == "ncube") {
        generated = ncube_family(name, parse_bool_tok(need("disjoint"), line_no));
      } else if (toks[1] == "relabel") {
        std::string which = kv.count("name") ? kv["name"] : "";
        generated = disjoint_relabel_family(
            name, load_structure(resolve_path(base_dir, need("base")), which));
      } else if (toks[1] == "emptylang") {
        std::vector<int> sizes;
        std::optional<int> from;
        int step = 1;
        if (kv.count("sizes")) sizes = parse_int_list(kv["sizes"], line_no);
        if (kv.count("from")) from = parse_int_tok(kv["from"], line_no);
        if (kv.count("step")) step = parse_int_tok(kv["step"], line_no);
        generated = empty_lang_family(name, std::move(sizes), from, step);
      } else if (toks[1] == "power") {
        FamilyDescriptor f;
        f.name = name;
        f.kind = FamilyKind::PowerFamily;
        f.param_m = parse_int_tok(need("m"), line_no);
        f.param_l = parse_int_tok(need("l"), line_no);
        f.param_n = kv.count("n") ? parse_int_tok(kv["n"], line_no) : 1;
        if (f.param_m < 1 || f.param_l < 0 || f.param_l > 20 || f.param_n < 1)
          throw ParseError("family line " + std::to_string(line_no) + ": bad power parameters");
        f.spectrum.finite[f.param_n] = 1L << f.param_l;
        generated = std::move(f);
      } else if (toks[1] == "iilu") {
        FamilyDescriptor f;
        f.name = name;
        f.kind = FamilyKind::Iilu;
        f.param_n = parse_int_tok(need("n"), line_no);
        f.modulus = parse_int_tok(need("mu"), line_no);
        if (f.param_n < 1 || f.modulus < 0)
          throw ParseError("family line " + std::to_string(line_no) + ": bad iilu parameters");
        if (f.modulus >= 1)
          f.spectrum.infinite_multiplicity.push_back(f.param_n);
        else
          f.spectrum.finite[f.param_n] = 1;
        generated = std::move(f);
      } else if (toks[1] == "prop33") {
        FamilyDescriptor f;
        f.name = name;
        f.kind = FamilyKind::Prop33;
        f.base = load_structure(resolve_path(base_dir, need("base")));
        f.count = parse_int_tok(need("count"), line_no);
        if (f.count < 1 || !f.base->size)
          throw ParseError("family line " + std::to_string(line_no) + ": bad prop33 parameters");
        f.spectrum.infinite_multiplicity.push_back(f.count * f.base->size);
        generated = std::move(f);
      } else {
        throw ParseError("family line " + std::to_string(line_no) + ": unknown generator '" + toks[1] +
                         "'");
      }
    } else if (head == "languages") {
      auto kv = parse_kv(toks, 1, line_no);
      if (!kv.count("disjoint"))
        throw ParseError("family line " + std::to_string(line_no) + ": languages disjoint=true|false");
      languages_line = true;
      languages_value = parse_bool_tok(kv["disjoint"], line_no);
    } else if (head == "spectrum") {
      if (toks.size() < 2) throw ParseError("family line " + std::to_string(line_no) + ": empty spectrum");
      SpectrumLine sl;
      sl.what = toks[1];
      if (sl.what == "size") {
        if (toks.size() != 4)
          throw ParseError("family line " + std::to_string(line_no) + ": spectrum size <n> x<mult|inf>");
        sl.n = parse_int_tok(toks[2], line_no);
        std::string m = toks[3];
        if (!m.empty() && m[0] == 'x') m.erase(0, 1);
        sl.mult = m == "inf" ? -1 : parse_int_tok(m, line_no);
      } else if (sl.what == "all-from") {
        if (toks.size() != 3)
          throw ParseError("family line " + std::to_string(line_no) + ": spectrum all-from <n>");
        sl.n = parse_int_tok(toks[2], line_no);
      } else if (sl.what == "unbounded") {
        if (toks.size() != 2)
          throw ParseError("family line " + std::to_string(line_no) + ": spectrum unbounded");
      } else if (sl.what == "inf-members") {
        if (toks.size() != 3)
          throw ParseError("family line " + std::to_string(line_no) + ": spectrum inf-members <k|inf>");
        sl.mult = toks[2] == "inf" ? -1 : parse_int_tok(toks[2], line_no);
      } else {
        throw ParseError("family line " + std::to_string(line_no) + ": unknown spectrum clause '" +
                         sl.what + "'");
      }
      spectrum_lines.push_back(sl);
    } else if (head == "end") {
      if (toks.size() != 1) throw ParseError("family line " + std::to_string(line_no) + ": bad end");
      seen_end = true;
    } else {
      throw ParseError("family line " + std::to_string(line_no) + ": unknown directive '" + head + "'");
    }
  }
  if (!seen_family) throw ParseError("family file: missing 'family <name>' header");
  if (!seen_end) throw ParseError("family file: missing 'end'");
  if (declared_kind == "generator" && !generated)
    throw ParseError("family file: kind generator but no generator line");
  if (declared_kind == "explicit" && generated)
    throw ParseError("family file: kind explicit but a generator line is present");

  FamilyDescriptor fam;
  if (generated) {
    fam = std::move(*generated);
    for (const auto& t : members) fam = with_member(fam, t);
  } else {
    fam = explicit_family(name, std::move(members));
  }
  if (languages_line) fam.languages_disjoint = languages_value;
  for (const auto& sl : spectrum_lines) {
    if (sl.what == "size") {
      if (sl.mult < 0) {
        fam.spectrum.finite.erase(sl.n);
        if (!fam.spectrum.infinitely_many_of(sl.n)) fam.spectrum.infinite_multiplicity.push_back(sl.n);
      } else {
        fam.spectrum.finite[sl.n] = sl.mult;
      }
    } else if (sl.what == "all-from") {
      fam.spectrum.all_sizes_from = sl.n;
    } else if (sl.what == "unbounded") {
      fam.spectrum.unbounded_sizes = true;
    } else if (sl.what == "inf-members") {
      fam.spectrum.infinite_model_members = sl.mult;
    }
  }
  return fam;
}

FamilyDescriptor load_family(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("load_family: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_family(buf.str(), std::filesystem::path(path).parent_path().string());
}

}  // namespace relic

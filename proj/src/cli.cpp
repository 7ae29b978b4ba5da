#include "relic/cli.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "relic/base.hpp"
#include "relic/cardinalities.hpp"
#include "relic/closure.hpp"
#include "relic/combinators.hpp"
#include "relic/eval.hpp"
#include "relic/family.hpp"
#include "relic/formula.hpp"
#include "relic/iso.hpp"
#include "relic/lang_uniform.hpp"
#include "relic/model_finder.hpp"
#include "relic/rank_types.hpp"
#include "relic/spectra.hpp"
#include "relic/structure.hpp"
#include "relic/theory.hpp"
#include "relic/type_algebra.hpp"

namespace relic {
namespace {

constexpr int kStatusOk = 0;       // definite answer
constexpr int kStatusError = 1;    // usage or input error
constexpr int kStatusBounded = 2;  // verdict holds only up to a printed bound

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string dir_of(const std::string& path) {
  auto pos = path.find_last_of('/');
  return pos == std::string::npos ? std::string() : path.substr(0, pos);
}

// `--formula` accepts the sentence inline or as @file.
std::string formula_text(const std::string& arg) {
  if (!arg.empty() && arg.front() == '@') return read_file(arg.substr(1));
  return arg;
}

Structure pick_structure(const std::string& path, const std::string& name) {
  std::vector<Structure> ss = parse_structures(read_file(path));
  if (ss.empty()) throw ParseError(path + ": no structure blocks");
  if (name.empty()) return ss.front();
  for (Structure& s : ss)
    if (s.name == name) return s;
  throw ParseError(path + ": no structure named '" + name + "'");
}

FamilyDescriptor load_family(const std::string& path) {
  return parse_family(read_file(path), dir_of(path));
}

Signature parse_sig_spec(const std::string& spec) {
  std::vector<Symbol> syms;
  std::istringstream in(spec);
  std::string tok;
  while (in >> tok) {
    auto slash = tok.find('/');
    if (slash == std::string::npos || slash == 0 || slash + 1 == tok.size())
      throw ParseError("bad signature item '" + tok + "' (want name/arity)");
    Symbol sym;
    sym.name = tok.substr(0, slash);
    sym.arity = std::stoi(tok.substr(slash + 1));
    syms.push_back(std::move(sym));
  }
  return Signature(std::move(syms));
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stoi(item));
  }
  return out;
}

std::vector<std::string> parse_name_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

OpTag parse_op(const std::string& op) {
  if (op == "e") return OpTag::E;
  if (op == "p") return OpTag::P;
  if (op == "pd") return OpTag::Pd;
  if (op == "pdr") return OpTag::Pdr;
  throw ParseError("unknown operator '" + op + "' (want e|p|pd|pdr)");
}

ClassFilter parse_class(const std::string& cls) {
  if (cls == "all") return ClassFilter::all();
  if (cls == "fin") return ClassFilter::fin();
  if (cls == "inf") return ClassFilter::inf();
  if (cls == "omega-cat") return ClassFilter::omega_cat();
  if (cls.rfind("fin<=", 0) == 0) return ClassFilter::fin_le(std::stoi(cls.substr(5)));
  if (cls.rfind("fin=", 0) == 0) return ClassFilter::fin_n(std::stoi(cls.substr(4)));
  throw ParseError("unknown class '" + cls + "' (want all|fin|inf|omega-cat|fin=N|fin<=N)");
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string join_list(const std::vector<int>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(xs[i]);
  }
  return out;
}

// ---- per-subcommand state ----

struct Args {
  // global
  int rank_cap = 3;
  int size_cap = 8;
  unsigned seed = 0;
  std::string format = "text";

  // shared options (each subcommand binds the ones it uses)
  std::string structure_path;
  std::string structure_name;
  std::string formula;
  std::string family_path;
  std::string op = "e";
  int n = 1;
  int q = -1;

  // iso
  std::string a_path, b_path, a_name, b_name;

  // combine
  std::vector<std::string> input_paths;
  std::string extra_path;
  bool extent = false;

  // find-model
  std::string sig_spec;
  int size_n = -1;
  int spectrum_n = -1;
  int forces_n = -1;
  int limit = 1;
  bool show = false;

  // closure
  bool least = false;
  bool classify_mode = false;

  // spectrum
  std::string cls = "all";
  bool laws = false;
  std::string p_sizes;

  // cardset
  std::string semigroup, recover, validate, profile_path, complement_of;
  int bound = 100;
  bool complete = false;
  int probe = -1;

  // semiisolate
  std::string outside;
  int type_class = -1;
};

ClosureCaps closure_caps(const Args& a) {
  ClosureCaps caps;
  caps.rank = a.rank_cap;
  caps.size_bound = a.size_cap;
  caps.finder.max_size = std::max(caps.finder.max_size, a.size_cap);
  return caps;
}

// ---- handlers (write report lines to `out`, return the exit status) ----

int run_eval(const Args& a, std::ostream& out) {
  Structure s = pick_structure(a.structure_path, a.structure_name);
  FormulaPtr f = parse_formula(formula_text(a.formula), s.sig);
  require_sentence(f);
  out << "structure: " << s.name << " (size " << s.size << ")\n";
  out << "value: " << (evaluate(s, f) ? "true" : "false") << "\n";
  return kStatusOk;
}

int run_types(const Args& a, std::ostream& out) {
  Structure s = pick_structure(a.structure_path, a.structure_name);
  out << "structure: " << s.name << " (size " << s.size << ")\n";
  if (a.q < 0) {
    long m = type_count(s, a.n);
    out << "m_" << a.n << " = " << m << "\n";
    return kStatusOk;
  }
  RankTypePartition part = rank_types(s, a.n, a.q);
  out << "rank-" << a.q << " classes for n=" << a.n << ": " << part.num_classes << "\n";
  out << "stabilized: " << yes_no(part.stabilized) << "\n";
  return part.stabilized ? kStatusOk : kStatusBounded;
}

int run_algebra(const Args& a, std::ostream& out) {
  Structure s = pick_structure(a.structure_path, a.structure_name);
  TypeAlgebra alg = type_algebra(s, a.n);
  out << "structure: " << s.name << " (size " << s.size << ")\n";
  out << "m_" << a.n << " = " << alg.type_count() << "\n";
  out << "|B_" << a.n << "| = 2^" << alg.type_count() << " = " << alg.element_count() << "\n";
  out << "rho(bottom, top) = " << alg.rho(alg.bottom(), alg.top()) << "\n";
  return kStatusOk;
}

int run_iso(const Args& a, std::ostream& out) {
  Structure sa = pick_structure(a.a_path, a.a_name);
  Structure sb = pick_structure(a.b_path, a.b_name);
  out << "a: " << sa.name << " (size " << sa.size << ")\n";
  out << "b: " << sb.name << " (size " << sb.size << ")\n";
  out << "isomorphic: " << yes_no(isomorphic(sa, sb)) << "\n";
  return kStatusOk;
}

int run_combine(const Args& a, std::ostream& out) {
  std::vector<Structure> blocks;
  for (const std::string& path : a.input_paths)
    for (Structure& s : parse_structures(read_file(path))) blocks.push_back(std::move(s));
  if (blocks.empty()) throw ParseError("no input structures");

  if (a.op == "e") {
    if (a.extent) throw ParseError("--extent applies to the p operators only");
    ECombined ec = e_combination(blocks);
    out << render_structure(ec.base);
    return kStatusOk;
  }

  PMode mode;
  if (a.op == "pd") mode = PMode::Disjoint;
  else if (a.op == "pdr") mode = PMode::Repeat;
  else if (a.op == "p") mode = PMode::General;
  else throw ParseError("unknown operator '" + a.op + "' (want e|p|pd|pdr)");

  std::optional<Structure> extra;
  if (!a.extra_path.empty()) extra = pick_structure(a.extra_path, "");
  PCombined pc = p_combination(blocks, mode, extra);
  out << render_structure(a.extent ? p_infty_extent(pc) : pc.base);
  return kStatusOk;
}

int run_find_model(const Args& a, std::ostream& out) {
  int modes = (a.size_n >= 0) + (a.spectrum_n >= 0) + (a.forces_n >= 0);
  if (modes != 1)
    throw ParseError("choose exactly one of --size, --spectrum, --forces-infinity");

  std::string text = formula_text(a.formula);
  Signature sig;
  FormulaPtr f;
  if (!a.sig_spec.empty()) {
    sig = parse_sig_spec(a.sig_spec);
    f = parse_formula(text, sig);
  } else {
    f = parse_formula(text);
    sig = inferred_signature(f);
  }
  require_sentence(f);

  FinderCaps caps;
  caps.max_size = std::max({caps.max_size, a.size_cap, a.size_n, a.spectrum_n, a.forces_n});

  if (a.size_n >= 0) {
    std::vector<Structure> models = find_models(f, sig, a.size_n, a.limit, caps);
    out << "models of size " << a.size_n << ": " << models.size();
    if (static_cast<int>(models.size()) == a.limit) out << " (limit)";
    out << "\n";
    if (a.show)
      for (const Structure& m : models) out << render_structure(m);
    return kStatusOk;
  }

  if (a.spectrum_n >= 0) {
    std::vector<int> sizes = fin_spectrum(f, sig, a.spectrum_n, caps);
    if (sizes.empty()) {
      out << "no finite model up to " << a.spectrum_n << "\n";
      return kStatusBounded;
    }
    out << "finite models at sizes: " << join_list(sizes) << "\n";
    return kStatusOk;
  }

  ForcesInfinityVerdict v = forces_infinity(f, sig, a.forces_n, caps);
  if (v.refuted) {
    out << "refuted: finite model of size " << v.n << "\n";
    return kStatusOk;
  }
  out << "not refuted up to " << a.forces_n << "\n";
  return kStatusBounded;
}

// The closure rule actually exercised, as a stable machine-readable tag.
std::string closure_rule_tag(const FamilyDescriptor& fam, OpTag op) {
  if (fam.kind == FamilyKind::Iilu && op == OpTag::E) return "residue-row-limits";
  return "disjoint-language-limits";
}

int run_closure(const Args& a, std::ostream& out) {
  FamilyDescriptor fam = load_family(a.family_path);
  OpTag op = parse_op(a.op);
  ClosureCaps caps = closure_caps(a);

  if (a.least) {
    LeastSetResult res = least_generating_set(fam, caps);
    out << "family: " << fam.name << "\n";
    out << "least generating set: " << (res.exists ? "exists" : "none") << "\n";
    for (std::size_t i = 0; i < res.isolated.size(); ++i) {
      out << "member: " << res.isolated[i];
      if (i < res.isolating.size() && res.isolating[i])
        out << "  [isolated by: " << render_formula(res.isolating[i]) << "]";
      out << "\n";
    }
    for (const std::string& name : res.limit_members) out << "limit member: " << name << "\n";
    if (res.blocker) out << "blocker: " << res.blocker->display << "\n";
    if (!res.note.empty()) out << "note: " << res.note << "\n";
    return kStatusOk;
  }

  if (a.classify_mode) {
    ClassifyReport rep = classify(fam, op, caps);
    out << "family: " << fam.name << "\n";
    switch (rep.stays_small.kind) {
      case Verdict::Kind::Yes: out << "stays-small: yes"; break;
      case Verdict::Kind::No: out << "stays-small: no"; break;
      case Verdict::Kind::BoundedYes:
        out << "stays-small: bounded (rank " << rep.stays_small.rank << ", bound "
            << rep.stays_small.bound << ")";
        break;
    }
    out << "\n";
    if (rep.size_bound) out << "size-bound: " << *rep.size_bound << "\n";
    out << "escapes-fin: " << yes_no(rep.escapes_fin) << "\n";
    out << "closure-avoids-fin: " << yes_no(rep.closure_avoids_fin) << "\n";
    for (const std::string& note : rep.notes) out << "note: " << note << "\n";
    return rep.stays_small.kind == Verdict::Kind::BoundedYes ? kStatusBounded : kStatusOk;
  }

  auto close = [&](const FamilyDescriptor& g) {
    if (g.kind == FamilyKind::Iilu && op == OpTag::E) return iilu_closure(g, caps);
    return closure_disjoint(g, op, caps);
  };

  FamilyDescriptor closed = close(fam);
  std::set<std::string> before;
  for (const TheoryRef& t : fam.members) before.insert(t.display);
  std::vector<std::string> added;
  for (const TheoryRef& t : closed.members)
    if (!before.count(t.display)) added.push_back(t.display);

  FamilyDescriptor twice = close(closed);

  out << "family: " << fam.name << " (" << (family_infinite(fam) ? "infinite" : "finite")
      << ")\n";
  if (added.empty()) out << "added: (none)\n";
  for (const std::string& name : added) out << "added: " << name << "\n";
  out << "idempotent: " << yes_no(twice.members.size() == closed.members.size()) << "\n";
  out << "rule: " << closure_rule_tag(fam, op) << "\n";
  return kStatusOk;
}

int run_spectrum(const Args& a, std::ostream& out) {
  FamilyDescriptor fam = load_family(a.family_path);
  ClosureCaps caps = closure_caps(a);

  if (a.laws) {
    SpectrumLawReport rep = check_spectrum_laws(fam, caps);
    for (const std::string& line : rep.checks) out << line << "\n";
    out << "monotone: " << yes_no(rep.monotone) << "\n";
    out << "additive: " << yes_no(rep.additive) << "\n";
    return kStatusOk;
  }

  if (!a.p_sizes.empty()) {
    PSpectrumReport rep = p_spectrum_disjoint(fam, parse_int_list(a.p_sizes), caps);
    out << "family: " << fam.name << "\n";
    out << "blocks: " << (rep.infinitely_many_blocks ? "infinite" : "finite") << "\n";
    for (auto [n, v] : rep.fin_values) out << "p-spectrum[fin=" << n << "] = " << v << "\n";
    out << "p-spectrum[inf] = " << rep.inf_value << "\n";
    if (!rep.note.empty()) out << "note: " << rep.note << "\n";
    return kStatusOk;
  }

  ClassFilter filter = parse_class(a.cls);
  SpectrumValue v = e_spectrum(fam, filter, caps);
  bool exact = v.kind == SpectrumValue::Kind::Exact;
  out << "e-spectrum[" << class_filter_name(filter) << "] of " << fam.name << " = " << v.value
      << (exact ? " (exact)" : " (at least)") << "\n";
  for (const TheoryRef& w : v.witnesses)
    out << (exact ? "witness: " : "candidate: ") << w.display << "\n";
  if (!v.note.empty()) out << "note: " << v.note << "\n";
  return exact ? kStatusOk : kStatusBounded;
}

int run_cardset(const Args& a, std::ostream& out) {
  int modes = !a.semigroup.empty() + !a.recover.empty() + !a.validate.empty() +
              !a.profile_path.empty() + !a.complement_of.empty();
  if (modes != 1)
    throw ParseError(
        "choose exactly one of --semigroup, --recover, --validate, --profile, --complement-of");

  if (!a.semigroup.empty()) {
    std::vector<int> members = semigroup_set(parse_int_list(a.semigroup), a.bound);
    out << "members: " << join_list(members) << "\n";
    return kStatusOk;
  }

  if (!a.recover.empty()) {
    RecoverResult res = recover_generators(parse_int_list(a.recover), a.bound);
    if (res.generators) out << "generators: " << join_list(*res.generators) << "\n";
    else out << "inconsistent: " << res.reason << "\n";
    return kStatusOk;
  }

  if (!a.validate.empty()) {
    PinfValidation res = validate_complete_pinf(parse_int_list(a.validate), a.complete);
    if (res.ok) out << "ok: k0 = " << res.k0 << "\n";
    else out << "reject: " << res.reason << "\n";
    return kStatusOk;
  }

  if (!a.profile_path.empty()) {
    FamilyDescriptor fam = load_family(a.profile_path);
    CardProfile prof = card_profile(fam, parse_op(a.op), closure_caps(a));
    out << "family: " << fam.name << "\n";
    out << "c     = " << prof.c.render() << "\n";
    out << "c_bar = " << prof.c_bar.render() << "\n";
    out << "c_hat = " << prof.c_hat.render() << "\n";
    if (a.probe >= 0) out << "c_hat up to " << a.probe << ": " << join_list(prof.c_hat.up_to(a.probe)) << "\n";
    return kStatusOk;
  }

  CardinalitySet y = card_empty();
  const std::string& spec = a.complement_of;
  if (spec == "Z+") y = card_zplus();
  else if (spec.rfind("cofinite:", 0) == 0) y = card_cofinite(parse_int_list(spec.substr(9)));
  else if (spec.size() > 2 && spec.substr(spec.size() - 2) == "Z+")
    y = card_progressions({std::stoi(spec.substr(0, spec.size() - 2))});
  else throw ParseError("bad set spec '" + spec + "' (want Z+, <k>Z+, or cofinite:a,b,c)");

  FamilyDescriptor fam = complement_family(y);
  CardProfile prof = card_profile(fam, OpTag::Pd, closure_caps(a));
  out << "family: " << fam.name << "\n";
  out << "c     = " << prof.c.render() << "\n";
  out << "c_bar = " << prof.c_bar.render() << "\n";
  return kStatusOk;
}

int run_semiisolate(const Args& a, std::ostream& out) {
  Structure s = pick_structure(a.structure_path, a.structure_name);
  if (!a.outside.empty() && a.type_class >= 0)
    throw ParseError("choose at most one of --outside, --type-class");
  SISelector sel = SISelector::all();
  if (!a.outside.empty()) sel = SISelector::outside(parse_name_list(a.outside));
  if (a.type_class >= 0) sel = SISelector::type_class_of(a.type_class);
  int q = a.q < 0 ? s.size : a.q;

  SIRelation si = si_relation(s, sel, q);
  out << "structure: " << s.name << " (size " << s.size << ")\n";
  out << "q: " << q << "\n";
  out << "selected: " << join_list(si.selected) << "\n";
  bool equiv = si.is_equivalence();
  out << "equivalence: " << yes_no(equiv) << "\n";
  if (equiv) {
    std::vector<int> sizes;
    for (const std::vector<int>& cls : si.classes()) sizes.push_back(static_cast<int>(cls.size()));
    std::sort(sizes.begin(), sizes.end());
    out << "class sizes: " << join_list(sizes) << "\n";
    out << "chat = " << chat_from_si_classes(sizes).render() << "\n";
  }
  return kStatusOk;
}

}  // namespace

CliResult run_cli(const std::vector<std::string>& args) {
  CliResult res;
  Args a;

  CLI::App app{"finite-model workbench: type algebras, combination closures, spectra"};
  app.name("relic");
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--rank-cap", a.rank_cap, "rank bound for closure and limit probes")
      ->check(CLI::Range(0, 8));
  app.add_option("--size-cap", a.size_cap, "universe-size bound for model searches")
      ->check(CLI::Range(1, 12));
  app.add_option("--seed", a.seed, "randomization seed (reserved; output is deterministic)");
  app.add_option("--format", a.format, "output format")->check(CLI::IsMember({"text"}));

  CLI::App* eval = app.add_subcommand("eval", "evaluate a sentence in a structure");
  eval->add_option("--structure", a.structure_path, "structure file")->required();
  eval->add_option("--name", a.structure_name, "structure name within the file");
  eval->add_option("--formula", a.formula, "sentence text or @file")->required();

  CLI::App* types = app.add_subcommand("types", "count n-types (exact or at a rank)");
  types->add_option("--structure", a.structure_path, "structure file")->required();
  types->add_option("--name", a.structure_name, "structure name within the file");
  types->add_option("-n,--tuple", a.n, "tuple length n")->check(CLI::Range(1, 4));
  types->add_option("-q,--rank", a.q, "quantifier rank (omit for the stabilized count)");

  CLI::App* algebra = app.add_subcommand("algebra", "type Boolean algebra B_n of a structure");
  algebra->add_option("--structure", a.structure_path, "structure file")->required();
  algebra->add_option("--name", a.structure_name, "structure name within the file");
  algebra->add_option("-n,--tuple", a.n, "tuple length n")->check(CLI::Range(1, 4));

  CLI::App* iso = app.add_subcommand("iso", "test two structures for isomorphism");
  iso->add_option("--a", a.a_path, "first structure file")->required();
  iso->add_option("--b", a.b_path, "second structure file")->required();
  iso->add_option("--a-name", a.a_name, "name within the first file");
  iso->add_option("--b-name", a.b_name, "name within the second file");

  CLI::App* combine = app.add_subcommand("combine", "combine structures with an operator");
  combine->add_option("--op", a.op, "operator: e|p|pd|pdr");
  combine->add_option("--inputs", a.input_paths, "structure files (blocks, in order)")
      ->required();
  combine->add_option("--extra", a.extra_path, "extra structure (general p mode)");
  combine->add_flag("--extent", a.extent, "print the part outside every block instead");

  CLI::App* find = app.add_subcommand("find-model", "search for finite models of a sentence");
  find->add_option("--formula", a.formula, "sentence text or @file")->required();
  find->add_option("--sig", a.sig_spec, "signature, e.g. \"R/2 S/1\" (default: inferred)");
  find->add_option("--size", a.size_n, "exhaust models of exactly this size");
  find->add_option("--spectrum", a.spectrum_n, "list model sizes up to this bound");
  find->add_option("--forces-infinity", a.forces_n, "try to refute up to this size");
  find->add_option("--limit", a.limit, "stop --size search after this many models");
  find->add_flag("--show", a.show, "print the models found by --size");

  CLI::App* closure = app.add_subcommand("closure", "limit closure of a family");
  closure->add_option("--family", a.family_path, "family file")->required();
  closure->add_option("--op", a.op, "operator: e|p|pd|pdr");
  CLI::Option* least_opt =
      closure->add_flag("--least", a.least, "report the least generating set instead");
  closure->add_flag("--classify", a.classify_mode, "report the size classification instead")
      ->excludes(least_opt);

  CLI::App* spectrum = app.add_subcommand("spectrum", "count classes added by closure");
  spectrum->add_option("--family", a.family_path, "family file")->required();
  spectrum->add_option("--class", a.cls, "all|fin|inf|omega-cat|fin=N|fin<=N");
  spectrum->add_flag("--laws", a.laws, "check monotony and additivity across classes");
  spectrum->add_option("--p-sizes", a.p_sizes, "sizes n for the p-operator spectrum (comma list)");

  CLI::App* cardset = app.add_subcommand("cardset", "cardinality-set arithmetic and profiles");
  cardset->add_option("--semigroup", a.semigroup, "generators (comma list)");
  cardset->add_option("--recover", a.recover, "sample members (comma list)");
  cardset->add_option("--validate", a.validate, "candidate set (comma list)");
  cardset->add_flag("--complete", a.complete, "validate against the complete-set discipline");
  cardset->add_option("--profile", a.profile_path, "family file to profile");
  cardset->add_option("--op", a.op, "operator for --profile: e|p|pd|pdr");
  cardset->add_option("--probe", a.probe, "list c_hat members up to this bound");
  cardset->add_option("--complement-of", a.complement_of, "Z+, <k>Z+, or cofinite:a,b,c");
  cardset->add_option("--bound", a.bound, "enumeration bound")->check(CLI::Range(1, 1000000));

  CLI::App* si = app.add_subcommand("semiisolate", "semi-isolation relation over a structure");
  si->add_option("--structure", a.structure_path, "structure file")->required();
  si->add_option("--name", a.structure_name, "structure name within the file");
  si->add_option("-q,--rank", a.q, "pair-type rank (default: structure size)");
  si->add_option("--outside", a.outside, "select elements outside these unary symbols");
  si->add_option("--type-class", a.type_class, "select one rank-q 1-type class");

  std::ostringstream out, err;
  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);

    if (app.got_subcommand(eval)) res.status = run_eval(a, out);
    else if (app.got_subcommand(types)) res.status = run_types(a, out);
    else if (app.got_subcommand(algebra)) res.status = run_algebra(a, out);
    else if (app.got_subcommand(iso)) res.status = run_iso(a, out);
    else if (app.got_subcommand(combine)) res.status = run_combine(a, out);
    else if (app.got_subcommand(find)) res.status = run_find_model(a, out);
    else if (app.got_subcommand(closure)) res.status = run_closure(a, out);
    else if (app.got_subcommand(spectrum)) res.status = run_spectrum(a, out);
    else if (app.got_subcommand(cardset)) res.status = run_cardset(a, out);
    else if (app.got_subcommand(si)) res.status = run_semiisolate(a, out);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    res.status = code == 0 ? kStatusOk : kStatusError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    res.status = kStatusError;
  }

  res.out = out.str();
  res.err = err.str();
  return res;
}

}  // namespace relic

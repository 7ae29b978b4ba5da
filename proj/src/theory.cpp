#include "relic/theory.hpp"

#include <algorithm>
#include <cctype>
#include <utility>
#include <vector>

#include "relic/base.hpp"
#include "relic/cube.hpp"
#include "relic/ef.hpp"
#include "relic/eval.hpp"
#include "relic/iso.hpp"

namespace relic {

namespace {

bool all_tables_empty(const Structure& s) {
  for (const Table& t : s.tables)
    if (!t.empty()) return false;
  return true;
}

// "Q<digits>" -> digits, for the iilu residue rule.
std::optional<int> iilu_symbol_index(const std::string& name) {
  if (name.size() < 2 || name[0] != 'Q') return std::nullopt;
  int value = 0;
  for (std::size_t i = 1; i < name.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(name[i]))) return std::nullopt;
    value = value * 10 + (name[i] - '0');
    if (value > 1'000'000) return std::nullopt;
  }
  return value;
}

Structure iilu_proxy(const TheoryRef& t, const Signature& lang) {
  Structure s;
  s.name = t.display;
  s.size = t.size;
  for (std::size_t i = 0; i < lang.size(); ++i) {
    const Symbol& sym = lang.at(i);
    s.sig.add(sym);
    Table table;
    std::optional<int> j = iilu_symbol_index(sym.name);
    if (sym.arity == 1 && j && *j % t.modulus == t.residue) {
      for (int a = 0; a < s.size; ++a) table.push_back({a});
    }
    s.tables.push_back(std::move(table));
  }
  s.validate();
  return s;
}

// The smallest cube dimension d such that Q_d, Q_{d+1}, Q_{d+2} are pairwise
// rank-q equivalent.  The rank-q fragment of the cube sequence is eventually
// constant in the dimension; the three-way agreement certifies (at desk
// scale) that the plateau has been reached, so Q_d decides rank-q sentences
// of the limit theory.
int omega_cube_window(int q, const TheoryCaps& caps) {
  EfUniverse ef;
  for (int d = 1; d + 2 <= caps.max_cube_dim; ++d) {
    Structure a = make_ncube(d);
    Structure b = make_ncube(d + 1);
    Structure c = make_ncube(d + 2);
    if (ef.equivalent(a, b, q) && ef.equivalent(b, c, q)) return d;
  }
  throw CapExceeded("omega_cube oracle: no stabilization window within dimension cap");
}

// ---- dense linear order without endpoints: insertion-pattern oracle ----
//
// Environments assign integer "positions" to the quantified variables; only
// the order pattern matters.  At each quantifier the new variable is either
// equal to one of the k current distinct values or falls in one of the k+1
// gaps (before everything, between two adjacent values, after everything).
// Density and the absence of endpoints make these 2k+1 cases exhaustive up
// to automorphism, so the recursion is an exact decision procedure.

std::vector<long long> dlo_placements(std::vector<long long>& env) {
  std::vector<long long> distinct(env.begin(), env.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  // Renormalize the environment so value i of the sorted distinct list
  // becomes 2i; gaps are then the odd values -1, 1, ..., 2k-1.
  for (long long& v : env) {
    auto it = std::lower_bound(distinct.begin(), distinct.end(), v);
    v = 2 * (it - distinct.begin());
  }
  std::vector<long long> choices;
  long long k = static_cast<long long>(distinct.size());
  if (k == 0) {
    choices.push_back(0);
    return choices;
  }
  choices.push_back(-1);
  for (long long i = 0; i < k; ++i) {
    choices.push_back(2 * i);      // equal to the i-th value
    choices.push_back(2 * i + 1);  // gap above it
  }
  return choices;
}

class DloEval {
 public:
  DloEval(std::string sym, long budget) : sym_(std::move(sym)), budget_(budget) {}

  bool eval(const Formula& f, std::vector<long long>& env) {
    if (--budget_ < 0) throw CapExceeded("dlo oracle: node budget exceeded");
    switch (f.kind) {
      case FKind::True:
        return true;
      case FKind::False:
        return false;
      case FKind::Atom: {
        if (f.sym != sym_) return false;  // foreign symbol = empty relation
        if (f.args.size() != 2)
          throw PreconditionError("dlo oracle: order symbol used with arity != 2");
        return value(f.args[0], env) < value(f.args[1], env);
      }
      case FKind::Eq:
        return value(f.args[0], env) == value(f.args[1], env);
      case FKind::Not:
        return !eval(*f.lhs, env);
      case FKind::And:
        return eval(*f.lhs, env) && eval(*f.rhs, env);
      case FKind::Or:
        return eval(*f.lhs, env) || eval(*f.rhs, env);
      case FKind::Implies:
        return !eval(*f.lhs, env) || eval(*f.rhs, env);
      case FKind::Iff:
        return eval(*f.lhs, env) == eval(*f.rhs, env);
      case FKind::Exists:
      case FKind::Forall: {
        bool want = f.kind == FKind::Exists;
        std::vector<long long> choices = dlo_placements(env);
        for (long long c : choices) {
          env.push_back(c);
          bool v = eval(*f.body, env);
          env.pop_back();
          if (v == want) return want;
        }
        return !want;
      }
    }
    throw PreconditionError("dlo oracle: unknown formula node");
  }

 private:
  long long value(const VarRef& r, const std::vector<long long>& env) const {
    if (r.bound < 0)
      throw PreconditionError("dlo oracle: free variable " + r.name);
    return env[env.size() - 1 - static_cast<std::size_t>(r.bound)];
  }

  std::string sym_;
  long budget_;
};

// Characteristic rank-q sentence of the dense order, over the same
// insertion-pattern recursion: at rank 0 the exact order/equality diagram of
// the environment, above it the standard Hintikka shape (for every placement
// its witness exists, and every element matches some placement).
FormulaPtr dlo_hintikka(std::vector<long long> env, std::vector<std::string> names, int q,
                        const std::string& sym) {
  if (q == 0) {
    std::vector<FormulaPtr> lits;
    for (std::size_t i = 0; i < names.size(); ++i)
      lits.push_back(f_not(f_atom(sym, {names[i], names[i]})));
    for (std::size_t i = 0; i < names.size(); ++i)
      for (std::size_t j = i + 1; j < names.size(); ++j) {
        FormulaPtr lt = f_atom(sym, {names[i], names[j]});
        FormulaPtr gt = f_atom(sym, {names[j], names[i]});
        FormulaPtr eq = f_eq(names[i], names[j]);
        if (env[i] < env[j])
          lits.push_back(f_and(lt, f_and(f_not(gt), f_not(eq))));
        else if (env[i] > env[j])
          lits.push_back(f_and(gt, f_and(f_not(lt), f_not(eq))));
        else
          lits.push_back(f_and(eq, f_and(f_not(lt), f_not(gt))));
      }
    return f_and_all(std::move(lits));
  }
  std::vector<long long> probe = env;
  std::vector<long long> choices = dlo_placements(probe);
  std::string var = "x" + std::to_string(names.size());
  std::vector<std::string> next_names = names;
  next_names.push_back(var);
  std::vector<FormulaPtr> children;
  for (long long c : choices) {
    std::vector<long long> next_env = probe;
    next_env.push_back(c);
    children.push_back(dlo_hintikka(std::move(next_env), next_names, q - 1, sym));
  }
  std::vector<FormulaPtr> parts;
  for (const FormulaPtr& ch : children) parts.push_back(f_exists(var, ch));
  parts.push_back(f_forall(var, f_or_all(children)));
  return f_and_all(std::move(parts));
}

}  // namespace

Structure empty_structure(int n, const std::string& name) {
  if (n < 0) throw PreconditionError("empty_structure: negative size");
  Structure s;
  s.name = name.empty() ? "empty" + std::to_string(n) : name;
  s.size = n;
  s.validate();
  return s;
}

TheoryRef fin_theory(Structure s) {
  s.validate();
  if (s.size < 1) throw PreconditionError("fin_theory: structures must be nonempty");
  if (all_tables_empty(s)) return t0_theory(s.size);
  TheoryRef t;
  t.kind = TheoryKind::Fin;
  t.display = "Th(" + (s.name.empty() ? "structure" : s.name) + ")";
  t.model = std::move(s);
  t.size = t.model->size;
  return t;
}

TheoryRef t0_theory(int n) {
  if (n < 1) throw PreconditionError("t0_theory: size must be positive");
  TheoryRef t;
  t.kind = TheoryKind::T0;
  t.display = "T0(" + std::to_string(n) + ")";
  t.size = n;
  return t;
}

TheoryRef t0inf_theory() {
  TheoryRef t;
  t.kind = TheoryKind::T0Inf;
  t.display = "T0inf";
  return t;
}

TheoryRef omega_cube_theory() {
  TheoryRef t;
  t.kind = TheoryKind::Limit;
  t.generator = "omega_cube";
  t.display = "Limit(omega_cube)";
  return t;
}

TheoryRef dlo_theory(const std::string& order_symbol) {
  if (order_symbol.empty()) throw PreconditionError("dlo_theory: empty order symbol");
  TheoryRef t;
  t.kind = TheoryKind::Limit;
  t.generator = "dlo";
  t.order_symbol = order_symbol;
  t.display = "Limit(dlo:" + order_symbol + ")";
  return t;
}

TheoryRef iilu_limit_theory(int size, int modulus, int residue) {
  if (size < 1) throw PreconditionError("iilu_limit_theory: size must be positive");
  if (modulus < 1 || residue < 0 || residue >= modulus)
    throw PreconditionError("iilu_limit_theory: need 0 <= residue < modulus");
  TheoryRef t;
  t.kind = TheoryKind::Limit;
  t.generator = "iilu";
  t.size = size;
  t.modulus = modulus;
  t.residue = residue;
  t.display = "Limit(iilu:size=" + std::to_string(size) + ",residue=" + std::to_string(residue) +
              ",mod=" + std::to_string(modulus) + ")";
  return t;
}

TheoryRef axiom_theory(const std::string& name, const FormulaPtr& axiom_sentence,
                       bool forces_infinity_declared) {
  require_sentence(axiom_sentence);
  TheoryRef t;
  t.kind = TheoryKind::Limit;
  t.generator = "axiom";
  t.display = "Limit(" + name + ")";
  t.axioms = axiom_sentence;
  t.forces_infinity_declared = forces_infinity_declared;
  return t;
}

bool same_theory(const TheoryRef& a, const TheoryRef& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case TheoryKind::T0:
      return a.size == b.size;
    case TheoryKind::T0Inf:
      return true;
    case TheoryKind::Fin: {
      const Structure& sa = *a.model;
      const Structure& sb = *b.model;
      if (sa.size != sb.size) return false;
      auto names = [](const Structure& s) {
        std::vector<std::pair<std::string, int>> v;
        for (std::size_t i = 0; i < s.sig.size(); ++i)
          v.emplace_back(s.sig.at(i).name, s.sig.at(i).arity);
        std::sort(v.begin(), v.end());
        return v;
      };
      if (names(sa) != names(sb)) return false;
      return isomorphic(sa, sb);
    }
    case TheoryKind::Limit: {
      if (a.generator != b.generator) return false;
      if (a.generator == "dlo") return a.order_symbol == b.order_symbol;
      if (a.generator == "iilu")
        return a.size == b.size && a.modulus == b.modulus && a.residue == b.residue;
      if (a.generator == "axiom") return alpha_key(a.axioms) == alpha_key(b.axioms);
      return true;  // omega_cube
    }
  }
  return false;
}

bool theory_contains(const TheoryRef& t, const FormulaPtr& f, const TheoryCaps& caps) {
  require_sentence(f);
  int q = quantifier_rank(f);
  switch (t.kind) {
    // Theories with a concrete (proxy) model evaluate directly at any rank.
    case TheoryKind::Fin:
      return evaluate(*t.model, f);
    case TheoryKind::T0:
      return evaluate(empty_structure(t.size), f);
    case TheoryKind::T0Inf:
      return evaluate(empty_structure(std::max(q, 1)), f);
    case TheoryKind::Limit:
      break;
  }
  // Limit oracles blow up with rank; cap them.
  if (q > caps.max_rank)
    throw CapExceeded("theory oracle: sentence rank " + std::to_string(q) + " exceeds cap " +
                      std::to_string(caps.max_rank));
  if (t.generator == "omega_cube")
    return evaluate(make_ncube(omega_cube_window(q, caps)), f);
  if (t.generator == "dlo") {
    DloEval oracle(t.order_symbol, caps.dlo_nodes);
    std::vector<long long> env;
    return oracle.eval(*f, env);
  }
  if (t.generator == "iilu") return evaluate(iilu_proxy(t, inferred_signature(f)), f);
  if (t.generator == "axiom") {
    if (alpha_key(f) == alpha_key(t.axioms)) return true;
    throw Unsupported("axiom-presented theory decides only its declared axiom");
  }
  throw Unsupported("theory oracle: unknown generator " + t.generator);
}

Structure theory_proxy(const TheoryRef& t, int q, const Signature* lang,
                       const TheoryCaps& caps) {
  if (q < 0) throw PreconditionError("theory_proxy: negative rank");
  switch (t.kind) {
    case TheoryKind::Fin:
      return *t.model;
    case TheoryKind::T0:
      return empty_structure(t.size, t.display);
    case TheoryKind::T0Inf:
      return empty_structure(std::max(q, 1), t.display);
    case TheoryKind::Limit:
      break;
  }
  if (t.generator == "omega_cube") return make_ncube(omega_cube_window(q, caps));
  if (t.generator == "iilu") {
    if (!lang) throw Unsupported("theory_proxy: iilu limits need an explicit language");
    return iilu_proxy(t, *lang);
  }
  throw Unsupported("theory_proxy: no finite proxy for generator " + t.generator);
}

FormulaPtr characteristic_sentence(const TheoryRef& t, int q, const Signature& lang,
                                   const TheoryCaps& caps) {
  if (t.kind == TheoryKind::Limit && t.generator == "dlo")
    return bind_formula(dlo_hintikka({}, {}, q, t.order_symbol));
  if (t.kind == TheoryKind::Limit && t.generator == "axiom")
    throw Unsupported("characteristic_sentence: axiom-presented theory");
  Structure proxy = theory_proxy(t, q, &lang, caps);
  EfUniverse ef;
  return ef.hintikka_sentence(proxy, q, &lang);
}

std::optional<int> finite_model_size(const TheoryRef& t) {
  switch (t.kind) {
    case TheoryKind::Fin:
    case TheoryKind::T0:
      return t.size;
    case TheoryKind::T0Inf:
      return std::nullopt;
    case TheoryKind::Limit:
      return t.generator == "iilu" ? std::optional<int>(t.size) : std::nullopt;
  }
  return std::nullopt;
}

bool omega_categorical(const TheoryRef& t) {
  if (t.kind == TheoryKind::T0Inf) return true;
  return t.kind == TheoryKind::Limit && t.generator == "dlo";
}

}  // namespace relic

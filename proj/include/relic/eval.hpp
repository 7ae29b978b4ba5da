#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "relic/formula.hpp"
#include "relic/refine.hpp"
#include "relic/structure.hpp"

namespace relic {

// Tarskian satisfaction over a finite structure.  Symbols of the formula
// absent from the structure's signature are read as empty relations (the
// convention used when members of disjoint-language families judge each
// other's sentences); present symbols must match the atom's arity.
class Evaluator {
 public:
  explicit Evaluator(const Structure& s);

  // asg must cover the free variables of f.
  bool eval(const FormulaPtr& f, const std::map<std::string, int>& asg = {}) const;

  // f pre-bound via bind_formula_scoped(f, vars); env holds the var values.
  bool eval_env(const FormulaPtr& f, std::vector<int>& env) const;

  const Structure& structure() const { return dense_.structure(); }

 private:
  bool rec(const Formula& f, std::vector<int>& env, const std::map<std::string, int>* asg) const;
  int lookup(const VarRef& r, const std::vector<int>& env,
             const std::map<std::string, int>* asg) const;

  DenseIndex dense_;
};

bool evaluate(const Structure& s, const FormulaPtr& f,
              const std::map<std::string, int>& asg = {});

// Satisfaction bitmap of an open formula over all |s|^n assignments to
// `vars` (lex tuple order).  The parallel version is the default kernel;
// the serial one is the reference it must agree with.
std::vector<std::uint8_t> solution_set(const Structure& s, const FormulaPtr& f,
                                       const std::vector<std::string>& vars);
std::vector<std::uint8_t> solution_set_serial(const Structure& s, const FormulaPtr& f,
                                              const std::vector<std::string>& vars);

// ---- three-valued evaluation over partially known relations ----

enum class Tri : std::int8_t { False = 0, True = 1, Unknown = 2 };

inline Tri tri_not(Tri t) {
  if (t == Tri::Unknown) return Tri::Unknown;
  return t == Tri::True ? Tri::False : Tri::True;
}

// Kleene evaluation: the oracle answers atom queries (by symbol index into
// `syms`) with True/False/Unknown; a True/False result is then valid for
// every completion of the unknowns.  Quantifiers range over {0..size-1}.
// Equalities never consult the oracle.  Used by the model finder.
template <class Oracle>
class Eval3 {
 public:
  Eval3(const Signature& sig, int size, const Oracle& atoms) : sig_(sig), size_(size), atoms_(atoms) {}

  Tri run(const FormulaPtr& f) {
    std::vector<int> env;
    return rec(*f, env);
  }

 private:
  Tri rec(const Formula& f, std::vector<int>& env) {
    switch (f.kind) {
      case FKind::True:
        return Tri::True;
      case FKind::False:
        return Tri::False;
      case FKind::Eq:
        return value(f.args[0], env) == value(f.args[1], env) ? Tri::True : Tri::False;
      case FKind::Atom: {
        Tuple t(f.args.size());
        for (std::size_t i = 0; i < f.args.size(); ++i) t[i] = value(f.args[i], env);
        return atoms_(sig_.index_of(f.sym), t);
      }
      case FKind::Not:
        return tri_not(rec(*f.lhs, env));
      case FKind::And: {
        Tri a = rec(*f.lhs, env);
        if (a == Tri::False) return Tri::False;
        Tri b = rec(*f.rhs, env);
        if (b == Tri::False) return Tri::False;
        return (a == Tri::Unknown || b == Tri::Unknown) ? Tri::Unknown : Tri::True;
      }
      case FKind::Or: {
        Tri a = rec(*f.lhs, env);
        if (a == Tri::True) return Tri::True;
        Tri b = rec(*f.rhs, env);
        if (b == Tri::True) return Tri::True;
        return (a == Tri::Unknown || b == Tri::Unknown) ? Tri::Unknown : Tri::False;
      }
      case FKind::Implies: {
        Tri a = rec(*f.lhs, env);
        if (a == Tri::False) return Tri::True;
        Tri b = rec(*f.rhs, env);
        if (b == Tri::True) return Tri::True;
        if (a == Tri::Unknown || b == Tri::Unknown) return Tri::Unknown;
        return Tri::False;
      }
      case FKind::Iff: {
        Tri a = rec(*f.lhs, env);
        Tri b = rec(*f.rhs, env);
        if (a == Tri::Unknown || b == Tri::Unknown) return Tri::Unknown;
        return a == b ? Tri::True : Tri::False;
      }
      case FKind::Exists:
      case FKind::Forall: {
        const bool universal = f.kind == FKind::Forall;
        bool unknown = false;
        env.push_back(0);
        for (int c = 0; c < size_; ++c) {
          env.back() = c;
          Tri v = rec(*f.body, env);
          if (!universal && v == Tri::True) {
            env.pop_back();
            return Tri::True;
          }
          if (universal && v == Tri::False) {
            env.pop_back();
            return Tri::False;
          }
          if (v == Tri::Unknown) unknown = true;
        }
        env.pop_back();
        if (unknown) return Tri::Unknown;
        return universal ? Tri::True : Tri::False;
      }
    }
    return Tri::Unknown;
  }

  int value(const VarRef& r, const std::vector<int>& env) {
    if (r.bound < 0 || r.bound >= static_cast<int>(env.size()))
      throw PreconditionError("eval3: unbound variable " + r.name);
    return env[env.size() - 1 - static_cast<std::size_t>(r.bound)];
  }

  const Signature& sig_;
  int size_;
  const Oracle& atoms_;
};

template <class Oracle>
Tri eval3(const FormulaPtr& f, const Signature& sig, int size, const Oracle& atoms) {
  return Eval3<Oracle>(sig, size, atoms).run(f);
}

}  // namespace relic

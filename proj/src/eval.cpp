#include "relic/eval.hpp"

#include <algorithm>

#include "relic/base.hpp"

namespace relic {

Evaluator::Evaluator(const Structure& s) : dense_(s) { s.validate(); }

int Evaluator::lookup(const VarRef& r, const std::vector<int>& env,
                      const std::map<std::string, int>* asg) const {
  if (r.bound >= 0 && r.bound < static_cast<int>(env.size()))
    return env[env.size() - 1 - static_cast<std::size_t>(r.bound)];
  if (asg) {
    auto it = asg->find(r.name);
    if (it != asg->end()) return it->second;
  }
  throw PreconditionError("evaluate: uncovered free variable " + r.name);
}

bool Evaluator::rec(const Formula& f, std::vector<int>& env,
                    const std::map<std::string, int>* asg) const {
  const Structure& s = dense_.structure();
  switch (f.kind) {
    case FKind::True:
      return true;
    case FKind::False:
      return false;
    case FKind::Eq:
      return lookup(f.args[0], env, asg) == lookup(f.args[1], env, asg);
    case FKind::Atom: {
      if (!s.sig.has(f.sym)) return false;  // foreign symbol = empty relation
      std::size_t sym = s.sig.index_of(f.sym);
      if (s.sig.at(sym).arity != static_cast<int>(f.args.size()))
        throw PreconditionError("evaluate: arity mismatch for " + f.sym);
      if (f.args.size() == 1) return dense_.holds1(sym, lookup(f.args[0], env, asg));
      if (f.args.size() == 2)
        return dense_.holds2(sym, lookup(f.args[0], env, asg), lookup(f.args[1], env, asg));
      Tuple t(f.args.size());
      for (std::size_t i = 0; i < f.args.size(); ++i) t[i] = lookup(f.args[i], env, asg);
      return dense_.holds(sym, t);
    }
    case FKind::Not:
      return !rec(*f.lhs, env, asg);
    case FKind::And:
      return rec(*f.lhs, env, asg) && rec(*f.rhs, env, asg);
    case FKind::Or:
      return rec(*f.lhs, env, asg) || rec(*f.rhs, env, asg);
    case FKind::Implies:
      return !rec(*f.lhs, env, asg) || rec(*f.rhs, env, asg);
    case FKind::Iff:
      return rec(*f.lhs, env, asg) == rec(*f.rhs, env, asg);
    case FKind::Exists:
    case FKind::Forall: {
      const bool universal = f.kind == FKind::Forall;
      env.push_back(0);
      for (int c = 0; c < s.size; ++c) {
        env.back() = c;
        if (rec(*f.body, env, asg) != universal) {
          env.pop_back();
          return !universal;
        }
      }
      env.pop_back();
      return universal;
    }
  }
  throw PreconditionError("evaluate: bad node");
}

bool Evaluator::eval(const FormulaPtr& f, const std::map<std::string, int>& asg) const {
  std::vector<int> env;
  return rec(*f, env, &asg);
}

bool Evaluator::eval_env(const FormulaPtr& f, std::vector<int>& env) const {
  return rec(*f, env, nullptr);
}

bool evaluate(const Structure& s, const FormulaPtr& f, const std::map<std::string, int>& asg) {
  return Evaluator(s).eval(f, asg);
}

namespace {

std::vector<std::uint8_t> solution_impl(const Structure& s, const FormulaPtr& f,
                                        const std::vector<std::string>& vars, bool parallel) {
  s.validate();
  const int n = static_cast<int>(vars.size());
  if (n < 1) throw PreconditionError("solution_set: need at least one variable");
  const std::size_t count = tuple_pow(s.size, n);
  for (const auto& v : free_vars(f))
    if (std::find(vars.begin(), vars.end(), v) == vars.end())
      throw PreconditionError("solution_set: uncovered free variable " + v);
  Evaluator ev(s);
  FormulaPtr bound = bind_formula_scoped(f, vars);
  std::vector<std::uint8_t> out(count, 0);
  if (parallel) {
#ifdef _OPENMP
#pragma omp parallel
    {
      std::vector<int> env(static_cast<std::size_t>(n));
      Tuple t;
#pragma omp for schedule(static)
      for (long long i = 0; i < static_cast<long long>(count); ++i) {
        tuple_decode(static_cast<std::size_t>(i), s.size, n, t);
        env.assign(t.begin(), t.end());
        out[static_cast<std::size_t>(i)] = ev.eval_env(bound, env) ? 1 : 0;
      }
    }
    return out;
#endif
  }
  std::vector<int> env(static_cast<std::size_t>(n));
  Tuple t;
  for (std::size_t i = 0; i < count; ++i) {
    tuple_decode(i, s.size, n, t);
    env.assign(t.begin(), t.end());
    out[i] = ev.eval_env(bound, env) ? 1 : 0;
  }
  return out;
}

}  // namespace

std::vector<std::uint8_t> solution_set(const Structure& s, const FormulaPtr& f,
                                       const std::vector<std::string>& vars) {
  return solution_impl(s, f, vars, true);
}

std::vector<std::uint8_t> solution_set_serial(const Structure& s, const FormulaPtr& f,
                                              const std::vector<std::string>& vars) {
  return solution_impl(s, f, vars, false);
}

}  // namespace relic

#include "relic/ef.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "relic/base.hpp"
#include "relic/refine.hpp"

namespace relic {

namespace {

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

// Sorted-by-name symbol order makes keys comparable across signatures.
std::vector<std::size_t> name_order(const Signature& sig) {
  std::vector<std::size_t> order(sig.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return sig.at(a).name < sig.at(b).name;
  });
  return order;
}

// Equality pattern plus every positive relational fact on t's coordinates.
std::string atomic_key(const DenseIndex& dense, const Tuple& t) {
  const Structure& s = dense.structure();
  std::string key;
  put_u32(key, static_cast<std::uint32_t>(t.size()));
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = i + 1; j < t.size(); ++j) key.push_back(t[i] == t[j] ? '=' : '!');
  const int len = static_cast<int>(t.size());
  if (len == 0) return key;
  Tuple pos, elem;
  for (std::size_t sym : name_order(s.sig)) {
    const int arity = s.sig.at(sym).arity;
    const std::size_t npos = tuple_pow(len, arity);
    for (std::size_t p = 0; p < npos; ++p) {
      tuple_decode(p, len, arity, pos);
      elem.resize(pos.size());
      for (std::size_t k = 0; k < pos.size(); ++k) elem[k] = t[static_cast<std::size_t>(pos[k])];
      if (dense.holds(sym, elem)) {
        key.push_back('F');
        key += s.sig.at(sym).name;
        key.push_back(':');
        put_u32(key, static_cast<std::uint32_t>(p));
      }
    }
  }
  return key;
}

}  // namespace

class EfWalk {
 public:
  EfWalk(EfUniverse& u, const Structure& s) : u_(u), s_(s), dense_(s) {}

  int class_rec(const Tuple& t, int q) {
    if (++nodes_ > u_.caps_.max_nodes) throw CapExceeded("ef: node cap exceeded");
    std::string key;
    put_u32(key, static_cast<std::uint32_t>(q));
    key += atomic_key(dense_, t);
    if (q > 0) {
      std::set<int> kids;
      Tuple ext = t;
      ext.push_back(0);
      for (int c = 0; c < s_.size; ++c) {
        ext.back() = c;
        kids.insert(class_rec(ext, q - 1));
      }
      for (int id : kids) put_u32(key, static_cast<std::uint32_t>(id));
    }
    auto [it, fresh] = u_.registry_.emplace(std::move(key), static_cast<int>(u_.registry_.size()));
    (void)fresh;
    return it->second;
  }

  // Mirrors class_rec; formulas memoized per class id (id pins length and q).
  FormulaPtr hint_rec(const Tuple& t, int q, const Signature& lang,
                      std::map<int, FormulaPtr>& memo, int* out_id) {
    const int id = class_rec(t, q);
    if (out_id) *out_id = id;
    auto hit = memo.find(id);
    if (hit != memo.end()) return hit->second;

    std::vector<FormulaPtr> conj = diagram(t, lang);
    if (q > 0) {
      const std::string bound_var = "x" + std::to_string(t.size());
      std::map<int, int> reps;  // child class id -> least extension element
      Tuple ext = t;
      ext.push_back(0);
      for (int c = 0; c < s_.size; ++c) {
        ext.back() = c;
        reps.emplace(class_rec(ext, q - 1), c);
      }
      std::vector<std::pair<int, int>> by_rep(reps.begin(), reps.end());
      std::sort(by_rep.begin(), by_rep.end(),
                [](const auto& a, const auto& b) { return a.second < b.second; });
      std::vector<FormulaPtr> branches;
      for (auto [cid, c] : by_rep) {
        (void)cid;
        ext.back() = c;
        branches.push_back(hint_rec(ext, q - 1, lang, memo, nullptr));
      }
      for (const auto& b : branches) conj.push_back(f_exists(bound_var, b));
      conj.push_back(f_forall(bound_var, f_or_all(branches)));
    }
    FormulaPtr out = f_and_all(std::move(conj));
    memo.emplace(id, out);
    return out;
  }

 private:
  std::vector<FormulaPtr> diagram(const Tuple& t, const Signature& lang) {
    auto var = [](std::size_t i) { return "x" + std::to_string(i); };
    std::vector<FormulaPtr> out;
    for (std::size_t i = 0; i < t.size(); ++i)
      for (std::size_t j = i + 1; j < t.size(); ++j) {
        auto eq = f_eq(var(i), var(j));
        out.push_back(t[i] == t[j] ? eq : f_not(eq));
      }
    const int len = static_cast<int>(t.size());
    if (len == 0) return out;
    Tuple pos, elem;
    for (std::size_t li = 0; li < lang.size(); ++li) {
      const auto& sym = lang.at(li);
      const std::size_t npos = tuple_pow(len, sym.arity);
      const bool present = s_.sig.has(sym.name);
      const std::size_t si = present ? s_.sig.index_of(sym.name) : 0;
      for (std::size_t p = 0; p < npos; ++p) {
        tuple_decode(p, len, sym.arity, pos);
        elem.resize(pos.size());
        std::vector<std::string> vars;
        for (std::size_t k = 0; k < pos.size(); ++k) {
          elem[k] = t[static_cast<std::size_t>(pos[k])];
          vars.push_back(var(static_cast<std::size_t>(pos[k])));
        }
        const bool holds = present && dense_.holds(si, elem);
        auto atom = f_atom(sym.name, vars);
        out.push_back(holds ? atom : f_not(atom));
      }
    }
    return out;
  }

  EfUniverse& u_;
  const Structure& s_;
  DenseIndex dense_;
  long nodes_ = 0;
};

int EfUniverse::classify(const Structure& s, const Tuple& t, int q) {
  s.validate();
  if (q < 0 || q > caps_.max_q) throw PreconditionError("ef: rank out of range");
  for (int e : t)
    if (e < 0 || e >= s.size) throw PreconditionError("ef: tuple element out of range");
  EfWalk walk(*this, s);
  return walk.class_rec(t, q);
}

int EfUniverse::fingerprint(const Structure& s, int q) { return classify(s, {}, q); }

bool EfUniverse::equivalent(const Structure& a, const Structure& b, int q) {
  return fingerprint(a, q) == fingerprint(b, q);
}

FormulaPtr EfUniverse::hintikka(const Structure& s, const Tuple& t, int q,
                                const Signature* lang) {
  s.validate();
  if (q < 0 || q > caps_.max_q) throw PreconditionError("ef: rank out of range");
  EfWalk walk(*this, s);
  std::map<int, FormulaPtr> memo;
  return bind_formula(walk.hint_rec(t, q, lang ? *lang : s.sig, memo, nullptr));
}

FormulaPtr EfUniverse::hintikka_sentence(const Structure& s, int q, const Signature* lang) {
  return hintikka(s, {}, q, lang);
}

std::vector<int> EfUniverse::tuple_classes(const Structure& s, int n, int q) {
  s.validate();
  if (n < 1) throw PreconditionError("ef: n must be >= 1");
  const std::size_t count = tuple_pow(s.size, n);
  EfWalk walk(*this, s);
  std::vector<int> raw(count);
  Tuple t;
  for (std::size_t i = 0; i < count; ++i) {
    tuple_decode(i, s.size, n, t);
    raw[i] = walk.class_rec(t, q);
  }
  // Canonical per-structure ids in order of least member.
  std::map<int, int> renumber;
  std::vector<int> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    auto [it, fresh] = renumber.emplace(raw[i], static_cast<int>(renumber.size()));
    (void)fresh;
    out[i] = it->second;
  }
  return out;
}

// ---- diagram-style formulas ----

namespace {

// Order elements so each new one has as many relational links into the
// already-chosen prefix as possible (better evaluator pruning).
std::vector<int> constrained_order(const Structure& s, const std::vector<int>& seed) {
  std::vector<bool> chosen(static_cast<std::size_t>(s.size), false);
  std::vector<int> order;
  for (int e : seed)
    if (!chosen[static_cast<std::size_t>(e)]) {
      chosen[static_cast<std::size_t>(e)] = true;
      order.push_back(e);
    }
  while (static_cast<int>(order.size()) < s.size) {
    int best = -1;
    long best_score = -1;
    for (int v = 0; v < s.size; ++v) {
      if (chosen[static_cast<std::size_t>(v)]) continue;
      long score = 0;
      for (std::size_t sym = 0; sym < s.sig.size(); ++sym)
        for (const auto& tup : s.tables[sym]) {
          bool has_v = false, inside = true;
          for (int e : tup) {
            if (e == v) has_v = true;
            else if (!chosen[static_cast<std::size_t>(e)]) inside = false;
          }
          if (has_v && inside) ++score;
        }
      if (score > best_score) {
        best_score = score;
        best = v;
      }
    }
    chosen[static_cast<std::size_t>(best)] = true;
    order.push_back(best);
  }
  return order;
}

// Diagram facts (atoms and negated atoms) over the chosen prefix that
// involve the element at `level`, written via var names.
std::vector<FormulaPtr> level_facts(const Structure& s, const std::vector<int>& order,
                                    std::size_t level, const std::vector<std::string>& var_of) {
  std::vector<FormulaPtr> out;
  DenseIndex dense(s);
  Tuple pos, elem;
  const int prefix = static_cast<int>(level) + 1;
  for (std::size_t sym = 0; sym < s.sig.size(); ++sym) {
    const int arity = s.sig.at(sym).arity;
    const std::size_t npos = tuple_pow(prefix, arity);
    for (std::size_t p = 0; p < npos; ++p) {
      tuple_decode(p, prefix, arity, pos);
      if (std::find(pos.begin(), pos.end(), static_cast<int>(level)) == pos.end()) continue;
      elem.resize(pos.size());
      std::vector<std::string> vars;
      for (std::size_t k = 0; k < pos.size(); ++k) {
        const int e = order[static_cast<std::size_t>(pos[k])];
        elem[k] = e;
        vars.push_back(var_of[static_cast<std::size_t>(e)]);
      }
      auto atom = f_atom(s.sig.at(sym).name, vars);
      out.push_back(dense.holds(sym, elem) ? atom : f_not(atom));
    }
  }
  return out;
}

// Shared core of scott_sentence and orbit_formula: free variables name the
// elements of `pinned` (x0..), existentials name the rest (y0..), each level
// carrying its distinctness and diagram facts, ending in a universal cover.
FormulaPtr diagram_formula(const Structure& s, const Tuple& pinned) {
  s.validate();
  if (s.size == 0) return f_not(f_exists("y", f_eq("y", "y")));

  std::vector<std::string> var_of(static_cast<std::size_t>(s.size));
  std::vector<FormulaPtr> pin_conj;
  std::vector<int> seed;
  for (std::size_t i = 0; i < pinned.size(); ++i) {
    const int e = pinned[i];
    const std::string xi = "x" + std::to_string(i);
    if (var_of[static_cast<std::size_t>(e)].empty()) {
      var_of[static_cast<std::size_t>(e)] = xi;
      seed.push_back(e);
    } else {
      pin_conj.push_back(f_eq(var_of[static_cast<std::size_t>(e)], xi));
    }
  }
  const auto order = constrained_order(s, seed);
  int fresh = 0;
  for (std::size_t k = seed.size(); k < order.size(); ++k)
    var_of[static_cast<std::size_t>(order[k])] = "y" + std::to_string(fresh++);

  // Facts among the pinned prefix (levels 0..|seed|-1) sit outside the
  // existential block.
  for (std::size_t lev = 0; lev < seed.size(); ++lev) {
    for (std::size_t j = 0; j < lev; ++j)
      pin_conj.push_back(f_not(f_eq(var_of[static_cast<std::size_t>(order[j])],
                                    var_of[static_cast<std::size_t>(order[lev])])));
    for (auto& fact : level_facts(s, order, lev, var_of)) pin_conj.push_back(fact);
  }

  // Innermost: the universal cover.
  std::vector<FormulaPtr> cover;
  for (int e = 0; e < s.size; ++e) cover.push_back(f_eq("z", var_of[static_cast<std::size_t>(e)]));
  FormulaPtr body = f_forall("z", f_or_all(std::move(cover)));

  // Wrap existentials inside-out with their level facts.
  for (std::size_t lev = order.size(); lev-- > seed.size();) {
    std::vector<FormulaPtr> here;
    for (std::size_t j = 0; j < lev; ++j)
      here.push_back(f_not(f_eq(var_of[static_cast<std::size_t>(order[j])],
                                var_of[static_cast<std::size_t>(order[lev])])));
    for (auto& fact : level_facts(s, order, lev, var_of)) here.push_back(fact);
    here.push_back(body);
    body = f_exists(var_of[static_cast<std::size_t>(order[lev])], f_and_all(std::move(here)));
  }

  pin_conj.push_back(body);
  return bind_formula(f_and_all(std::move(pin_conj)));
}

}  // namespace

FormulaPtr scott_sentence(const Structure& s) { return diagram_formula(s, {}); }

FormulaPtr orbit_formula(const Structure& s, const Tuple& t) {
  if (t.empty()) throw PreconditionError("orbit_formula: empty tuple");
  for (int e : t)
    if (e < 0 || e >= s.size) throw PreconditionError("orbit_formula: element out of range");
  return diagram_formula(s, t);
}

FormulaPtr size_exactly_sentence(int n) {
  if (n < 0) throw PreconditionError("size_exactly_sentence: n < 0");
  if (n == 0) return f_not(f_exists("y", f_eq("y", "y")));
  std::vector<FormulaPtr> conj;
  std::vector<FormulaPtr> cover;
  for (int i = 0; i < n; ++i) cover.push_back(f_eq("z", "x" + std::to_string(i)));
  FormulaPtr body = f_forall("z", f_or_all(std::move(cover)));
  conj.push_back(body);
  for (int i = n; i-- > 0;) {
    std::vector<FormulaPtr> here;
    for (int j = 0; j < i; ++j)
      here.push_back(f_not(f_eq("x" + std::to_string(j), "x" + std::to_string(i))));
    for (auto& c : conj) here.push_back(c);
    conj = {f_exists("x" + std::to_string(i), f_and_all(std::move(here)))};
  }
  return bind_formula(conj[0]);
}

FormulaPtr size_at_least_sentence(int n) {
  if (n < 0) throw PreconditionError("size_at_least_sentence: n < 0");
  if (n == 0) return f_true();
  FormulaPtr body = f_true();
  for (int i = n; i-- > 0;) {
    std::vector<FormulaPtr> here;
    for (int j = 0; j < i; ++j)
      here.push_back(f_not(f_eq("x" + std::to_string(j), "x" + std::to_string(i))));
    here.push_back(body);
    body = f_exists("x" + std::to_string(i), f_and_all(std::move(here)));
  }
  return bind_formula(body);
}

// ---- sentence stream ----

SentenceStream sentences_up_to(const Signature& sig, int q, const SentenceBudget& budget) {
  if (q < 0 || q > budget.max_q)
    throw PreconditionError("sentences_up_to: rank exceeds budget.max_q");
  SentenceStream out;
  EfUniverse ef;
  std::map<int, Structure> reps;  // class id -> first realizing structure
  std::vector<int> order;

  for (int size = 1; size <= budget.max_size; ++size) {
    // Count enumerations: product over symbols of 2^(size^arity).
    long double total = 1;
    std::vector<std::size_t> spaces;
    for (std::size_t i = 0; i < sig.size(); ++i) {
      const std::size_t space = tuple_pow(size, sig.at(i).arity);
      if (space > 62) throw CapExceeded("sentences_up_to: tuple space too large");
      spaces.push_back(space);
      total *= std::pow(2.0L, static_cast<long double>(space));
      if (total > static_cast<long double>(budget.max_structures))
        throw CapExceeded("sentences_up_to: enumeration budget exhausted at size " +
                          std::to_string(size));
    }
    std::vector<std::uint64_t> masks(sig.size(), 0);
    while (true) {
      Structure s;
      s.name = "enum";
      s.sig = sig;
      s.size = size;
      s.tables.assign(sig.size(), {});
      Tuple t;
      for (std::size_t i = 0; i < sig.size(); ++i)
        for (std::size_t p = 0; p < spaces[i]; ++p)
          if (masks[i] >> p & 1) {
            tuple_decode(p, size, sig.at(i).arity, t);
            table_insert(s.tables[i], t);
          }
      const int id = ef.fingerprint(s, q);
      if (reps.emplace(id, s).second) order.push_back(id);
      // Odometer.
      std::size_t i = 0;
      for (; i < sig.size(); ++i) {
        if (++masks[i] < (1ULL << spaces[i])) break;
        masks[i] = 0;
      }
      if (i == sig.size()) break;
    }
  }

  for (int id : order) out.sentences.push_back(ef.hintikka_sentence(reps.at(id), q));

  bool unary_only = true;
  for (std::size_t i = 0; i < sig.size(); ++i)
    if (sig.at(i).arity > 1) unary_only = false;
  if (sig.size() == 0) {
    out.complete = budget.max_size >= std::max(q, 1);
    out.note = out.complete ? "complete: empty language stabilizes at rank size"
                            : "incomplete: raise max_size to at least q";
  } else if (unary_only &&
             budget.max_size >= q * (1 << sig.size())) {
    out.complete = true;
    out.note = "complete: unary language, all cell-count profiles realized";
  } else {
    out.complete = false;
    out.note = "enumerated structures up to size " + std::to_string(budget.max_size) +
               "; classes beyond that size are not covered";
  }
  return out;
}

}  // namespace relic

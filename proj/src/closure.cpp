#include "relic/closure.hpp"

#include <algorithm>
#include <set>

#include "relic/cube.hpp"
#include "relic/ef.hpp"
#include "relic/eval.hpp"

namespace relic {

namespace {

constexpr int kCubeDimCap = 10;  // largest cube a tail rule may materialize

// ∃x0..x{ar-1} sym(x0,...,x{ar-1})
FormulaPtr exists_tuple_sentence(const Symbol& sym) {
  std::vector<std::string> vars;
  for (int i = 0; i < sym.arity; ++i) vars.push_back("x" + std::to_string(i));
  FormulaPtr body = f_atom(sym.name, vars);
  for (int i = sym.arity; i-- > 0;) body = f_exists(vars[static_cast<std::size_t>(i)], body);
  return bind_formula(body);
}

// ⋀_{sym in lang} ¬∃x̄ sym(x̄); empty language gives ⊤.
FormulaPtr emptiness_sentence(const Signature& lang) {
  std::vector<FormulaPtr> conj;
  for (const auto& sym : lang.symbols()) conj.push_back(f_not(exists_tuple_sentence(sym)));
  return bind_formula(f_and_all(std::move(conj)));
}

// Exclusion test without paying for TheoryRef construction when moot.
bool excluded_structure(const FamilyDescriptor& fam, const Structure& s) {
  if (fam.excluded.empty()) return false;
  return family_excluded(fam, fin_theory(s));
}

bool excluded_t0(const FamilyDescriptor& fam, int n) {
  if (fam.excluded.empty()) return false;
  return family_excluded(fam, t0_theory(n));
}

// First dimension w <= cap-2 with the rank-q EF class of the cube constant
// on {w, w+1, w+2}: beyond it every cube realizes that class, so every
// rank-<=q sentence is constant there (the certificate the cube limit oracle
// itself rests on).  Fills cls[d-1] for d = 1..(probed dims).
Structure reduct_to(const Structure& s, const Signature& lang);

std::optional<int> cube_class_window(EfUniverse& u, int q, int cap, std::vector<int>& cls,
                                     const Signature* lang = nullptr) {
  if (q > EfCaps{}.max_q)
    throw CapExceeded("cube tail rule: rank " + std::to_string(q) + " beyond the EF cap");
  cls.clear();
  for (int d = 1; d <= cap; ++d) {
    Structure cube = make_ncube(d);
    cls.push_back(u.fingerprint(lang ? reduct_to(cube, *lang) : cube, q));
    std::size_t k = cls.size();
    if (k >= 3 && cls[k - 1] == cls[k - 2] && cls[k - 2] == cls[k - 3])
      return d - 2;
  }
  return std::nullopt;
}

// Members listed in fam.members (generator additions / explicit families).
long count_explicit_members(const FamilyDescriptor& fam, const FormulaPtr& f,
                            const ClosureCaps& caps) {
  long cnt = 0;
  for (const auto& t : fam.members)
    if (theory_contains(t, f, caps.theory)) ++cnt;
  return cnt;
}

Count count_finite_stream(const FamilyDescriptor& fam, const FormulaPtr& f,
                          const ClosureCaps& caps) {
  long total = family_member_count(fam);
  long cnt = 0;
  for (const auto& t : probe_members(fam, total))
    if (theory_contains(t, f, caps.theory)) ++cnt;
  return {Count::Kind::Exact, cnt, "finite family: every member evaluated"};
}

Count count_ncube(const FamilyDescriptor& fam, const FormulaPtr& f, const ClosureCaps& caps) {
  int q = quantifier_rank(f);
  long extras = count_explicit_members(fam, f, caps);
  if (fam.ncube_disjoint) {
    // Members whose private symbol f does not mention see it as an
    // empty-language sentence; on pure sets the rank-q value is constant
    // from size q on, so only finitely many members need a look.
    std::set<long> relevant;
    Signature fsig = inferred_signature(f);
    for (const auto& sym : fsig.symbols()) {
      int d = [&] {
        if (sym.name.size() < 2 || sym.name[0] != 'R') return -1;
        long v = 0;
        for (std::size_t i = 1; i < sym.name.size(); ++i) {
          if (sym.name[i] < '0' || sym.name[i] > '9') return -1;
          v = v * 10 + (sym.name[i] - '0');
          if (v > kCubeDimCap) throw CapExceeded("count: cube dimension beyond the cap");
        }
        return static_cast<int>(v);
      }();
      if (d >= 1) relevant.insert(d);
    }
    for (long d = 1; (1L << d) < q; ++d) relevant.insert(d);
    bool tail = evaluate(empty_structure(std::max(q, 1)), f);
    if (tail)
      return {Count::Kind::Infinite, 0,
              "all but finitely many members read the sentence over the empty language, "
              "where its value is true on every large pure set"};
    long cnt = extras;
    for (long d : relevant) {
      Structure cube = make_ncube(static_cast<int>(d));
      cube = rename_symbols(cube, {"R"}, {"R" + std::to_string(d)});
      if (excluded_structure(fam, cube)) continue;
      if (evaluate(cube, f)) ++cnt;
    }
    return {Count::Kind::Exact, cnt, "private-symbol members evaluated; empty-language tail false"};
  }
  // Single language: beyond the class-stabilization window all cubes give
  // the sentence one value; evaluate it on the few dimensions below.
  EfUniverse u;
  std::vector<int> cls;
  auto w = cube_class_window(u, q, caps.theory.max_cube_dim, cls);
  if (!w) {
    long cnt = extras;
    for (std::size_t d = 1; d <= cls.size(); ++d)
      if (evaluate(make_ncube(static_cast<int>(d)), f) &&
          !excluded_structure(fam, make_ncube(static_cast<int>(d))))
        ++cnt;
    return {Count::Kind::AtLeast, cnt, "no class-stable dimension window within the cap"};
  }
  bool tail = evaluate(make_ncube(*w), f);
  if (tail)
    return {Count::Kind::Infinite, 0,
            "true on the stable cube class reached at dimension " + std::to_string(*w)};
  long cnt = extras;
  for (int d = 1; d < *w; ++d)
    if (evaluate(make_ncube(d), f) && !excluded_structure(fam, make_ncube(d))) ++cnt;
  return {Count::Kind::Exact, cnt,
          "false on the stable cube class reached at dimension " + std::to_string(*w)};
}

Count count_relabel(const FamilyDescriptor& fam, const FormulaPtr& f, const ClosureCaps& caps) {
  const Structure& base = *fam.base;
  std::set<long> relevant;
  Signature fsig = inferred_signature(f);
  for (const auto& sym : fsig.symbols()) {
    auto pos = sym.name.rfind('_');
    if (pos == std::string::npos || pos + 1 >= sym.name.size()) continue;
    std::string stem = sym.name.substr(0, pos);
    if (!base.sig.has(stem)) continue;
    long idx = 0;
    bool ok = true;
    for (std::size_t i = pos + 1; i < sym.name.size() && ok; ++i) {
      ok = sym.name[i] >= '0' && sym.name[i] <= '9';
      if (ok) idx = idx * 10 + (sym.name[i] - '0');
      if (idx > 1'000'000) ok = false;
    }
    if (ok) relevant.insert(idx);
  }
  // A copy whose symbols f never mentions reads f over the empty language
  // at the copy's own (fixed) size — one evaluation settles the whole tail.
  if (evaluate(empty_structure(base.size), f))
    return {Count::Kind::Infinite, 0,
            "all but finitely many copies read the sentence over the empty language, "
            "where it is true at the copies' size"};
  long cnt = count_explicit_members(fam, f, caps);
  FamilyDescriptor probe = fam;  // materialize members via the stream
  for (long i : relevant) {
    TheoryRef t = family_member(probe, i);
    if (family_excluded(fam, t)) continue;
    if (theory_contains(t, f, caps.theory)) ++cnt;
  }
  return {Count::Kind::Exact, cnt, "symbol-relevant copies evaluated; empty-language tail false"};
}

Count count_empty_lang(const FamilyDescriptor& fam, const FormulaPtr& f, const ClosureCaps& caps) {
  int q = quantifier_rank(f);
  int threshold = std::max(q, 1);  // pure sets of sizes >= rank agree
  long cnt = count_explicit_members(fam, f, caps);
  for (int n : fam.empty_sizes)
    if (!excluded_t0(fam, n) && evaluate(empty_structure(n), f)) ++cnt;
  if (fam.empty_all_from) {
    int from = *fam.empty_all_from;
    int tail = from;
    while (tail < threshold) tail += fam.empty_step;  // first grid point past the rank
    for (int n = from; n < tail; n += fam.empty_step)
      if (!excluded_t0(fam, n) && evaluate(empty_structure(n), f)) ++cnt;
    if (evaluate(empty_structure(tail), f))
      return {Count::Kind::Infinite, 0,
              "true on every pure set of size at least the sentence's rank"};
  }
  return {Count::Kind::Exact, cnt, "pure-set values constant from the sentence's rank on"};
}

Count count_iilu(const FamilyDescriptor& fam, const FormulaPtr& f, const ClosureCaps& caps) {
  int mu = fam.modulus;
  int top_mentioned = -1;
  Signature fsig = inferred_signature(f);
  for (const auto& sym : fsig.symbols()) {
    if (sym.name.size() < 2 || sym.name[0] != 'Q') continue;
    long v = 0;
    bool ok = true;
    for (std::size_t i = 1; i < sym.name.size() && ok; ++i) {
      ok = sym.name[i] >= '0' && sym.name[i] <= '9';
      if (ok) v = v * 10 + (sym.name[i] - '0');
      if (v > 1'000'000) ok = false;
    }
    if (ok) top_mentioned = std::max(top_mentioned, static_cast<int>(v));
  }
  long cnt = count_explicit_members(fam, f, caps);
  // Row t: members (t, i) with t + i*mu above every mentioned symbol all
  // interpret the mentioned part identically (full exactly at j = t mod mu),
  // so the row's value is eventually the constant v_t.
  for (int t = 0; t < mu; ++t) {
    long i0 = 0;
    while (t + i0 * mu < top_mentioned) ++i0;
    for (long i = 0; i < i0; ++i) {
      TheoryRef m = family_member(fam, i * mu + t);
      if (family_excluded(fam, m)) continue;
      if (theory_contains(m, f, caps.theory)) ++cnt;
    }
    TheoryRef tail = family_member(fam, i0 * mu + t);
    if (theory_contains(tail, f, caps.theory)) {
      if (!family_excluded(fam, tail))
        return {Count::Kind::Infinite, 0,
                "row " + std::to_string(t) + " answers true on every member past the mentioned symbols"};
      // An excluded tail member: the rest of the row still answers true.
      return {Count::Kind::Infinite, 0, "row " + std::to_string(t) + " answers true cofinitely"};
    }
  }
  return {Count::Kind::Exact, cnt, "row tails all false past the mentioned symbols"};
}

Structure reduct_to(const Structure& s, const Signature& lang) {
  std::vector<std::string> keep;
  for (const auto& sym : s.sig.symbols())
    if (lang.has(sym.name)) keep.push_back(sym.name);
  return reduct(s, keep);
}

// How many members are rank-q equivalent to `target` over `lang` (target
// already reduced to lang).  This is count_satisfying for a characteristic
// sentence, computed on EF classes instead of materialized sentences.
Count count_equiv(const FamilyDescriptor& fam, const Structure& target, int q,
                  const Signature& lang, const ClosureCaps& caps) {
  EfUniverse u;
  auto member_equiv = [&](const TheoryRef& m) {
    return u.equivalent(reduct_to(theory_proxy(m, q, &lang, caps.theory), lang), target, q);
  };
  if (!family_infinite(fam)) {
    long cnt = 0;
    for (const auto& m : probe_members(fam, family_member_count(fam)))
      if (member_equiv(m)) ++cnt;
    return {Count::Kind::Exact, cnt, "finite family: every member compared"};
  }
  long extras = 0;
  for (const auto& m : fam.members)
    if (member_equiv(m)) ++extras;

  switch (fam.kind) {
    case FamilyKind::NCubeSeq: {
      if (fam.ncube_disjoint) {
        std::set<long> relevant;
        for (const auto& sym : lang.symbols()) {
          if (sym.name.size() < 2 || sym.name[0] != 'R') continue;
          long v = 0;
          bool ok = true;
          for (std::size_t i = 1; i < sym.name.size() && ok; ++i) {
            ok = sym.name[i] >= '0' && sym.name[i] <= '9';
            if (ok) v = v * 10 + (sym.name[i] - '0');
            if (v > kCubeDimCap) ok = false;
          }
          if (ok && v >= 1) relevant.insert(v);
        }
        for (long d = 1; (1L << d) < q; ++d) relevant.insert(d);
        if (u.equivalent(empty_structure(std::max(q, 1)), target, q))
          return {Count::Kind::Infinite, 0,
                  "members beyond the probe language match over their empty reducts"};
        long cnt = extras;
        for (long d : relevant) {
          Structure cube = rename_symbols(make_ncube(static_cast<int>(d)), {"R"},
                                          {"R" + std::to_string(d)});
          if (excluded_structure(fam, cube)) continue;
          if (u.equivalent(reduct_to(cube, lang), target, q)) ++cnt;
        }
        return {Count::Kind::Exact, cnt, "probe-language members compared; empty-reduct tail misses"};
      }
      // Single language: beyond the class-stabilization window every cube
      // realizes one rank-q class; compare the target against it.
      std::vector<int> cls;
      auto w = cube_class_window(u, q, caps.theory.max_cube_dim, cls, &lang);
      int ft = u.fingerprint(target, q);
      if (!w) {
        long cnt = extras;
        for (std::size_t d = 0; d < cls.size(); ++d)
          if (cls[d] == ft && !excluded_structure(fam, make_ncube(static_cast<int>(d + 1)))) ++cnt;
        return {Count::Kind::AtLeast, cnt, "no class-stable dimension window within the cap"};
      }
      if (cls[static_cast<std::size_t>(*w - 1)] == ft)
        return {Count::Kind::Infinite, 0,
                "target matches the stable cube class reached at dimension " + std::to_string(*w)};
      long cnt = extras;
      for (int d = 1; d < *w; ++d)
        if (cls[static_cast<std::size_t>(d - 1)] == ft && !excluded_structure(fam, make_ncube(d)))
          ++cnt;
      return {Count::Kind::Exact, cnt,
              "target misses the stable cube class reached at dimension " + std::to_string(*w)};
    }
    case FamilyKind::DisjointRelabel: {
      const Structure& base = *fam.base;
      std::set<long> relevant;
      for (const auto& sym : lang.symbols()) {
        auto pos = sym.name.rfind('_');
        if (pos == std::string::npos || pos + 1 >= sym.name.size()) continue;
        if (!base.sig.has(sym.name.substr(0, pos))) continue;
        long idx = 0;
        bool ok = true;
        for (std::size_t i = pos + 1; i < sym.name.size() && ok; ++i) {
          ok = sym.name[i] >= '0' && sym.name[i] <= '9';
          if (ok) idx = idx * 10 + (sym.name[i] - '0');
          if (idx > 1'000'000) ok = false;
        }
        if (ok) relevant.insert(idx);
      }
      if (u.equivalent(empty_structure(base.size), target, q))
        return {Count::Kind::Infinite, 0,
                "copies beyond the probe language match over their empty reducts"};
      long cnt = extras;
      for (long i : relevant) {
        TheoryRef m = family_member(fam, i);
        if (family_excluded(fam, m)) continue;
        if (member_equiv(m)) ++cnt;
      }
      return {Count::Kind::Exact, cnt, "probe-language copies compared; empty-reduct tail misses"};
    }
    case FamilyKind::EmptyLang: {
      int threshold = std::max(q, 1);
      long cnt = extras;
      for (int n : fam.empty_sizes)
        if (!excluded_t0(fam, n) && u.equivalent(empty_structure(n), target, q)) ++cnt;
      if (fam.empty_all_from) {
        int from = *fam.empty_all_from;
        int tail = from;
        while (tail < threshold) tail += fam.empty_step;
        for (int n = from; n < tail; n += fam.empty_step)
          if (!excluded_t0(fam, n) && u.equivalent(empty_structure(n), target, q)) ++cnt;
        if (u.equivalent(empty_structure(tail), target, q))
          return {Count::Kind::Infinite, 0, "every pure set of size at least the rank matches"};
      }
      return {Count::Kind::Exact, cnt, "pure-set classes constant from the rank on"};
    }
    case FamilyKind::Iilu: {
      int mu = fam.modulus;
      int top_mentioned = -1;
      for (const auto& sym : lang.symbols()) {
        if (sym.name.size() < 2 || sym.name[0] != 'Q') continue;
        long v = 0;
        bool ok = true;
        for (std::size_t i = 1; i < sym.name.size() && ok; ++i) {
          ok = sym.name[i] >= '0' && sym.name[i] <= '9';
          if (ok) v = v * 10 + (sym.name[i] - '0');
          if (v > 1'000'000) ok = false;
        }
        if (ok) top_mentioned = std::max(top_mentioned, static_cast<int>(v));
      }
      long cnt = extras;
      for (int t = 0; t < mu; ++t) {
        long i0 = 0;
        while (t + i0 * mu < top_mentioned) ++i0;
        for (long i = 0; i < i0; ++i) {
          TheoryRef m = family_member(fam, i * mu + t);
          if (family_excluded(fam, m)) continue;
          if (member_equiv(m)) ++cnt;
        }
        if (member_equiv(family_member(fam, i0 * mu + t)))
          return {Count::Kind::Infinite, 0,
                  "row " + std::to_string(t) + " matches on every member past the probe language"};
      }
      return {Count::Kind::Exact, cnt, "row tails all miss past the probe language"};
    }
    default: break;
  }
  throw Unsupported("count_equiv: no tail rule for this family kind");
}

}  // namespace

std::string op_tag_name(OpTag op) {
  switch (op) {
    case OpTag::E: return "E";
    case OpTag::P: return "P";
    case OpTag::Pd: return "Pd";
    case OpTag::Pdr: return "Pdr";
  }
  return "?";
}

Count count_satisfying(const FamilyDescriptor& fam, const FormulaPtr& f, const ClosureCaps& caps) {
  require_sentence(f);
  if (!family_infinite(fam)) return count_finite_stream(fam, f, caps);
  switch (fam.kind) {
    case FamilyKind::NCubeSeq: return count_ncube(fam, f, caps);
    case FamilyKind::DisjointRelabel: return count_relabel(fam, f, caps);
    case FamilyKind::EmptyLang: return count_empty_lang(fam, f, caps);
    case FamilyKind::Iilu: return count_iilu(fam, f, caps);
    default: break;
  }
  throw Unsupported("count_satisfying: no tail rule for this family kind");
}

Verdict is_accumulation_point(const FamilyDescriptor& fam, const TheoryRef& t,
                              const ClosureCaps& caps) {
  if (family_contains(fam, t))
    throw PreconditionError("is_accumulation_point: " + t.display +
                            " is a member; the notion concerns outside points");
  // Sentences up to the probe rank are tested; theories with an n-element
  // model need rank n+1 before their size is pinned, so the probe is raised
  // accordingly (otherwise e.g. a single missing pure-set size would pass).
  int q_max = caps.rank;
  if (auto n = finite_model_size(t)) q_max = std::max(q_max, *n + 1);

  if (!family_infinite(fam)) {
    Verdict v;
    v.kind = Verdict::Kind::No;
    v.rank = q_max;
    v.bound = family_member_count(fam);
    v.note = "finite family: no neighborhood meets it in infinitely many members";
    return v;
  }
  Verdict yes;
  yes.kind = Verdict::Kind::BoundedYes;
  yes.rank = q_max;
  yes.bound = caps.probe;
  yes.note = "every probed neighborhood meets the family in infinitely many members";
  std::optional<Signature> prev_lang;
  for (long j = 1; j <= caps.probe; ++j) {
    Signature lang = family_probe_language(fam, j);
    bool fresh_lang = !prev_lang || !(lang == *prev_lang);
    prev_lang = lang;
    if (!fresh_lang && j > 1) continue;
    for (int q = 1; q <= q_max; ++q) {
      // Neighborhoods are judged on EF classes; the characteristic sentence
      // itself is materialized only when needed as a refutation witness.
      Structure target = reduct_to(theory_proxy(t, q, &lang, caps.theory), lang);
      Count c = count_equiv(fam, target, q, lang, caps);
      if (c.infinite()) continue;
      Verdict v;
      v.kind = Verdict::Kind::No;
      v.rank = q;
      v.bound = j;
      try {
        v.witness = characteristic_sentence(t, q, lang, caps.theory);
      } catch (const Unsupported&) {
      }
      v.note = "the rank-" + std::to_string(q) + " neighborhood over the " + std::to_string(j) +
               "-member probe language contains " +
               (c.kind == Count::Kind::AtLeast ? "at least " : "") + std::to_string(c.value) +
               " members";
      return v;
    }
  }
  return yes;
}

namespace {

FamilyDescriptor closure_disjoint_impl(const FamilyDescriptor& fam, OpTag op,
                                       const ClosureCaps& caps) {
  if (!fam.languages_disjoint)
    throw PreconditionError("closure under " + op_tag_name(op) +
                            ": member languages must be pairwise disjoint");
  FamilyDescriptor out = fam;
  std::string suffix = "_cl" + op_tag_name(op);
  if (out.name.size() < suffix.size() ||
      out.name.compare(out.name.size() - suffix.size(), suffix.size(), suffix) != 0)
    out.name += suffix;
  // Only the empty-language theories can appear: a new point must be judged
  // by infinitely many members, almost all of which read any sentence over a
  // language disjoint from their own.  The size spectrum says which ones.
  std::vector<TheoryRef> adds;
  for (int n : fam.spectrum.infinite_multiplicity) adds.push_back(t0_theory(n));
  if (fam.spectrum.sizes_unbounded() || fam.spectrum.infinite_model_members < 0)
    adds.push_back(t0inf_theory());
  for (const auto& t : adds) {
    if (family_contains(out, t)) continue;
    // Additions are certified against the input family; the closure needs no
    // second round (new points judged by the enlarged family reduce to
    // points judged by the original one).
    Verdict v = is_accumulation_point(fam, t, caps);
    if (!v.positive())
      throw PreconditionError("closure: the size spectrum names " + t.display +
                              " but the probe refutes accumulation (" + v.note + ")");
    out = with_member(out, t);
  }
  return out;
}

}  // namespace

FamilyDescriptor closure_E_disjoint(const FamilyDescriptor& fam, const ClosureCaps& caps) {
  return closure_disjoint_impl(fam, OpTag::E, caps);
}

FamilyDescriptor closure_disjoint(const FamilyDescriptor& fam, OpTag op, const ClosureCaps& caps) {
  if (op == OpTag::P)
    throw Unsupported("closure under the general unary-predicate operator is not computed; "
                      "use the disjoint modes");
  return closure_disjoint_impl(fam, op, caps);
}

namespace {

// Try to isolate t within fam: a sentence of t satisfied by exactly one
// member.  Candidates are cheap private-symbol witnesses first, then the
// full diagram (finite members) or a characteristic sentence plus a size
// floor (limit members).
std::optional<FormulaPtr> find_isolating(const FamilyDescriptor& fam, const TheoryRef& t,
                                         const ClosureCaps& caps) {
  std::vector<FormulaPtr> cands;
  Signature lang = family_probe_language(fam, caps.probe);
  auto size_floor = [&]() -> std::optional<FormulaPtr> {
    if (fam.spectrum.sizes_unbounded()) return std::nullopt;
    auto m = fam.spectrum.max_finite_size();
    if (!m) return std::nullopt;
    return size_at_least_sentence(*m + 1);
  };
  switch (t.kind) {
    case TheoryKind::Fin:
      for (std::size_t k = 0; k < t.model->sig.size(); ++k)
        if (!t.model->tables[k].empty()) cands.push_back(exists_tuple_sentence(t.model->sig.at(k)));
      cands.push_back(scott_sentence(*t.model));
      break;
    case TheoryKind::T0:
      cands.push_back(bind_formula(f_and(size_exactly_sentence(t.size), emptiness_sentence(lang))));
      break;
    case TheoryKind::T0Inf: {
      if (auto floor = size_floor())
        cands.push_back(bind_formula(f_and(*floor, emptiness_sentence(lang))));
      break;
    }
    case TheoryKind::Limit: {
      // The rank-caps.rank neighborhood, counted on EF classes (cheap); the
      // sentence is materialized only if it actually isolates.
      try {
        Structure target = reduct_to(theory_proxy(t, caps.rank, &lang, caps.theory), lang);
        Count c = count_equiv(fam, target, caps.rank, lang, caps);
        if (c.kind == Count::Kind::Exact && c.value == 1)
          return characteristic_sentence(t, caps.rank, lang, caps.theory);
        FormulaPtr sigma = characteristic_sentence(t, caps.rank, lang, caps.theory);
        if (!family_infinite(fam))
          if (auto floor = size_floor()) cands.push_back(bind_formula(f_and(sigma, *floor)));
      } catch (const Unsupported&) {
        break;
      }
      break;
    }
  }
  for (const auto& cand : cands) {
    Count c = count_satisfying(fam, cand, caps);
    if (c.kind == Count::Kind::Exact && c.value == 1 && theory_contains(t, cand, caps.theory))
      return cand;
  }
  return std::nullopt;
}

}  // namespace

LeastSetResult least_generating_set(const FamilyDescriptor& fam, const ClosureCaps& caps) {
  LeastSetResult r;
  if (fam.declared_dense) {
    r.exists = false;
    auto probed = probe_members(fam, 1);
    if (!probed.empty()) r.blocker = probed.front();
    r.note = "every member is an accumulation point of the others by construction; "
             "any generating subset stays redundant";
    return r;
  }
  FamilyDescriptor least = fam;
  for (const auto& t : probe_members(fam, caps.probe)) {
    if (auto phi = find_isolating(fam, t, caps)) {
      r.isolated.push_back(t.display);
      r.isolating.push_back(*phi);
      continue;
    }
    FamilyDescriptor rest = without_member(fam, t);
    Verdict v = is_accumulation_point(rest, t, caps);
    if (!v.positive()) {
      r.exists = false;
      r.blocker = t;
      r.note = "member " + t.display + " is neither isolated nor an accumulation point of the rest";
      return r;
    }
    r.limit_members.push_back(t.display);
    least = without_member(least, t);
  }
  r.exists = true;
  r.least = std::move(least);
  r.note = family_infinite(fam)
               ? "isolation checked on the first " + std::to_string(caps.probe) +
                     " stream members and all explicit members"
               : "isolation checked on every member";
  return r;
}

ClassifyReport classify(const FamilyDescriptor& fam, OpTag op, const ClosureCaps& caps) {
  ClassifyReport r;
  const CardinalitySpectrum& sp = fam.spectrum;
  r.escapes_fin = sp.sizes_unbounded();
  if (r.escapes_fin)
    r.notes.push_back("member sizes are unbounded: combined models exceed every finite size bound");
  r.closure_avoids_fin = !sp.any_finite_sizes() && sp.infinite_model_members != 0;
  if (r.closure_avoids_fin)
    r.notes.push_back("no member has a finite model: the closure meets no finitely-satisfiable theory");

  bool bounded = !sp.sizes_unbounded();
  if (bounded && op != OpTag::E && family_infinite(fam)) {
    bounded = false;
    r.notes.push_back("unary-predicate closure of an infinite family escapes every common size bound "
                      "(mode-specific failure of the bounded rule)");
  }
  if (bounded && sp.infinite_model_members == 0) {
    r.size_bound = sp.max_finite_size();
    r.stays_small.kind = Verdict::Kind::Yes;
    r.stays_small.note = "all members are finite with a common size bound";
    if (r.size_bound) r.stays_small.bound = *r.size_bound;
    return r;
  }
  // Members without finite models: combinations stay manageable only if each
  // such member is itself omega-categorical; probe what we can see.
  for (const auto& t : probe_members(fam, caps.probe)) {
    if (finite_model_size(t)) continue;
    if (omega_categorical(t)) continue;
    r.stays_small.kind = Verdict::Kind::No;
    r.stays_small.note = "member " + t.display + " is neither finite nor omega-categorical";
    return r;
  }
  r.stays_small.kind = Verdict::Kind::BoundedYes;
  r.stays_small.rank = caps.rank;
  r.stays_small.bound = caps.probe;
  r.stays_small.note = "every probed member is finite or omega-categorical";
  return r;
}

Verdict finite_approximable(const TheoryRef& t, int q, int N, const ClosureCaps& caps) {
  if (q < 0) throw PreconditionError("finite_approximable: negative rank");
  if (N < 1) throw PreconditionError("finite_approximable: size bound must be >= 1");
  if (t.kind == TheoryKind::Limit && t.generator == "axiom" && t.forces_infinity_declared) {
    Signature sig = inferred_signature(t.axioms);
    auto fv = forces_infinity(t.axioms, sig, N, caps.finder);
    if (fv.refuted)
      throw PreconditionError("finite_approximable: axiom declared infinity-forcing has a model of size " +
                              std::to_string(fv.n));
    Verdict v;
    v.kind = Verdict::Kind::No;
    v.rank = quantifier_rank(t.axioms);
    v.bound = N;
    v.witness = t.axioms;
    v.note = "the declared axiom is consistent but has no model up to the bound";
    return v;
  }
  // A model of the rank-q characteristic sentence satisfies every rank-<=q
  // consequence of t at once.
  Signature lang;
  switch (t.kind) {
    case TheoryKind::Fin: lang = t.model->sig; break;
    case TheoryKind::T0:
    case TheoryKind::T0Inf: break;
    case TheoryKind::Limit:
      if (t.generator == "omega_cube") lang = Signature{{Symbol{"R", 2}}};
      else if (t.generator == "dlo") lang = Signature{{Symbol{t.order_symbol, 2}}};
      else throw Unsupported("finite_approximable: no characteristic sentence for " + t.display);
      break;
  }
  FormulaPtr sigma = characteristic_sentence(t, q, lang, caps.theory);
  for (int n = 1; n <= N; ++n) {
    auto models = find_models(sigma, lang, n, 1, caps.finder);
    if (!models.empty()) {
      Verdict v;
      v.kind = Verdict::Kind::BoundedYes;
      v.rank = q;
      v.bound = n;
      v.note = "a " + std::to_string(n) +
               "-element model realizes the full rank-" + std::to_string(q) + " description";
      return v;
    }
  }
  throw CapExceeded("finite_approximable: no model of the rank-" + std::to_string(q) +
                    " description within size " + std::to_string(N));
}

Prop33Family build_prop33_family(const Structure& base, int count) {
  base.validate();
  if (base.size < 1) throw PreconditionError("build_prop33_family: base must be nonempty");
  if (count < 2) throw PreconditionError("build_prop33_family: count must be >= 2");
  Prop33Family out;
  for (int i = 0; i < count; ++i) out.members.push_back(prop33_member(base, count, i));

  out.fam.name = base.name + "_tagged";
  out.fam.kind = FamilyKind::Prop33;
  out.fam.base = base;
  out.fam.count = count;
  out.fam.spectrum.infinite_multiplicity = {count * base.size};

  // One extra base copy outside every P_i, carrying the tag symbols as
  // equality so the extent stays a reduct-of-base.
  Structure extra = base;
  extra.name = base.name + "_out";
  for (int j = 0; j < count; ++j) {
    extra.sig.add({"E" + std::to_string(j), 2});
    Table diag;
    for (int v = 0; v < extra.size; ++v) table_insert(diag, Tuple{v, v});
    extra.tables.push_back(std::move(diag));
  }
  extra.validate();
  // With a one-element base the A_i are pairwise isomorphic (every tag
  // degenerates to equality); only the repeat-allowing mode accepts that.
  PMode mode = base.size == 1 ? PMode::Repeat : PMode::Disjoint;
  out.assembly = p_combination(out.members, mode, extra);
  return out;
}

}  // namespace relic

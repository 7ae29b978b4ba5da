#include "relic/cardinalities.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "relic/base.hpp"

namespace relic {

namespace {

constexpr int kSemigroupBoundCap = 1'000'000;

std::vector<int> sorted_unique(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

void check_positive(const std::vector<int>& v, const char* who) {
  for (int n : v)
    if (n < 1) throw PreconditionError(std::string(who) + ": elements must be >= 1");
}

std::string join_ints(const std::vector<int>& v, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(v[i]);
  }
  return out;
}

// Membership before the `minus` removals.
bool form_contains(const CardinalitySet& s, int n) {
  switch (s.form) {
    case CardinalitySet::Form::Empty:
      return false;
    case CardinalitySet::Form::FiniteSet:
      return std::binary_search(s.elems.begin(), s.elems.end(), n);
    case CardinalitySet::Form::Progressions:
      for (int k : s.gens)
        if (n % k == 0) return true;
      return false;
    case CardinalitySet::Form::SumClosure: {
      std::vector<char> reach(static_cast<std::size_t>(n) + 1, 0);
      for (int m = 1; m <= n; ++m)
        for (int k : s.gens)
          if (k <= m && (k == m || reach[static_cast<std::size_t>(m - k)])) {
            reach[static_cast<std::size_t>(m)] = 1;
            break;
          }
      return reach[static_cast<std::size_t>(n)] != 0;
    }
    case CardinalitySet::Form::Complement:
      return !s.inner->contains(n);
  }
  throw PreconditionError("cardinality set: unknown form");
}

}  // namespace

bool CardinalitySet::contains(int n) const {
  if (n < 1) return false;
  if (std::find(minus.begin(), minus.end(), n) != minus.end()) return false;
  return form_contains(*this, n);
}

std::vector<int> CardinalitySet::up_to(int bound) const {
  std::vector<int> out;
  if (bound < 1) return out;
  if (form == Form::SumClosure) {
    std::vector<char> reach(static_cast<std::size_t>(bound) + 1, 0);
    for (int m = 1; m <= bound; ++m)
      for (int k : gens)
        if (k <= m && (k == m || reach[static_cast<std::size_t>(m - k)])) {
          reach[static_cast<std::size_t>(m)] = 1;
          break;
        }
    for (int m = 1; m <= bound; ++m)
      if (reach[static_cast<std::size_t>(m)] &&
          std::find(minus.begin(), minus.end(), m) == minus.end())
        out.push_back(m);
    return out;
  }
  for (int m = 1; m <= bound; ++m)
    if (contains(m)) out.push_back(m);
  return out;
}

std::string CardinalitySet::render() const {
  std::string body;
  switch (form) {
    case Form::Empty:
      body = "{}";
      break;
    case Form::FiniteSet:
      body = "{" + join_ints(elems, ",") + "}";
      break;
    case Form::Progressions: {
      for (std::size_t i = 0; i < gens.size(); ++i) {
        if (i) body += " u ";
        body += gens[i] == 1 ? "Z+" : std::to_string(gens[i]) + "Z+";
      }
      break;
    }
    case Form::SumClosure:
      if (gens.size() == 1)
        body = gens[0] == 1 ? "Z+" : std::to_string(gens[0]) + "Z+";
      else
        body = "<" + join_ints(gens, ",") + ">";
      break;
    case Form::Complement: {
      std::string in = inner->render();
      if (in.find(' ') != std::string::npos) in = "(" + in + ")";
      body = "Z+ \\ " + in;
      break;
    }
  }
  if (!minus.empty()) body += " \\ {" + join_ints(minus, ",") + "}";
  return body;
}

CardinalitySet card_empty() { return {}; }

CardinalitySet card_finite(std::vector<int> elems) {
  elems = sorted_unique(std::move(elems));
  check_positive(elems, "card_finite");
  CardinalitySet s;
  if (elems.empty()) return s;
  s.form = CardinalitySet::Form::FiniteSet;
  s.elems = std::move(elems);
  return s;
}

CardinalitySet card_progressions(std::vector<int> ks) {
  ks = sorted_unique(std::move(ks));
  check_positive(ks, "card_progressions");
  if (ks.empty()) throw PreconditionError("card_progressions: no generators");
  CardinalitySet s;
  s.form = CardinalitySet::Form::Progressions;
  s.gens = std::move(ks);
  return s;
}

CardinalitySet card_sum_closure(std::vector<int> ks) {
  ks = sorted_unique(std::move(ks));
  check_positive(ks, "card_sum_closure");
  if (ks.empty()) throw PreconditionError("card_sum_closure: no generators");
  CardinalitySet s;
  s.form = CardinalitySet::Form::SumClosure;
  s.gens = std::move(ks);
  return s;
}

CardinalitySet card_zplus() { return card_progressions({1}); }

CardinalitySet card_cofinite(std::vector<int> missing) {
  return card_complement(card_finite(std::move(missing)));
}

CardinalitySet card_complement(const CardinalitySet& y) {
  if (y.minus.empty()) {
    bool has_one = std::find(y.gens.begin(), y.gens.end(), 1) != y.gens.end();
    if (y.form == CardinalitySet::Form::Empty) return card_zplus();
    if ((y.form == CardinalitySet::Form::Progressions ||
         y.form == CardinalitySet::Form::SumClosure) &&
        has_one)
      return card_empty();
    if (y.form == CardinalitySet::Form::Complement) return CardinalitySet(*y.inner);
  }
  CardinalitySet s;
  s.form = CardinalitySet::Form::Complement;
  s.inner = std::make_shared<const CardinalitySet>(y);
  return s;
}

CardinalitySet card_minus(CardinalitySet base, std::vector<int> remove) {
  remove = sorted_unique(std::move(remove));
  check_positive(remove, "card_minus");
  if (base.form == CardinalitySet::Form::FiniteSet) {
    std::erase_if(base.elems, [&](int n) {
      return std::binary_search(remove.begin(), remove.end(), n);
    });
    if (base.elems.empty() && base.minus.empty()) return card_empty();
    return base;
  }
  for (int n : remove)
    if (form_contains(base, n) &&
        std::find(base.minus.begin(), base.minus.end(), n) == base.minus.end())
      base.minus.push_back(n);
  std::sort(base.minus.begin(), base.minus.end());
  return base;
}

bool card_equal_up_to(const CardinalitySet& a, const CardinalitySet& b, int bound) {
  return a.up_to(bound) == b.up_to(bound);
}

namespace {

// The family's size set as a symbolic cardinality set.
CardinalitySet family_c(const FamilyDescriptor& fam) {
  const CardinalitySpectrum& sp = fam.spectrum;
  std::vector<int> listed;
  for (const auto& [n, cnt] : sp.finite) listed.push_back(n);
  for (int n : sp.infinite_multiplicity) listed.push_back(n);
  listed = sorted_unique(std::move(listed));
  if (sp.all_sizes_from) {
    int from = *sp.all_sizes_from;
    std::vector<int> missing;
    for (int n = 1; n < from; ++n)
      if (!std::binary_search(listed.begin(), listed.end(), n)) missing.push_back(n);
    return card_cofinite(std::move(missing));
  }
  if (sp.unbounded_sizes) {
    if (fam.kind == FamilyKind::EmptyLang && fam.empty_all_from && fam.empty_sizes.empty() &&
        *fam.empty_all_from == fam.empty_step)
      return card_progressions({fam.empty_step});
    throw Unsupported("card_profile: the family's size set has no represented symbolic form");
  }
  return card_finite(std::move(listed));
}

// Fixed block size of the families whose combined models assemble their
// never-tagged parts from whole member blocks.
std::optional<int> block_size(const FamilyDescriptor& fam) {
  switch (fam.kind) {
    case FamilyKind::DisjointRelabel:
    case FamilyKind::Prop33:
      return fam.base->size;
    case FamilyKind::Iilu:
      return fam.param_n;
    default:
      return std::nullopt;
  }
}

}  // namespace

CardProfile card_profile(const FamilyDescriptor& fam, OpTag op, const ClosureCaps& caps) {
  (void)caps;
  CardProfile p;
  p.op = op;
  p.c = family_c(fam);
  if (op == OpTag::E) return p;  // every element is tagged: no never-tagged part
  bool infinite = family_infinite(fam) || fam.kind == FamilyKind::Prop33;
  if (!infinite) return p;  // finitely many blocks: keep the extra part empty
  if (fam.kind == FamilyKind::EmptyLang) {
    p.c_hat = card_zplus();
    p.c_bar = card_complement(p.c);
    return p;
  }
  if (auto k = block_size(fam)) {
    p.c_hat = card_sum_closure({*k});
    p.c_bar = card_minus(p.c_hat, p.c.up_to(*k * 64));
    return p;
  }
  throw Unsupported("card_profile: no block rule for this family shape under " + op_tag_name(op));
}

FamilyDescriptor complement_family(const CardinalitySet& y) {
  if (y.minus.empty()) {
    if ((y.form == CardinalitySet::Form::Progressions ||
         y.form == CardinalitySet::Form::SumClosure) &&
        y.gens.size() == 1) {
      int k = y.gens[0];
      return empty_lang_family("sizes_" + std::to_string(k) + "zplus", {}, k, k);
    }
    if (y.form == CardinalitySet::Form::Complement &&
        y.inner->form == CardinalitySet::Form::FiniteSet && y.inner->minus.empty()) {
      const std::vector<int>& miss = y.inner->elems;
      int from = miss.empty() ? 1 : miss.back() + 1;
      std::vector<int> listed;
      for (int n = 1; n < from; ++n)
        if (!std::binary_search(miss.begin(), miss.end(), n)) listed.push_back(n);
      return empty_lang_family("sizes_cofinite", std::move(listed), from, 1);
    }
  }
  throw PreconditionError(
      "complement_family: Y must be symbolically infinite (one progression kZ+, a cofinite set, "
      "or Z+)");
}

std::vector<int> semigroup_set(const std::vector<int>& gens, int bound) {
  std::vector<int> k = sorted_unique(gens);
  check_positive(k, "semigroup_set");
  if (k.empty()) throw PreconditionError("semigroup_set: no generators");
  if (bound < 0 || bound > kSemigroupBoundCap)
    throw CapExceeded("semigroup_set: bound must be in [0, 10^6]");
  std::vector<char> reach(static_cast<std::size_t>(bound) + 1, 0);
  for (int m = 1; m <= bound; ++m)
    for (int g : k)
      if (g <= m && (g == m || reach[static_cast<std::size_t>(m - g)])) {
        reach[static_cast<std::size_t>(m)] = 1;
        break;
      }
  std::vector<int> out;
  for (int m = 1; m <= bound; ++m)
    if (reach[static_cast<std::size_t>(m)]) out.push_back(m);
  return out;
}

RecoverResult recover_generators(const std::vector<int>& sample, int bound) {
  if (bound < 1 || bound > kSemigroupBoundCap)
    throw CapExceeded("recover_generators: bound must be in [1, 10^6]");
  std::vector<int> s = sorted_unique(sample);
  check_positive(s, "recover_generators");
  RecoverResult res;
  if (s.empty()) {
    res.reason = "empty sample: no semigroup has empty membership";
    return res;
  }
  if (s.back() > bound) {
    res.reason = "sample element " + std::to_string(s.back()) + " exceeds the bound";
    return res;
  }
  // Greedy: walk upward; any sample element not yet generated must itself be
  // a generator (sums of smaller generators cannot produce it later).
  std::vector<int> k;
  std::vector<char> reach(static_cast<std::size_t>(bound) + 1, 0);
  for (int m : s) {
    if (reach[static_cast<std::size_t>(m)]) continue;
    k.push_back(m);
    for (int v = m; v <= bound; ++v)
      if (v == m || (v > m && reach[static_cast<std::size_t>(v - m)]))
        reach[static_cast<std::size_t>(v)] = 1;
  }
  // reach now holds semigroup_set(k, bound); it always covers the sample, so
  // the only possible mismatch is an implied element missing from the sample.
  std::set<int> in_sample(s.begin(), s.end());
  for (int m = 1; m <= bound; ++m) {
    if (!reach[static_cast<std::size_t>(m)] || in_sample.count(m)) continue;
    res.reason = std::to_string(m) + " is a sum of forced generators {" + join_ints(k, ",") +
                 "} but missing from the sample";
    return res;
  }
  res.generators = std::move(k);
  res.reason = "consistent";
  return res;
}

PinfValidation validate_complete_pinf(const std::vector<int>& k, bool complete) {
  std::vector<int> s = sorted_unique(k);
  check_positive(s, "validate_complete_pinf");
  if (s.empty()) throw PreconditionError("validate_complete_pinf: empty set");
  PinfValidation out;
  if (!complete) {
    out.ok = true;
    out.k0 = 0;
    out.reason = "incomplete profiles realize arbitrary finite generator sets";
    return out;
  }
  int k0 = s.front();
  for (int m : s)
    if (m % k0 != 0) {
      out.ok = false;
      out.k0 = 0;
      out.reason = std::to_string(m) + " is not a multiple of the least member " +
                   std::to_string(k0);
      return out;
    }
  out.ok = true;
  out.k0 = k0;
  out.reason = "every member is a multiple of the least";
  return out;
}

SISelector SISelector::outside(std::vector<std::string> preds) {
  SISelector s;
  s.kind = Kind::Outside;
  s.predicates = std::move(preds);
  return s;
}

SISelector SISelector::type_class_of(int cls) {
  SISelector s;
  s.kind = Kind::TypeClass;
  s.type_class = cls;
  return s;
}

bool SIRelation::symmetric() const {
  for (std::size_t i = 0; i < rel.size(); ++i)
    for (std::size_t j = 0; j < rel.size(); ++j)
      if (rel[i][j] != rel[j][i]) return false;
  return true;
}

bool SIRelation::is_equivalence() const { return symmetric(); }

std::vector<std::vector<int>> SIRelation::classes() const {
  if (!is_equivalence())
    throw PreconditionError("SIRelation::classes: the relation is not symmetric");
  std::vector<std::vector<int>> out;
  std::vector<char> done(selected.size(), 0);
  for (std::size_t i = 0; i < selected.size(); ++i) {
    if (done[i]) continue;
    std::vector<int> cls;
    for (std::size_t j = 0; j < selected.size(); ++j)
      if (rel[i][j]) {
        cls.push_back(selected[j]);
        done[j] = 1;
      }
    out.push_back(std::move(cls));
  }
  return out;
}

std::vector<int> component_ids(const Structure& s) {
  std::vector<int> parent(static_cast<std::size_t>(s.size));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int a) {
    while (parent[static_cast<std::size_t>(a)] != a) {
      parent[static_cast<std::size_t>(a)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
      a = parent[static_cast<std::size_t>(a)];
    }
    return a;
  };
  for (const auto& table : s.tables)
    for (const auto& tup : table)
      for (std::size_t i = 1; i < tup.size(); ++i) {
        int a = find(tup[0]), b = find(tup[i]);
        if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
      }
  std::vector<int> out(static_cast<std::size_t>(s.size));
  for (int v = 0; v < s.size; ++v) out[static_cast<std::size_t>(v)] = find(v);
  return out;
}

SIRelation si_relation(const Structure& s, const SISelector& selector, int q,
                       const RankTypeCaps& caps) {
  s.validate();
  if (q < 0) throw PreconditionError("si_relation: q must be >= 0");
  if (s.size < 1) throw PreconditionError("si_relation: empty universe");

  RankTypePartition p1 = rank_types(s, 1, q, caps);
  RankTypePartition p2 = rank_types(s, 2, q, caps);
  std::vector<int> comp = component_ids(s);

  std::vector<int> selected;
  switch (selector.kind) {
    case SISelector::Kind::All:
      for (int v = 0; v < s.size; ++v) selected.push_back(v);
      break;
    case SISelector::Kind::Outside: {
      std::vector<char> tagged(static_cast<std::size_t>(s.size), 0);
      for (const std::string& name : selector.predicates) {
        if (!s.sig.has(name)) continue;  // absent symbol: empty table
        std::size_t idx = s.sig.index_of(name);
        if (s.sig.arity(name) != 1)
          throw PreconditionError("si_relation: selector predicate " + name + " is not unary");
        for (const auto& tup : s.tables[idx])
          tagged[static_cast<std::size_t>(tup[0])] = 1;
      }
      for (int v = 0; v < s.size; ++v)
        if (!tagged[static_cast<std::size_t>(v)]) selected.push_back(v);
      break;
    }
    case SISelector::Kind::TypeClass: {
      if (selector.type_class < 0 || selector.type_class >= p1.num_classes)
        throw PreconditionError("si_relation: type class out of range");
      for (int v = 0; v < s.size; ++v)
        if (p1.class_of[static_cast<std::size_t>(v)] == selector.type_class) selected.push_back(v);
      break;
    }
  }
  if (selected.empty()) throw PreconditionError("si_relation: selector picks no elements");

  auto pair_class = [&](int a, int b) {
    return p2.class_of[static_cast<std::size_t>(a) * static_cast<std::size_t>(s.size) +
                       static_cast<std::size_t>(b)];
  };

  SIRelation out;
  out.structure_name = s.name;
  out.q = q;
  out.selected = selected;
  const std::size_t m = selected.size();
  out.rel.assign(m, std::vector<bool>(m, false));
  for (std::size_t i = 0; i < m; ++i) {
    int a = selected[i];
    for (std::size_t j = 0; j < m; ++j) {
      int target = pair_class(a, selected[j]);
      bool inside = true;
      for (std::size_t jj = 0; jj < m && inside; ++jj)
        if (pair_class(a, selected[jj]) == target && comp[static_cast<std::size_t>(selected[jj])] !=
                                                         comp[static_cast<std::size_t>(a)])
          inside = false;
      out.rel[i][j] = inside;
    }
  }
  // Reflexive-transitive closure.
  for (std::size_t i = 0; i < m; ++i) out.rel[i][i] = true;
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t i = 0; i < m; ++i) {
      if (!out.rel[i][k]) continue;
      for (std::size_t j = 0; j < m; ++j)
        if (out.rel[k][j]) out.rel[i][j] = true;
    }
  return out;
}

CardinalitySet chat_from_si_classes(const std::vector<int>& class_sizes) {
  std::vector<int> k = sorted_unique(class_sizes);
  check_positive(k, "chat_from_si_classes");
  if (k.empty()) throw PreconditionError("chat_from_si_classes: no classes");
  return card_sum_closure(std::move(k));
}

bool chat_d_equals_dr(const FamilyDescriptor& fam, const ClosureCaps& caps, int bound) {
  CardProfile d = card_profile(fam, OpTag::Pd, caps);
  CardProfile dr = card_profile(fam, OpTag::Pdr, caps);
  return card_equal_up_to(d.c_hat, dr.c_hat, bound);
}

}  // namespace relic

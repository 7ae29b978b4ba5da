#include "relic/iso.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "relic/canonical.hpp"

namespace relic {

namespace {

// Reorders/renames b's symbols to a's signature ("name matching"): by name
// when the name sets coincide, positionally when only arities agree.
Structure align_to(const Structure& a, const Structure& b) {
  auto names = [](const Signature& sig) {
    std::set<std::string> out;
    for (const auto& sym : sig.symbols()) out.insert(sym.name);
    return out;
  };
  Structure out;
  out.name = b.name;
  out.size = b.size;
  out.sig = a.sig;
  if (names(a.sig) == names(b.sig)) {
    for (const auto& sym : a.sig.symbols()) {
      if (b.sig.arity(sym.name) != sym.arity)
        throw PreconditionError("isomorphism: arities differ for symbol " + sym.name);
      out.tables.push_back(b.tables[b.sig.index_of(sym.name)]);
    }
    return out;
  }
  if (!Signature::arity_compatible(a.sig, b.sig))
    throw PreconditionError("isomorphism: signatures do not match by name or position");
  out.tables = b.tables;
  return out;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n) : parent(n) {
    for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<int>(i);
  }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }
};

// Backtracking matcher between two aligned structures (possibly the same one).
class MatchEngine {
 public:
  MatchEngine(const Structure& a, const Structure& b, const IsoCaps& caps)
      : a_(a), b_(b), caps_(caps) {
    const Structure sum = disjoint_sum(a, b);
    const auto colors = wl_vertex_colors(sum);
    color_a_.assign(colors.begin(), colors.begin() + a.size);
    color_b_.assign(colors.begin() + a.size, colors.end());
    incidence_a_ = incidence(a);
    incidence_b_ = incidence(b);
    map_.assign(static_cast<std::size_t>(a.size), -1);
    inv_.assign(static_cast<std::size_t>(b.size), -1);
  }

  // Returns a full map extending `prescribed`, or nullopt (exhaustive).
  std::optional<std::vector<int>> run(const std::vector<std::pair<int, int>>& prescribed) {
    for (auto [u, v] : prescribed) {
      if (u < 0 || u >= a_.size || v < 0 || v >= b_.size)
        throw PreconditionError("prescribed map element out of range");
      if (map_[static_cast<std::size_t>(u)] == v) continue;
      if (!try_assign(u, v)) return std::nullopt;
    }
    order_.clear();
    for (int u = 0; u < a_.size; ++u)
      if (map_[static_cast<std::size_t>(u)] == -1) order_.push_back(u);
    // Most-constrained first: few candidate images, then label.
    std::stable_sort(order_.begin(), order_.end(), [&](int x, int y) {
      return candidate_count(x) < candidate_count(y);
    });
    nodes_ = 0;
    if (search(0)) {
      std::vector<int> out(map_);
      return out;
    }
    return std::nullopt;
  }

 private:
  using Incidence = std::vector<std::vector<std::pair<std::size_t, std::size_t>>>;

  static Incidence incidence(const Structure& s) {
    Incidence inc(static_cast<std::size_t>(s.size));
    for (std::size_t sym = 0; sym < s.sig.size(); ++sym)
      for (std::size_t ti = 0; ti < s.tables[sym].size(); ++ti) {
        std::set<int> support(s.tables[sym][ti].begin(), s.tables[sym][ti].end());
        for (int v : support) inc[static_cast<std::size_t>(v)].push_back({sym, ti});
      }
    return inc;
  }

  std::size_t candidate_count(int u) const {
    std::size_t cnt = 0;
    for (int v = 0; v < b_.size; ++v)
      if (color_b_[static_cast<std::size_t>(v)] == color_a_[static_cast<std::size_t>(u)]) ++cnt;
    return cnt;
  }

  bool consistent_after(int u, int v) const {
    // Tuples of a containing u with a fully mapped support must land in b.
    for (auto [sym, ti] : incidence_a_[static_cast<std::size_t>(u)]) {
      const Tuple& t = a_.tables[sym][ti];
      Tuple img(t.size());
      bool complete = true;
      for (std::size_t i = 0; i < t.size(); ++i) {
        const int m = map_[static_cast<std::size_t>(t[i])];
        if (m == -1) {
          complete = false;
          break;
        }
        img[i] = m;
      }
      if (complete && !b_.holds(sym, img)) return false;
    }
    // And conversely for tuples of b containing v.
    for (auto [sym, ti] : incidence_b_[static_cast<std::size_t>(v)]) {
      const Tuple& t = b_.tables[sym][ti];
      Tuple pre(t.size());
      bool complete = true;
      for (std::size_t i = 0; i < t.size(); ++i) {
        const int m = inv_[static_cast<std::size_t>(t[i])];
        if (m == -1) {
          complete = false;
          break;
        }
        pre[i] = m;
      }
      if (complete && !a_.holds(sym, pre)) return false;
    }
    return true;
  }

  bool try_assign(int u, int v) {
    if (map_[static_cast<std::size_t>(u)] != -1 || inv_[static_cast<std::size_t>(v)] != -1)
      return false;
    if (color_a_[static_cast<std::size_t>(u)] != color_b_[static_cast<std::size_t>(v)])
      return false;
    map_[static_cast<std::size_t>(u)] = v;
    inv_[static_cast<std::size_t>(v)] = u;
    if (consistent_after(u, v)) return true;
    map_[static_cast<std::size_t>(u)] = -1;
    inv_[static_cast<std::size_t>(v)] = -1;
    return false;
  }

  void unassign(int u) {
    const int v = map_[static_cast<std::size_t>(u)];
    map_[static_cast<std::size_t>(u)] = -1;
    inv_[static_cast<std::size_t>(v)] = -1;
  }

  bool search(std::size_t depth) {
    if (depth == order_.size()) return true;
    if (++nodes_ > caps_.node_cap) throw CapExceeded("isomorphism search: node cap exceeded");
    const int u = order_[depth];
    for (int v = 0; v < b_.size; ++v) {
      if (!try_assign(u, v)) continue;
      if (search(depth + 1)) return true;
      unassign(u);
    }
    return false;
  }

  const Structure& a_;
  const Structure& b_;
  IsoCaps caps_;
  std::vector<int> color_a_, color_b_;
  Incidence incidence_a_, incidence_b_;
  std::vector<int> map_, inv_;
  std::vector<int> order_;
  long nodes_ = 0;
};

}  // namespace

std::optional<std::vector<int>> find_isomorphism(const Structure& a, const Structure& b,
                                                 const IsoCaps& caps) {
  a.validate();
  b.validate();
  const Structure b_aligned = align_to(a, b);
  if (a.size != b.size) return std::nullopt;
  for (std::size_t i = 0; i < a.sig.size(); ++i)
    if (a.tables[i].size() != b_aligned.tables[i].size()) return std::nullopt;
  MatchEngine engine(a, b_aligned, caps);
  return engine.run({});
}

bool isomorphic(const Structure& a, const Structure& b, const IsoCaps& caps) {
  return find_isomorphism(a, b, caps).has_value();
}

std::optional<std::vector<int>> find_automorphism(
    const Structure& s, const std::vector<std::pair<int, int>>& prescribed, const IsoCaps& caps) {
  s.validate();
  MatchEngine engine(s, s, caps);
  return engine.run(prescribed);
}

namespace {

OrbitPartition orbits_by_pointing(const Structure& s, int n) {
  const std::size_t count = tuple_pow(s.size, n);
  std::string prefix = "_pt";
  while (true) {
    bool clash = false;
    for (int i = 0; i < n; ++i)
      if (s.sig.has(prefix + std::to_string(i))) clash = true;
    if (!clash) break;
    prefix += "_";
  }
  OrbitPartition part;
  part.n = n;
  part.orbit_of.assign(count, -1);
  std::map<std::vector<std::uint8_t>, int> seen;
  Tuple t;
  for (std::size_t i = 0; i < count; ++i) {
    tuple_decode(i, s.size, n, t);
    Structure pointed = s;
    for (int k = 0; k < n; ++k) {
      pointed.sig.add({prefix + std::to_string(k), 1});
      pointed.tables.push_back({{t[static_cast<std::size_t>(k)]}});
    }
    auto cf = canonical_form(pointed);
    auto [it, fresh] = seen.emplace(std::move(cf.bytes), part.num_orbits);
    if (fresh) {
      part.representatives.push_back(t);
      ++part.num_orbits;
    }
    part.orbit_of[i] = it->second;
  }
  return part;
}

OrbitPartition orbits_by_search(const Structure& s, int n, const IsoCaps& caps) {
  const std::size_t count = tuple_pow(s.size, n);
  const auto blocks = wl_partition(s, n, -1, RefineCaps{caps.max_tuples});
  UnionFind uf(count);

  // Applies sigma to every tuple, merging each with its image.
  auto apply = [&](const std::vector<int>& sigma) {
    Tuple t, img(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < count; ++i) {
      tuple_decode(i, s.size, n, t);
      for (int k = 0; k < n; ++k)
        img[static_cast<std::size_t>(k)] = sigma[static_cast<std::size_t>(t[static_cast<std::size_t>(k)])];
      uf.unite(static_cast<int>(i), static_cast<int>(tuple_encode(img, s.size)));
    }
  };

  std::vector<std::vector<std::size_t>> members(
      static_cast<std::size_t>(blocks.num_classes));
  for (std::size_t i = 0; i < count; ++i)
    members[static_cast<std::size_t>(blocks.class_of[i])].push_back(i);

  Tuple rep_t, t;
  for (const auto& block : members) {
    std::vector<std::size_t> subreps;
    for (std::size_t idx : block) {
      bool joined = false;
      for (std::size_t r : subreps) {
        if (uf.find(static_cast<int>(idx)) == uf.find(static_cast<int>(r))) {
          joined = true;
          break;
        }
        tuple_decode(r, s.size, n, rep_t);
        tuple_decode(idx, s.size, n, t);
        std::vector<std::pair<int, int>> pins;
        for (int k = 0; k < n; ++k)
          pins.push_back({rep_t[static_cast<std::size_t>(k)], t[static_cast<std::size_t>(k)]});
        if (auto sigma = find_automorphism(s, pins, caps)) {
          apply(*sigma);
          joined = true;
          break;
        }
      }
      if (!joined) subreps.push_back(idx);
    }
  }

  OrbitPartition part;
  part.n = n;
  part.orbit_of.assign(count, -1);
  std::map<int, int> root_to_id;
  Tuple rt;
  for (std::size_t i = 0; i < count; ++i) {
    const int root = uf.find(static_cast<int>(i));
    auto [it, fresh] = root_to_id.emplace(root, part.num_orbits);
    if (fresh) {
      tuple_decode(i, s.size, n, rt);
      part.representatives.push_back(rt);
      ++part.num_orbits;
    }
    part.orbit_of[i] = it->second;
  }
  return part;
}

}  // namespace

OrbitPartition automorphism_orbits(const Structure& s, int n, const IsoCaps& caps) {
  if (n < 1) throw PreconditionError("automorphism_orbits: n must be >= 1");
  s.validate();
  const std::size_t count = tuple_pow(s.size, n);
  if (count > caps.max_tuples)
    throw CapExceeded("automorphism_orbits: size^n exceeds cap");
  if (s.size <= CanonCaps{}.max_size) return orbits_by_pointing(s, n);
  return orbits_by_search(s, n, caps);
}

}  // namespace relic

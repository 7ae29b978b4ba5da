#include "relic/lang_uniform.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <utility>

#include "relic/base.hpp"

namespace relic {

Structure swap_tables(const Structure& s, int i, int j) {
  int m = (int)s.sig.size();
  if (i < 0 || i >= m || j < 0 || j >= m)
    throw PreconditionError("swap_tables: symbol index out of range");
  if (s.sig.at(i).arity != s.sig.at(j).arity)
    throw PreconditionError("swap_tables: arity mismatch");
  Structure out = s;
  std::swap(out.tables[i], out.tables[j]);
  return out;
}

namespace {

std::map<int, std::vector<int>> symbols_by_arity(const Structure& s) {
  std::map<int, std::vector<int>> by;
  for (int i = 0; i < (int)s.sig.size(); ++i) by[s.sig.at(i).arity].push_back(i);
  return by;
}

bool swap_preserves(const Structure& s, int i, int j, const IsoCaps& caps) {
  if (s.tables[i] == s.tables[j]) return true;
  return isomorphic(s, swap_tables(s, i, j), caps);
}

}  // namespace

LuReport lu_check(const Structure& s, const IsoCaps& caps) {
  s.validate();
  LuReport rep;
  for (const auto& [arity, syms] : symbols_by_arity(s)) {
    LuArity la;
    la.arity = arity;
    std::vector<int> nonempty;
    for (int i : syms)
      if (!s.tables[i].empty()) nonempty.push_back(i);
    la.nonempty_symbols = (int)nonempty.size();
    for (std::size_t a = 0; a < nonempty.size() && la.uniform; ++a)
      for (std::size_t b = a + 1; b < nonempty.size() && la.uniform; ++b)
        if (!swap_preserves(s, nonempty[a], nonempty[b], caps)) la.uniform = false;
    rep.per_arity.push_back(la);
  }
  return rep;
}

std::vector<ArityPartition> alu_partition(const Structure& s, const IsoCaps& caps) {
  s.validate();
  std::vector<ArityPartition> out;
  for (const auto& [arity, syms] : symbols_by_arity(s)) {
    // Union-find over this arity's symbols by swap-interchangeability.
    std::map<int, int> parent;
    for (int i : syms) parent[i] = i;
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (std::size_t a = 0; a < syms.size(); ++a)
      for (std::size_t b = a + 1; b < syms.size(); ++b) {
        int ra = find(syms[a]), rb = find(syms[b]);
        if (ra == rb) continue;
        if (swap_preserves(s, syms[a], syms[b], caps)) parent[std::max(ra, rb)] = std::min(ra, rb);
      }
    std::map<int, std::vector<int>> classes;
    for (int i : syms) classes[find(i)].push_back(i);
    ArityPartition ap;
    ap.arity = arity;
    for (auto& [root, members] : classes) {
      std::sort(members.begin(), members.end());
      ap.classes.push_back(members);
    }
    std::sort(ap.classes.begin(), ap.classes.end());
    out.push_back(std::move(ap));
  }
  return out;
}

}  // namespace relic

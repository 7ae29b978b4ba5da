#include "relic/combinators.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "relic/base.hpp"
#include "relic/iso.hpp"

namespace relic {

namespace {

std::string joined_names(const std::vector<Structure>& ss) {
  std::string out;
  for (std::size_t i = 0; i < ss.size(); ++i) {
    if (i) out += "+";
    out += ss[i].name.empty() ? "_" : ss[i].name;
  }
  return out;
}

// Blocks renamed apart and laid out at cumulative offsets.
struct Layout {
  std::vector<Structure> parts;
  std::vector<int> offset;
  int total = 0;
};

Layout lay_out(const std::vector<Structure>& ss) {
  Layout l;
  l.parts = rename_disjoint(ss);
  for (const auto& p : l.parts) {
    l.offset.push_back(l.total);
    l.total += p.size;
  }
  return l;
}

void append_shifted(Structure& base, const Structure& part, int offset) {
  for (std::size_t i = 0; i < part.sig.size(); ++i) {
    base.sig.add(part.sig.at(i));
    Table t;
    for (const auto& tup : part.tables[i]) {
      Tuple img(tup.size());
      for (std::size_t k = 0; k < tup.size(); ++k) img[k] = tup[k] + offset;
      table_insert(t, img);
    }
    base.tables.push_back(std::move(t));
  }
}

}  // namespace

ECombined e_combination(const std::vector<Structure>& ss) {
  if (ss.empty()) throw PreconditionError("e_combination: empty input");
  for (const auto& s : ss) s.validate();
  Layout l = lay_out(ss);

  ECombined out;
  out.base.name = "E(" + joined_names(ss) + ")";
  out.base.size = l.total;
  for (std::size_t i = 0; i < l.parts.size(); ++i) append_shifted(out.base, l.parts[i], l.offset[i]);

  Table e;
  for (std::size_t i = 0; i < l.parts.size(); ++i) {
    std::vector<int> block(l.parts[i].size);
    std::iota(block.begin(), block.end(), l.offset[i]);
    for (int a : block)
      for (int b : block) table_insert(e, {a, b});
    out.classes.push_back(std::move(block));
  }
  out.base.sig.add({"E", 2});
  out.base.tables.push_back(std::move(e));
  out.base.validate();
  return out;
}

PCombined p_combination(const std::vector<Structure>& ss, PMode mode,
                        const std::optional<Structure>& extra,
                        const std::vector<Identify>& overlap) {
  if (ss.empty()) throw PreconditionError("p_combination: empty input");
  for (const auto& s : ss) s.validate();
  if (extra) extra->validate();
  if (!overlap.empty() && mode != PMode::General)
    throw PreconditionError("p_combination: overlap map requires mode general");
  if (mode == PMode::Disjoint)
    for (std::size_t i = 0; i < ss.size(); ++i)
      for (std::size_t j = i + 1; j < ss.size(); ++j)
        if (Signature::arity_compatible(ss[i].sig, ss[j].sig) && isomorphic(ss[i], ss[j]))
          throw PreconditionError("p_combination: repetition requires mode repeat");

  Layout l = lay_out(ss);
  const int extra_offset = l.total;
  const int total = l.total + (extra ? extra->size : 0);

  // Quotient by the overlap identifications (identity unless general mode).
  std::vector<int> parent(total);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& id : overlap) {
    auto global = [&](int block, int elem) {
      if (block < 0 || block >= (int)ss.size())
        throw PreconditionError("p_combination: overlap block out of range");
      if (elem < 0 || elem >= l.parts[(std::size_t)block].size)
        throw PreconditionError("p_combination: overlap element out of range");
      return l.offset[(std::size_t)block] + elem;
    };
    if (id.block_a == id.block_b)
      throw PreconditionError("p_combination: overlap map inconsistent");
    int a = find(global(id.block_a, id.elem_a));
    int b = find(global(id.block_b, id.elem_b));
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  // Merging two elements of one block would change the block's structure.
  for (std::size_t i = 0; i < l.parts.size(); ++i) {
    std::vector<int> roots;
    for (int e = 0; e < l.parts[i].size; ++e) roots.push_back(find(l.offset[i] + e));
    std::sort(roots.begin(), roots.end());
    if (std::adjacent_find(roots.begin(), roots.end()) != roots.end())
      throw PreconditionError("p_combination: overlap map inconsistent");
  }
  std::vector<int> quot(total, -1);
  int next = 0;
  for (int v = 0; v < total; ++v) {
    int r = find(v);
    if (quot[r] < 0) quot[r] = next++;
    quot[v] = quot[r];
  }

  PCombined out;
  out.mode = mode;
  out.base.name = "P(" + joined_names(ss) + ")";
  out.base.size = next;
  for (std::size_t i = 0; i < l.parts.size(); ++i) {
    const Structure& p = l.parts[i];
    for (std::size_t sym = 0; sym < p.sig.size(); ++sym) {
      out.base.sig.add(p.sig.at(sym));
      Table t;
      for (const auto& tup : p.tables[sym]) {
        Tuple img(tup.size());
        for (std::size_t k = 0; k < tup.size(); ++k) img[k] = quot[tup[k] + l.offset[i]];
        table_insert(t, img);
      }
      out.base.tables.push_back(std::move(t));
    }
  }
  for (std::size_t i = 0; i < l.parts.size(); ++i) {
    std::string pname = "P" + std::to_string(i);
    if (out.base.sig.has(pname))
      throw PreconditionError("p_combination: predicate name " + pname + " already taken");
    out.base.sig.add({pname, 1});
    Table t;
    std::vector<int> block;
    for (int e = 0; e < l.parts[i].size; ++e) {
      int v = quot[l.offset[i] + e];
      table_insert(t, {v});
      block.push_back(v);
    }
    std::sort(block.begin(), block.end());
    block.erase(std::unique(block.begin(), block.end()), block.end());
    out.base.tables.push_back(std::move(t));
    out.blocks.push_back(std::move(block));
  }
  if (extra) {
    for (std::size_t sym = 0; sym < extra->sig.size(); ++sym) {
      if (out.base.sig.has(extra->sig.at(sym).name))
        throw PreconditionError("p_combination: extra signature clashes with " +
                                extra->sig.at(sym).name);
      out.base.sig.add(extra->sig.at(sym));
      Table t;
      for (const auto& tup : extra->tables[sym]) {
        Tuple img(tup.size());
        for (std::size_t k = 0; k < tup.size(); ++k) img[k] = quot[tup[k] + extra_offset];
        table_insert(t, img);
      }
      out.base.tables.push_back(std::move(t));
    }
  }
  out.base.validate();
  return out;
}

Structure p_infty_extent(const PCombined& pc) {
  std::vector<char> covered(pc.base.size, 0);
  for (const auto& block : pc.blocks)
    for (int v : block) covered[(std::size_t)v] = 1;
  std::vector<int> outside;
  for (int v = 0; v < pc.base.size; ++v)
    if (!covered[(std::size_t)v]) outside.push_back(v);

  Structure ind = induced_substructure(pc.base, outside);
  std::vector<std::string> keep;
  for (std::size_t i = 0; i < ind.sig.size(); ++i)
    if (!ind.tables[i].empty()) keep.push_back(ind.sig.at(i).name);
  Structure out = reduct(ind, keep);
  out.name = pc.base.name + "_pinf";
  return out;
}

}  // namespace relic

#pragma once

#include <string>
#include <vector>

#include "relic/structure.hpp"

namespace testutil {

// Undirected k-cycle / k-path with a symmetric binary symbol (default "E").
inline relic::Structure make_cycle(int k, const std::string& name = "c",
                                   const std::string& sym = "E") {
  relic::Structure s;
  s.name = name;
  s.sig.add({sym, 2});
  s.size = k;
  s.tables.resize(1);
  for (int i = 0; i < k; ++i) {
    relic::table_insert(s.tables[0], {i, (i + 1) % k});
    relic::table_insert(s.tables[0], {(i + 1) % k, i});
  }
  return s;
}

inline relic::Structure make_path(int k, const std::string& name = "p",
                                  const std::string& sym = "E") {
  relic::Structure s;
  s.name = name;
  s.sig.add({sym, 2});
  s.size = k;
  s.tables.resize(1);
  for (int i = 0; i + 1 < k; ++i) {
    relic::table_insert(s.tables[0], {i, i + 1});
    relic::table_insert(s.tables[0], {i + 1, i});
  }
  return s;
}

inline relic::Structure relabel(const relic::Structure& s, const std::vector<int>& perm) {
  relic::Structure out = s;
  for (std::size_t sym = 0; sym < s.sig.size(); ++sym) {
    out.tables[sym].clear();
    for (const auto& t : s.tables[sym]) {
      relic::Tuple img(t.size());
      for (std::size_t i = 0; i < t.size(); ++i)
        img[i] = perm[static_cast<std::size_t>(t[i])];
      relic::table_insert(out.tables[sym], img);
    }
  }
  return out;
}

// Structure over unary symbols: tables[i] = listed elements.
inline relic::Structure make_unary(int size, const std::vector<std::vector<int>>& sets,
                                   const std::string& name = "u") {
  relic::Structure s;
  s.name = name;
  s.size = size;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    s.sig.add({"P" + std::to_string(i), 1});
    relic::Table t;
    for (int e : sets[i]) relic::table_insert(t, {e});
    s.tables.push_back(t);
  }
  return s;
}

}  // namespace testutil

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "relic/signature.hpp"

namespace relic {

using Tuple = std::vector<int>;
// Sorted, duplicate-free list of tuples, all of the symbol's arity.
using Table = std::vector<Tuple>;

// Finite relational structure over universe {0, ..., size-1}.
//
// tables[i] interprets sig.at(i).  A structure can be evaluated against
// sentences over a larger language: absent symbols are read as empty
// relations (this convention is used throughout, e.g. when members of a
// family with pairwise disjoint languages judge each other's sentences).
struct Structure {
  std::string name;
  Signature sig;
  int size = 0;
  std::vector<Table> tables;

  const Table& table(const std::string& sym) const;
  bool holds(std::size_t sym_index, const Tuple& t) const;
  // Total number of tuples across all tables.
  std::size_t tuple_count() const;

  // Throws if tables/arities/universe bounds are inconsistent.
  void validate() const;
};

// Insert keeping the table sorted and duplicate-free.
void table_insert(Table& table, Tuple t);
bool table_contains(const Table& table, const Tuple& t);

// ---- structure file format ----
//
//   # comment
//   structure q3
//   signature R/2 S/1
//   universe 8
//   rel R: (0,1) (1,0)
//   rel S: (3)
//   end
//
// `signature` may list zero symbols; `rel` lines may repeat and accumulate.
// A file may hold several structure blocks.

std::vector<Structure> parse_structures(const std::string& text);
Structure parse_structure(const std::string& text);
std::vector<Structure> load_structures(const std::string& path);
// First structure of the file, or the named one when `name` is nonempty.
Structure load_structure(const std::string& path, const std::string& name = "");

// Deterministic rendering; parse_structure(render_structure(s)) == s.
std::string render_structure(const Structure& s);

// ---- basic operations ----

// Restriction to the named symbols (order preserved from s).
Structure reduct(const Structure& s, const std::vector<std::string>& keep);

// Substructure induced on `elements` (which are renumbered 0..k-1 in the
// given order); keeps only tuples entirely inside the set.
Structure induced_substructure(const Structure& s, const std::vector<int>& elements);

// Copies of the inputs with symbols renamed apart (suffix "_<i>"), so the
// results have pairwise disjoint languages.  Deterministic.
std::vector<Structure> rename_disjoint(const std::vector<Structure>& parts);

// Rename symbols via parallel arrays from/to (names not listed are kept).
Structure rename_symbols(const Structure& s, const std::vector<std::string>& from,
                         const std::vector<std::string>& to);

// Disjoint union of structures over a shared signature (tables shifted).
Structure disjoint_sum(const Structure& a, const Structure& b);
Structure disjoint_copies(const Structure& s, int k);

}  // namespace relic

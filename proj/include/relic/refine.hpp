#pragma once

#include <cstdint>
#include <vector>

#include "relic/structure.hpp"

namespace relic {

// O(1) membership tests for arity-1/2 symbols (dense bitmaps); binary search
// beyond that.  Used by the refinement / evaluation inner loops.
class DenseIndex {
 public:
  explicit DenseIndex(const Structure& s);

  bool holds1(std::size_t sym, int a) const { return unary_[sym][static_cast<std::size_t>(a)]; }
  bool holds2(std::size_t sym, int a, int b) const {
    return binary_[sym][static_cast<std::size_t>(a) * size_ + static_cast<std::size_t>(b)];
  }
  bool holds(std::size_t sym, const Tuple& t) const;
  const Structure& structure() const { return *s_; }

 private:
  const Structure* s_;
  std::size_t size_;
  std::vector<std::vector<bool>> unary_;   // empty vector for non-unary symbols
  std::vector<std::vector<bool>> binary_;  // empty vector for non-binary symbols
};

// Lex indexing of n-tuples over {0..size-1}: index = t[0]*size^(n-1) + ... + t[n-1].
std::size_t tuple_pow(int size, int n);
void tuple_decode(std::size_t index, int size, int n, Tuple& out);
std::size_t tuple_encode(const Tuple& t, int size);

struct RefineCaps {
  std::size_t max_tuples = 100000;  // cap on size^n
};

// Partition of all n-tuples of s.
//
// Class ids are canonical: they are assigned by sorting the (label-independent)
// refinement keys, so isomorphic structures get identical id sequences up to
// the induced bijection of tuples, and results do not depend on thread count.
struct TuplePartition {
  int n = 0;
  int rounds = 0;       // refinement rounds applied
  bool stable = false;  // a further round would not refine
  int num_classes = 0;
  std::vector<int> class_of;  // size^n entries in lex order
};

// Round-based refinement of n-tuple classes.
//
// Round 0 keys are atomic types (equality pattern + all relation memberships
// over the tuple).  The round-(k+1) key of t is (class_k(t), multiset over all
// elements c of (atomic type of t.c, class_k(t with position i replaced by c)
// for each i)).  The chain refines monotonically and its limit is reached when
// a round adds no classes.  `rounds < 0` iterates to the limit.
TuplePartition wl_partition(const Structure& s, int n, int rounds,
                            const RefineCaps& caps = {});
// Serial reference implementation (kept for testing; results must be equal).
TuplePartition wl_partition_serial(const Structure& s, int n, int rounds,
                                   const RefineCaps& caps = {});

// Stable vertex colors (wl_partition at n = 1 iterated to the limit).
std::vector<int> wl_vertex_colors(const Structure& s);

}  // namespace relic

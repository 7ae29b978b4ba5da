#include "relic/refine.hpp"

#include <algorithm>
#include <cstring>
#include <unordered_map>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace relic {

DenseIndex::DenseIndex(const Structure& s) : s_(&s), size_(static_cast<std::size_t>(s.size)) {
  unary_.resize(s.sig.size());
  binary_.resize(s.sig.size());
  for (std::size_t i = 0; i < s.sig.size(); ++i) {
    const int arity = s.sig.at(i).arity;
    if (arity == 1) {
      unary_[i].assign(size_, false);
      for (const auto& t : s.tables[i]) unary_[i][static_cast<std::size_t>(t[0])] = true;
    } else if (arity == 2) {
      binary_[i].assign(size_ * size_, false);
      for (const auto& t : s.tables[i])
        binary_[i][static_cast<std::size_t>(t[0]) * size_ + static_cast<std::size_t>(t[1])] = true;
    }
  }
}

bool DenseIndex::holds(std::size_t sym, const Tuple& t) const {
  switch (t.size()) {
    case 1: return holds1(sym, t[0]);
    case 2: return holds2(sym, t[0], t[1]);
    default: return s_->holds(sym, t);
  }
}

std::size_t tuple_pow(int size, int n) {
  std::size_t p = 1;
  for (int i = 0; i < n; ++i) {
    if (p > (static_cast<std::size_t>(1) << 40)) throw CapExceeded("tuple space too large");
    p *= static_cast<std::size_t>(size);
  }
  return p;
}

void tuple_decode(std::size_t index, int size, int n, Tuple& out) {
  out.resize(static_cast<std::size_t>(n));
  for (int i = n - 1; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = static_cast<int>(index % static_cast<std::size_t>(size));
    index /= static_cast<std::size_t>(size);
  }
}

std::size_t tuple_encode(const Tuple& t, int size) {
  std::size_t index = 0;
  for (int e : t) index = index * static_cast<std::size_t>(size) + static_cast<std::size_t>(e);
  return index;
}

namespace {

int atomic_bits(const Signature& sig, int m) {
  long bits = static_cast<long>(m) * (m - 1) / 2;
  for (const auto& sym : sig.symbols()) {
    long seq = 1;
    for (int i = 0; i < sym.arity; ++i) seq *= m;
    bits += seq;
  }
  if (bits > 64)
    throw CapExceeded("atomic type of " + std::to_string(m) + "-tuples needs " +
                      std::to_string(bits) + " bits (cap 64)");
  return static_cast<int>(bits);
}

// Atomic type of an m-tuple: equality pattern plus every relation membership
// over position sequences, packed into 64 bits.
std::uint64_t atomic_type(const DenseIndex& dense, const Tuple& t) {
  const Structure& s = dense.structure();
  std::uint64_t key = 0;
  int bit = 0;
  const int m = static_cast<int>(t.size());
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      if (t[i] == t[j]) key |= std::uint64_t{1} << bit;
      ++bit;
    }
  Tuple probe;
  for (std::size_t sym = 0; sym < s.sig.size(); ++sym) {
    const int arity = s.sig.at(sym).arity;
    std::size_t seqs = 1;
    for (int i = 0; i < arity; ++i) seqs *= static_cast<std::size_t>(m);
    probe.resize(static_cast<std::size_t>(arity));
    for (std::size_t seq = 0; seq < seqs; ++seq) {
      std::size_t rest = seq;
      for (int i = arity - 1; i >= 0; --i) {
        probe[static_cast<std::size_t>(i)] = t[rest % static_cast<std::size_t>(m)];
        rest /= static_cast<std::size_t>(m);
      }
      if (dense.holds(sym, probe)) key |= std::uint64_t{1} << bit;
      ++bit;
    }
  }
  return key;
}

void put_u32(std::string& out, std::uint32_t v) {
  char b[4];
  std::memcpy(b, &v, 4);
  out.append(b, 4);
}

void put_u64(std::string& out, std::uint64_t v) {
  char b[8];
  std::memcpy(b, &v, 8);
  out.append(b, 8);
}

// Assigns ids by sorted distinct key, so ids are label-independent.
int assign_ids(const std::vector<std::string>& keys, std::vector<int>& ids) {
  std::vector<const std::string*> uniq;
  {
    std::unordered_map<std::string_view, int> seen;
    seen.reserve(keys.size() * 2);
    for (const auto& k : keys)
      if (seen.emplace(k, 0).second) uniq.push_back(&k);
  }
  std::sort(uniq.begin(), uniq.end(),
            [](const std::string* a, const std::string* b) { return *a < *b; });
  std::unordered_map<std::string_view, int> rank;
  rank.reserve(uniq.size() * 2);
  for (std::size_t i = 0; i < uniq.size(); ++i) rank.emplace(*uniq[i], static_cast<int>(i));
  ids.resize(keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i) ids[i] = rank.at(keys[i]);
  return static_cast<int>(uniq.size());
}

TuplePartition wl_partition_impl(const Structure& s, int n, int rounds, const RefineCaps& caps,
                                 bool parallel) {
  if (n < 1) throw PreconditionError("tuple partition: n must be >= 1");
  s.validate();
  const std::size_t count = tuple_pow(s.size, n);
  if (count > caps.max_tuples)
    throw CapExceeded("tuple partition: size^n = " + std::to_string(count) + " exceeds cap " +
                      std::to_string(caps.max_tuples));
  atomic_bits(s.sig, n + 1);  // fail early if extension types do not fit
  const DenseIndex dense(s);
  const int size = s.size;

  TuplePartition part;
  part.n = n;

  // Precompute atomic types of all n-tuples and of all (tuple, c) extensions.
  std::vector<std::uint64_t> atp_self(count);
  std::vector<std::uint64_t> atp_ext(count * static_cast<std::size_t>(size));
  {
    auto body = [&](std::size_t i) {
      Tuple t, ext;
      tuple_decode(i, size, n, t);
      atp_self[i] = atomic_type(dense, t);
      ext = t;
      ext.push_back(0);
      for (int c = 0; c < size; ++c) {
        ext[static_cast<std::size_t>(n)] = c;
        atp_ext[i * static_cast<std::size_t>(size) + static_cast<std::size_t>(c)] =
            atomic_type(dense, ext);
      }
    };
    if (parallel) {
#pragma omp parallel for schedule(static)
      for (long long i = 0; i < static_cast<long long>(count); ++i)
        body(static_cast<std::size_t>(i));
    } else {
      for (std::size_t i = 0; i < count; ++i) body(i);
    }
  }

  std::vector<int> ids;
  {
    std::vector<std::string> keys(count);
    for (std::size_t i = 0; i < count; ++i) put_u64(keys[i], atp_self[i]);
    part.num_classes = assign_ids(keys, ids);
  }
  part.rounds = 0;

  const int max_rounds = rounds < 0 ? static_cast<int>(count) + 1 : rounds;
  for (int r = 1; r <= max_rounds; ++r) {
    std::vector<std::string> keys(count);
    auto body = [&](std::size_t i) {
      Tuple t;
      tuple_decode(i, size, n, t);
      std::string& key = keys[i];
      put_u32(key, static_cast<std::uint32_t>(ids[i]));
      // Multiset over c of (extension atomic type, ids of one-point replacements).
      std::vector<std::string> subs(static_cast<std::size_t>(size));
      Tuple repl = t;
      for (int c = 0; c < size; ++c) {
        std::string& sub = subs[static_cast<std::size_t>(c)];
        put_u64(sub, atp_ext[i * static_cast<std::size_t>(size) + static_cast<std::size_t>(c)]);
        for (int pos = 0; pos < n; ++pos) {
          const int old = repl[static_cast<std::size_t>(pos)];
          repl[static_cast<std::size_t>(pos)] = c;
          put_u32(sub, static_cast<std::uint32_t>(ids[tuple_encode(repl, size)]));
          repl[static_cast<std::size_t>(pos)] = old;
        }
      }
      std::sort(subs.begin(), subs.end());
      for (const auto& sub : subs) key += sub;
    };
    if (parallel) {
#pragma omp parallel for schedule(static)
      for (long long i = 0; i < static_cast<long long>(count); ++i)
        body(static_cast<std::size_t>(i));
    } else {
      for (std::size_t i = 0; i < count; ++i) body(i);
    }
    std::vector<int> next;
    const int next_classes = assign_ids(keys, next);
    if (next_classes == part.num_classes) {
      part.stable = true;  // refinement chain has reached its limit
      break;
    }
    ids = std::move(next);
    part.num_classes = next_classes;
    part.rounds = r;
  }
  part.class_of = std::move(ids);
  return part;
}

}  // namespace

TuplePartition wl_partition(const Structure& s, int n, int rounds, const RefineCaps& caps) {
#ifdef _OPENMP
  return wl_partition_impl(s, n, rounds, caps, true);
#else
  return wl_partition_impl(s, n, rounds, caps, false);
#endif
}

TuplePartition wl_partition_serial(const Structure& s, int n, int rounds, const RefineCaps& caps) {
  return wl_partition_impl(s, n, rounds, caps, false);
}

std::vector<int> wl_vertex_colors(const Structure& s) {
  return wl_partition(s, 1, -1).class_of;
}

}  // namespace relic

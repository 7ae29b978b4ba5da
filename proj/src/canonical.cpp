#include "relic/canonical.hpp"

#include <algorithm>

#include "relic/refine.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace relic {

std::string CanonicalForm::hex() const {
  static const char* digits = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    out.push_back(digits[b >> 4]);
    out.push_back(digits[b & 0xf]);
  }
  return out;
}

namespace {

void encode_structure(const Structure& s, const std::vector<int>& relabel,
                      std::vector<std::uint8_t>& out) {
  out.clear();
  out.push_back(static_cast<std::uint8_t>(s.size));
  out.push_back(static_cast<std::uint8_t>(s.sig.size()));
  for (const auto& sym : s.sig.symbols()) {
    out.push_back(static_cast<std::uint8_t>(sym.name.size()));
    out.insert(out.end(), sym.name.begin(), sym.name.end());
    out.push_back(static_cast<std::uint8_t>(sym.arity));
  }
  std::vector<Tuple> buf;
  for (std::size_t i = 0; i < s.sig.size(); ++i) {
    buf.assign(s.tables[i].begin(), s.tables[i].end());
    for (auto& t : buf)
      for (int& e : t) e = relabel[static_cast<std::size_t>(e)];
    std::sort(buf.begin(), buf.end());
    out.push_back(static_cast<std::uint8_t>(buf.size() & 0xff));
    out.push_back(static_cast<std::uint8_t>(buf.size() >> 8));
    for (const auto& t : buf)
      for (int e : t) out.push_back(static_cast<std::uint8_t>(e));
  }
}

struct ClassLayout {
  std::vector<std::vector<int>> classes;  // vertices grouped by color id
  std::vector<long> fact;                 // factorial of each class size
  long total = 1;
};

ClassLayout class_layout(const Structure& s, const CanonCaps& caps) {
  auto colors = wl_vertex_colors(s);
  const int num = *std::max_element(colors.begin(), colors.end()) + 1;
  ClassLayout lay;
  lay.classes.assign(static_cast<std::size_t>(num), {});
  for (int v = 0; v < s.size; ++v)
    lay.classes[static_cast<std::size_t>(colors[static_cast<std::size_t>(v)])].push_back(v);
  for (const auto& cls : lay.classes) {
    long f = 1;
    for (std::size_t i = 2; i <= cls.size(); ++i) f *= static_cast<long>(i);
    lay.fact.push_back(f);
    if (lay.total > caps.max_perms / f)
      throw CapExceeded("canonical form: permutation count exceeds cap");
    lay.total *= f;
  }
  return lay;
}

// Decodes candidate `index` into a relabeling: classes keep their id order,
// members of each class are permuted by the per-class Lehmer code.
void decode_candidate(const ClassLayout& lay, long index, std::vector<int>& relabel,
                      std::vector<int>& scratch) {
  int pos = 0;
  for (std::size_t ci = 0; ci < lay.classes.size(); ++ci) {
    const auto& cls = lay.classes[ci];
    long code = index % lay.fact[ci];
    index /= lay.fact[ci];
    scratch.assign(cls.begin(), cls.end());
    for (std::size_t i = 0; i < cls.size(); ++i) {
      long rest_fact = 1;  // (|cls| - i - 1)!
      for (long k = 2; k <= static_cast<long>(cls.size() - i) - 1; ++k) rest_fact *= k;
      const long pick = code / rest_fact;
      code %= rest_fact;
      relabel[static_cast<std::size_t>(scratch[static_cast<std::size_t>(pick)])] = pos++;
      scratch.erase(scratch.begin() + pick);
    }
  }
}

CanonicalForm canonical_impl(const Structure& s, const CanonCaps& caps, bool parallel) {
  s.validate();
  if (s.size > caps.max_size)
    throw CapExceeded("canonical form: size " + std::to_string(s.size) + " exceeds cap " +
                      std::to_string(caps.max_size));
  const ClassLayout lay = class_layout(s, caps);

  CanonicalForm best;
  bool have_best = false;
  auto consider = [&](const std::vector<std::uint8_t>& enc) {
    if (!have_best || enc < best.bytes) {
      best.bytes = enc;
      have_best = true;
    }
  };

  if (parallel && lay.total > 1024) {
#ifdef _OPENMP
#pragma omp parallel
    {
      std::vector<int> relabel(static_cast<std::size_t>(s.size));
      std::vector<int> scratch;
      std::vector<std::uint8_t> enc, local_best;
      bool have_local = false;
#pragma omp for schedule(static)
      for (long idx = 0; idx < lay.total; ++idx) {
        decode_candidate(lay, idx, relabel, scratch);
        encode_structure(s, relabel, enc);
        if (!have_local || enc < local_best) {
          local_best = enc;
          have_local = true;
        }
      }
#pragma omp critical(relic_canon_merge)
      if (have_local) consider(local_best);
    }
    return best;
#endif
  }
  std::vector<int> relabel(static_cast<std::size_t>(s.size));
  std::vector<int> scratch;
  std::vector<std::uint8_t> enc;
  for (long idx = 0; idx < lay.total; ++idx) {
    decode_candidate(lay, idx, relabel, scratch);
    encode_structure(s, relabel, enc);
    consider(enc);
  }
  return best;
}

}  // namespace

CanonicalForm canonical_form(const Structure& s, const CanonCaps& caps) {
#ifdef _OPENMP
  return canonical_impl(s, caps, true);
#else
  return canonical_impl(s, caps, false);
#endif
}

CanonicalForm canonical_form_serial(const Structure& s, const CanonCaps& caps) {
  return canonical_impl(s, caps, false);
}

CanonicalForm canonical_key_name_blind(const Structure& s, const CanonCaps& caps) {
  Structure cp = s;
  cp.sig = s.sig.name_normalized();
  return canonical_form(cp, caps);
}

}  // namespace relic

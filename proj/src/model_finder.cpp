#include "relic/model_finder.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>

#include "relic/base.hpp"
#include "relic/canonical.hpp"
#include "relic/eval.hpp"
#include "relic/refine.hpp"

namespace relic {

namespace {

struct BudgetOut {};

// Cell = one bit of one relation table.  Cells are ordered symbol-major,
// tuples in lex order; the assignment vector doubles as the oracle.
class Search {
 public:
  Search(const FormulaPtr& f, const Signature& sig, int n, int limit, const FinderCaps& caps)
      : f_(f), sig_(sig), n_(n), limit_(limit), caps_(caps) {
    for (std::size_t i = 0; i < sig.size(); ++i) {
      sym_base_.push_back((long)cells_);
      cells_ += tuple_pow(n, sig.at(i).arity);
    }
    state_.assign(cells_, -1);
    build_transposition_maps();
  }

  std::vector<Structure> run() {
    dfs(0, false);
    std::vector<Structure> out;
    for (auto& [key, s] : found_) out.push_back(std::move(s));
    return out;
  }

 private:
  void build_transposition_maps() {
    for (int a = 0; a < n_; ++a)
      for (int b = a + 1; b < n_; ++b) {
        std::vector<long> m(cells_);
        Tuple t, img;
        for (std::size_t i = 0; i < sig_.size(); ++i) {
          const int arity = sig_.at(i).arity;
          const std::size_t space = tuple_pow(n_, arity);
          t.assign((std::size_t)arity, 0);
          img.assign((std::size_t)arity, 0);
          for (std::size_t code = 0; code < space; ++code) {
            tuple_decode(code, n_, arity, t);
            for (int k = 0; k < arity; ++k)
              img[(std::size_t)k] = t[(std::size_t)k] == a ? b : (t[(std::size_t)k] == b ? a : t[(std::size_t)k]);
            m[(std::size_t)sym_base_[i] + code] = sym_base_[i] + (long)tuple_encode(img, n_);
          }
        }
        perm_maps_.push_back(std::move(m));
      }
  }

  // False iff the current partial assignment is provably lex-greater than
  // one of its transposition images (then no completion is a lex-leader...
  // of its orbit under that transposition, and the subtree is redundant).
  bool lex_ok(long assigned_up_to) const {
    for (const auto& m : perm_maps_) {
      for (long j = 0; j < assigned_up_to; ++j) {
        int x = state_[(std::size_t)j];
        int y = state_[(std::size_t)m[(std::size_t)j]];
        if (x < 0 || y < 0) break;  // inconclusive from here on
        if (x != y) {
          if (x > y) return false;
          break;  // lex-smaller than this image; next permutation
        }
      }
    }
    return true;
  }

  Tri prune_eval(long budget) {
    long used = 0;
    auto oracle = [&](std::size_t sym, const Tuple& t) -> Tri {
      if (++used > budget) throw BudgetOut{};
      int v = state_[(std::size_t)sym_base_[sym] + (long)tuple_encode(t, n_)];
      if (v < 0) return Tri::Unknown;
      return v ? Tri::True : Tri::False;
    };
    try {
      return eval3(f_, sig_, n_, oracle);
    } catch (const BudgetOut&) {
      return Tri::Unknown;
    }
  }

  Structure materialize() const {
    Structure s;
    s.name = "m" + std::to_string(n_);
    s.sig = sig_;
    s.size = n_;
    s.tables.resize(sig_.size());
    Tuple t;
    for (std::size_t i = 0; i < sig_.size(); ++i) {
      const int arity = sig_.at(i).arity;
      const std::size_t space = tuple_pow(n_, arity);
      t.assign((std::size_t)arity, 0);
      for (std::size_t code = 0; code < space; ++code)
        if (state_[(std::size_t)sym_base_[i] + code] == 1) {
          tuple_decode(code, n_, arity, t);
          table_insert(s.tables[i], t);
        }
    }
    return s;
  }

  void dfs(long next_cell, bool decided_true) {
    if ((int)found_.size() >= limit_) return;
    if (++nodes_ > caps_.node_cap) throw CapExceeded("find_models: node cap exceeded");
    if (!lex_ok(next_cell)) return;
    if (next_cell == cells_) {
      // Full assignment: decide with the exact two-valued evaluator, which also
      // serves as the soundness re-check on every emitted structure.
      Structure s = materialize();
      const bool model = evaluate(s, f_);
      if (decided_true && !model)
        throw std::logic_error("find_models: pruning evaluator disagrees with evaluate (bug)");
      if (model) found_.emplace(canonical_form(s), s);
      return;
    }
    if (!decided_true) {
      // The root evaluation gets an unlimited budget: refuting a size
      // outright is worth any one-off cost.
      Tri v = prune_eval(next_cell == 0 ? LONG_MAX : caps_.eval_budget);
      if (v == Tri::False) return;
      decided_true = v == Tri::True;
    }
    for (int bit = 0; bit <= 1; ++bit) {
      state_[(std::size_t)next_cell] = bit;
      dfs(next_cell + 1, decided_true);
      if ((int)found_.size() >= limit_) break;
    }
    state_[(std::size_t)next_cell] = -1;
  }

  FormulaPtr f_;
  const Signature& sig_;
  int n_;
  int limit_;
  FinderCaps caps_;
  long cells_ = 0;
  std::vector<long> sym_base_;
  std::vector<int> state_;
  std::vector<std::vector<long>> perm_maps_;
  std::map<CanonicalForm, Structure> found_;
  long nodes_ = 0;
};

void check_inputs(const FormulaPtr& f, const Signature& sig, int n, const FinderCaps& caps) {
  require_sentence(f);
  if (n < 1) throw PreconditionError("find_models: size must be >= 1");
  if (n > caps.max_size) throw CapExceeded("find_models: size exceeds cap");
  const Signature used = inferred_signature(f);
  for (const auto& sym : used.symbols()) {
    if (!sig.has(sym.name))
      throw PreconditionError("find_models: formula symbol " + sym.name + " not in signature");
    if (sig.arity(sym.name) != sym.arity)
      throw PreconditionError("find_models: arity mismatch for " + sym.name);
  }
}

}  // namespace

std::vector<Structure> find_models(const FormulaPtr& f, const Signature& sig, int n, int limit,
                                   const FinderCaps& caps) {
  check_inputs(f, sig, n, caps);
  if (limit <= 0) return {};
  return Search(f, sig, n, limit, caps).run();
}

std::vector<int> fin_spectrum(const FormulaPtr& f, const Signature& sig, int N,
                              const FinderCaps& caps) {
  if (N < 1) throw PreconditionError("fin_spectrum: bound must be >= 1");
  std::vector<int> out;
  for (int n = 1; n <= N; ++n)
    if (!find_models(f, sig, n, 1, caps).empty()) out.push_back(n);
  return out;
}

ForcesInfinityVerdict forces_infinity(const FormulaPtr& f, const Signature& sig, int N,
                                      const FinderCaps& caps) {
  if (N < 1) throw PreconditionError("forces_infinity: bound must be >= 1");
  ForcesInfinityVerdict v;
  for (int n = 1; n <= N; ++n) {
    auto models = find_models(f, sig, n, 1, caps);
    if (!models.empty()) {
      v.refuted = true;
      v.n = n;
      v.witness = models.front();
      return v;
    }
  }
  v.refuted = false;
  v.n = N;
  return v;
}

}  // namespace relic

#pragma once

#include <string>
#include <vector>

#include "relic/base.hpp"

namespace relic {

struct Symbol {
  std::string name;
  int arity = 1;
  bool operator==(const Symbol&) const = default;
  auto operator<=>(const Symbol&) const = default;
};

// Ordered list of relation symbols.  Names are unique identifiers, arities >= 1.
// The order is significant: positional ("name-blind") matching of two
// signatures aligns the i-th symbol of one with the i-th of the other.
class Signature {
 public:
  Signature() = default;
  explicit Signature(std::vector<Symbol> symbols);

  static bool valid_name(const std::string& name);

  const std::vector<Symbol>& symbols() const { return symbols_; }
  std::size_t size() const { return symbols_.size(); }
  bool empty() const { return symbols_.empty(); }
  const Symbol& at(std::size_t i) const { return symbols_.at(i); }

  bool has(const std::string& name) const;
  // Index of `name`; throws PreconditionError if absent.
  std::size_t index_of(const std::string& name) const;
  int arity(const std::string& name) const;

  void add(const Symbol& sym);

  // True when the two signatures have the same arity sequence (so they can be
  // matched positionally regardless of names).
  static bool arity_compatible(const Signature& a, const Signature& b);

  // Copy with symbols renamed to positional placeholders S0, S1, ...
  Signature name_normalized() const;

  bool operator==(const Signature&) const = default;

 private:
  std::vector<Symbol> symbols_;
};

}  // namespace relic

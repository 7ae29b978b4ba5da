#include "relic/cube.hpp"

#include <string>

#include "relic/base.hpp"

namespace relic {

Structure make_ncube(int n) {
  if (n < 0 || n > 12) throw PreconditionError("make_ncube: n must be in [0, 12]");
  Structure s;
  s.name = "Q" + std::to_string(n);
  s.sig.add({"R", 2});
  s.size = 1 << n;
  s.tables.resize(1);
  for (int v = 0; v < s.size; ++v)
    for (int b = 0; b < n; ++b) {
      int w = v ^ (1 << b);
      table_insert(s.tables[0], Tuple{v, w});
    }
  s.validate();
  return s;
}

}  // namespace relic

#pragma once

#include "relic/structure.hpp"

namespace relic {

// Hypercube graph Q_n: universe {0,...,2^n - 1}, symmetric irreflexive
// binary R with i R j iff i and j differ in exactly one bit.  n = 0 gives
// the one-point edgeless structure.  Bounded to n <= 12 (4096 vertices).
Structure make_ncube(int n);

}  // namespace relic

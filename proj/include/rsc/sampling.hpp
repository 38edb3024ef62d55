#pragma once

// Seeded random instances for the property suites and tests.

#include <cstdint>
#include <random>
#include <vector>

#include "rsc/spaces.hpp"
#include "rsc/stepfn.hpp"
#include "rsc/transforms.hpp"

namespace rsc {

using Rng = std::mt19937_64;

// k / d with k uniform in [lo*d, hi*d] and d drawn from {1, 2, 3, 4, 8}.
Rational random_rational(Rng& rng, long lo, long hi);
// Nonnegative step function with up to max_pieces pieces; on the half-line
// the support is bounded. Breaks are positive rationals below 16 (below 1 on (0,1)).
PiecewiseFn random_step(Rng& rng, Domain domain, int max_pieces = 8);
PiecewiseFn random_nonincreasing_step(Rng& rng, Domain domain, int max_pieces = 8);
// Valid LZ space with exponents from a small rational menu, optionally with log exponents.
LZSpace random_lz(Rng& rng, Domain domain, bool with_logs = true);
// count nonoverlapping intervals of a common random length, in increasing order.
std::vector<Interval> random_intervals(Rng& rng, int count);

}  // namespace rsc

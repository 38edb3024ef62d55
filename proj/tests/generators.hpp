#pragma once

// Property-test plumbing: seeded instance loops and the brute-force oracles
// the unit tests compare the library against.

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "rsc/sampling.hpp"
#include "rsc/spaces.hpp"
#include "rsc/stepfn.hpp"

namespace rsc::testing {

// Runs body(rng, i) for count instances drawn from one seed. Failures carry
// the instance number, and the loop stops at the first failing instance.
inline void for_each_instance(uint64_t seed, int count, const std::function<void(Rng&, int)>& body) {
  Rng rng(seed);
  for (int i = 0; i < count; ++i) {
    SCOPED_TRACE("instance " + std::to_string(i) + ", seed " + std::to_string(seed));
    body(rng, i);
    if (::testing::Test::HasFatalFailure() || ::testing::Test::HasNonfatalFailure()) return;
  }
}

inline PiecewiseFn step(Domain d, std::vector<Rational> breaks, std::vector<Rational> values, Rational tail = 0) {
  return PiecewiseFn(d, std::move(breaks), std::move(values), std::move(tail));
}

// g <= f pointwise: f with random pieces lowered by a random factor in [0, 1].
inline PiecewiseFn random_minorant(Rng& rng, const PiecewiseFn& f) {
  std::vector<Rational> values;
  for (const auto& v : f.values()) values.push_back(v * random_rational(rng, 0, 1));
  Rational tail = f.tail() * random_rational(rng, 0, 1);
  return PiecewiseFn(f.domain(), f.breaks(), values, tail);
}

}  // namespace rsc::testing

#include <gtest/gtest.h>

#include "generators.hpp"
#include "rsc/errors.hpp"
#include "rsc/stepfn.hpp"

using namespace rsc;
using rsc::testing::for_each_instance;
using rsc::testing::rat;
using rsc::testing::step;

namespace {

const Domain H = Domain::HalfLine;
const Domain U = Domain::UnitInterval;

PiecewiseFn chi(Domain d, long lo_num, long lo_den, long hi_num, long hi_den, long height = 1) {
  return PiecewiseFn::indicator(d, rat(lo_num, lo_den), rat(hi_num, hi_den), height);
}

}  // namespace

TEST(PiecewiseFn, CanonicalFormMergesEqualNeighbours) {
  auto f = step(H, {1, 2, 3}, {2, 2, 1});
  auto g = step(H, {2, 3}, {2, 1});
  EXPECT_EQ(f, g);
  EXPECT_EQ(f.breaks().size(), 2u);
}

TEST(PiecewiseFn, RejectsInvalidInput) {
  EXPECT_THROW(step(H, {2, 1}, {1, 1}), BadInput);
  EXPECT_THROW(step(H, {1}, {-1}), BadInput);
  EXPECT_THROW(step(H, {0}, {1}), BadInput);
}

TEST(PiecewiseFn, UnitIntervalDropsBreaksAtOrBeyondOne) {
  auto f = PiecewiseFn::indicator(U, 0, 3);
  EXPECT_EQ(f, PiecewiseFn::constant(U, 1));
  EXPECT_TRUE(f.bounded_support());
}

TEST(PiecewiseFn, RightContinuousEvaluation) {
  auto f = step(H, {1, 3}, {2, 1});
  EXPECT_EQ(f(0), 2);
  EXPECT_EQ(f(rat(999, 1000)), 2);
  EXPECT_EQ(f(1), 1);
  EXPECT_EQ(f(3), 0);
}

TEST(PiecewiseFn, JsonRoundTripIsExact) {
  auto f = step(H, {rat(1, 3), rat(7, 5)}, {rat(22, 7), rat(1, 9)});
  auto j = to_json(f);
  EXPECT_EQ(j["domain"], "halfline");
  EXPECT_EQ(j["breaks"][0], "1/3");
  EXPECT_EQ(j["tail"], "0");
  EXPECT_EQ(piecewise_from_json(j), f);
  for_each_instance(11, 200, [](Rng& rng, int) {
    auto g = random_step(rng, rng() % 2 ? H : U);
    EXPECT_EQ(piecewise_from_json(nlohmann::json::parse(to_json(g).dump())), g);
  });
}

TEST(Distribution, Examples) {
  auto d1 = distribution(chi(H, 0, 1, 5, 2));
  EXPECT_EQ(d1.fn(), step(H, {1}, {rat(5, 2)}));

  // Level sets of 2 chi_(0,1) + chi_[1,3) listed by hand.
  auto d2 = distribution(step(H, {1, 3}, {2, 1}));
  EXPECT_EQ(d2.fn(), step(H, {1, 2}, {3, 1}));

  EXPECT_TRUE(distribution(PiecewiseFn::zero(H)).fn().is_zero());
}

TEST(Distribution, RejectsNonzeroTailOnHalfLine) {
  auto f = PiecewiseFn::constant(H, 1);
  EXPECT_THROW(distribution(f), NonIntegrableTail);
  EXPECT_THROW(rearrange(f), NonIntegrableTail);
  EXPECT_THROW(maximal_rearrangement(f, 1), NonIntegrableTail);
}

TEST(Rearrange, IndicatorOfUnionOfIntervals) {
  // E = [1,2) u [4,9/2) u [7,10), |E| = 9/2.
  auto f = add(add(chi(H, 1, 1, 2, 1), chi(H, 4, 1, 9, 2)), chi(H, 7, 1, 10, 1));
  EXPECT_EQ(rearrange(f).fn(), chi(H, 0, 1, 9, 2));
}

TEST(Rearrange, NonincreasingInputIsFixed) {
  auto f = step(H, {rat(1, 2), 2, 5}, {7, 3, rat(1, 3)});
  EXPECT_EQ(rearrange(f).fn(), f);
  auto g = step(U, {rat(1, 4)}, {2}, 1);
  EXPECT_EQ(rearrange(g).fn(), g);
}

TEST(Rearrange, SwapsPiecesByHeight) {
  auto f = step(H, {1, 2}, {1, 2});
  EXPECT_EQ(rearrange(f).fn(), step(H, {1, 2}, {2, 1}));
}

TEST(Rearrange, AgreesWithSortOracle) {
  for_each_instance(20, 1000, [](Rng& rng, int) {
    auto f = random_step(rng, rng() % 2 ? H : U);
    auto fs = rearrange(f).fn();
    Rational h;
    auto sorted = rsc::testing::sorted_samples(f, 10000, &h);
    long cells = 0;
    for (const auto& run : sorted) cells += run.second;
    ASSERT_EQ(h * cells, rsc::testing::sample_length(f));
    ASSERT_EQ(rsc::testing::grid_samples(fs, h, h * cells), sorted);
    Rational positive = 0;
    for (const auto& run : sorted)
      if (run.first > 0) positive += h * run.second;
    ASSERT_EQ(fs.support_end(), positive);
  });
}

TEST(Rearrange, IdempotentAndEquimeasurable) {
  for_each_instance(21, 1000, [](Rng& rng, int) {
    auto f = random_step(rng, rng() % 2 ? H : U, 10);
    auto fs = rearrange(f);
    EXPECT_TRUE(fs.fn().is_nonincreasing());
    EXPECT_EQ(rearrange(fs.fn()), fs);
    EXPECT_EQ(distribution(fs.fn()), distribution(f));
  });
}

TEST(Rearrange, PreservesIntegralAndOrder) {
  for_each_instance(22, 500, [](Rng& rng, int) {
    Domain d = rng() % 2 ? H : U;
    auto f = random_step(rng, d);
    auto g = rsc::testing::random_minorant(rng, f);
    ASSERT_TRUE(pointwise_le(g, f));
    EXPECT_EQ(integral(rearrange(f).fn()), integral(f));
    EXPECT_TRUE(pointwise_le(rearrange(g).fn(), rearrange(f).fn()));
  });
}

TEST(MaximalRearrangement, Examples) {
  auto f = chi(H, 0, 1, 1, 1);
  EXPECT_EQ(maximal_rearrangement(f, 2), rat(1, 2));
  EXPECT_EQ(maximal_rearrangement(f, rat(1, 2)), 1);
  EXPECT_EQ(maximal_rearrangement(step(H, {1, 2}, {2, 1}), 2), rat(3, 2));
}

TEST(MaximalRearrangement, DominatesAndDecreases) {
  for_each_instance(23, 300, [](Rng& rng, int) {
    Domain d = rng() % 2 ? H : U;
    auto f = random_step(rng, d);
    auto fs = rearrange(f).fn();
    Rational prev = -1;
    Rational end = d == U ? Rational(1) : Rational(17);
    for (Rational t = rat(1, 128); t <= end; t += rat(7, 128)) {
      Rational ff = maximal_rearrangement(f, t);
      EXPECT_GE(ff, fs(t));
      if (prev >= 0) EXPECT_LE(ff, prev);
      prev = ff;
    }
  });
}

TEST(Dilate, Examples) {
  auto f = step(H, {1, 3}, {2, 1});
  EXPECT_EQ(dilate(f, 1), f);
  EXPECT_EQ(dilate(chi(H, 0, 1, 1, 1), 4), chi(H, 0, 1, 4, 1));
  EXPECT_EQ(dilate(chi(U, 0, 1, 1, 2), rat(1, 2)), chi(U, 0, 1, 1, 4));
}

TEST(Dilate, UnitIntervalCutsAtOne) {
  auto f = step(U, {rat(1, 2)}, {3}, 1);
  // D_2 f(t) = f(t/2) on (0,1): the whole interval sees the first piece.
  EXPECT_EQ(dilate(f, 2), PiecewiseFn::constant(U, 3));
}

TEST(Pointwise, Examples) {
  auto one = chi(H, 0, 1, 1, 1);
  EXPECT_EQ(add(one, one), chi(H, 0, 1, 1, 1, 2));
  EXPECT_EQ(truncate_above(step(H, {1, 2}, {2, 1}), 1), chi(H, 0, 1, 2, 1));
  EXPECT_EQ(restrict(chi(H, 0, 1, 3, 1), 1, Rational(2)), chi(H, 1, 1, 2, 1));
  EXPECT_EQ(scale(one, 0), PiecewiseFn::zero(H));
  EXPECT_EQ(max(one, chi(H, 1, 2, 2, 1)), chi(H, 0, 1, 2, 1));
  EXPECT_EQ(min(one, chi(H, 1, 2, 2, 1)), chi(H, 1, 2, 1, 1));
}

TEST(Pointwise, DomainMismatchIsReported) {
  EXPECT_THROW(add(PiecewiseFn::zero(H), PiecewiseFn::zero(U)), DomainMismatch);
  EXPECT_THROW(max(PiecewiseFn::zero(H), PiecewiseFn::zero(U)), DomainMismatch);
}

TEST(Pointwise, AgreesWithEvaluation) {
  for_each_instance(24, 300, [](Rng& rng, int) {
    Domain d = rng() % 2 ? H : U;
    auto f = random_step(rng, d);
    auto g = random_step(rng, d);
    Rational lam = random_rational(rng, 0, 3);
    auto s = add(f, g), mx = max(f, g), mn = min(f, g), sc = scale(f, lam), tr = truncate_above(f, 2);
    for (long k = 0; k < 16 * 64 * 2; k += 5) {
      Rational t = rat(k, 128);
      if (d == U && t >= 1) break;
      ASSERT_EQ(s(t), f(t) + g(t));
      ASSERT_EQ(mx(t), std::max(f(t), g(t)));
      ASSERT_EQ(mn(t), std::min(f(t), g(t)));
      ASSERT_EQ(sc(t), lam * f(t));
      ASSERT_EQ(tr(t), std::min(f(t), Rational(2)));
    }
  });
}

TEST(Integral, ExactValues) {
  EXPECT_EQ(integral(step(H, {1, 3}, {2, 1})), 4);
  EXPECT_EQ(integral(step(U, {rat(1, 4)}, {4}, 0)), 1);
  EXPECT_EQ(integral_to(step(H, {1, 3}, {2, 1}), rat(3, 2)), rat(5, 2));
}

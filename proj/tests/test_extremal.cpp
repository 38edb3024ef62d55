#include <gtest/gtest.h>

#include <cmath>

#include "generators.hpp"
#include "rsc/errors.hpp"
#include "rsc/extremal.hpp"

using namespace rsc;
using rsc::testing::flat_oracle;
using rsc::testing::for_each_instance;
using rsc::testing::near_rel;
using rsc::testing::rat;

namespace {

const Domain H = Domain::HalfLine;
const Domain U = Domain::UnitInterval;

}  // namespace

TEST(Suptail, LebesgueTwoToFourMatchesFlatOracle) {
  double oracle = flat_oracle(2, 4, 1);
  EXPECT_NEAR(oracle, 1 / std::sqrt(2.0), 1e-9);
  auto est = suptail(LZSpace::lebesgue(2), LZSpace::lebesgue(4), 1);
  EXPECT_NEAR(est.estimate / oracle, 1, 0.02);
  // A richer search must not beat the flat oracle by more than 1%.
  CandidateFamily steps;
  steps.kind = FamilyKind::LogGridSteps;
  auto rich = suptail(LZSpace::lebesgue(2), LZSpace::lebesgue(4), 1, steps);
  EXPECT_LE(rich.estimate, oracle * 1.01);
}

TEST(Suptail, SameLebesgueSpaceApproachesOne) {
  for (int grid : {32, 64, 96}) {
    CandidateFamily fam;
    fam.grid_size = grid;
    for (long p : {1L, 2L, 3L})
      for (double a : {1e-3, 1.0, 1e3}) {
        double est = suptail(LZSpace::lebesgue(p), LZSpace::lebesgue(p), a, fam).estimate;
        EXPECT_GE(est, 0.98) << "p=" << p << " a=" << a << " grid=" << grid;
        EXPECT_LE(est, 1 + 1e-9);
      }
  }
}

TEST(Suptail, DecaysLikeClosedForm) {
  // a^{1/q-1/p} (p/(q-p))^{1/q} (q/(q-p))^{-1/p} for p = 2, q = 4.
  for (double a : {1e2, 1e4, 1e6}) {
    double expect = std::pow(a, -0.25) / std::sqrt(2.0);
    double est = suptail(LZSpace::lebesgue(2), LZSpace::lebesgue(4), a).estimate;
    EXPECT_NEAR(est / expect, 1, 0.02) << a;
  }
}

TEST(Suptail, BestCandidateIsNormalizedAndMonotone) {
  for_each_instance(61, 20, [](Rng& rng, int) {
    auto X = random_lz(rng, H), Y = random_lz(rng, H);
    double a = std::pow(10.0, double(rng() % 7) - 3);
    auto est = suptail(X, Y, a);
    EXPECT_TRUE(est.best.is_nonincreasing());
    EXPECT_TRUE(est.best.bounded_support());
    EXPECT_NEAR(lz_norm(est.best, X), 1, 1e-9) << X.literal();
    // The reported score is the score of the reported candidate.
    auto tail = restrict(est.best, from_double(a), std::nullopt);
    EXPECT_TRUE(near_rel(lz_norm(tail, Y), est.estimate, 1e-9)) << X.literal() << " " << Y.literal();
  });
}

TEST(Suptail, ExplicitCandidateAndDoublingFloor) {
  // chi_(0,2a)/phi_X(2a) is always scored, so the estimate is at least
  // phi_Y(a)/phi_X(2a); when phi_X(2a) <= 2 phi_X(a) that is the usual floor.
  int doubling = 0;
  for_each_instance(62, 40, [&](Rng& rng, int) {
    auto X = random_lz(rng, H), Y = random_lz(rng, H);
    for (double a : {1e-4, 1.0, 1e4}) {
      double est = suptail(X, Y, a).estimate;
      double phiY = fundamental_function(Y, a), phiX = fundamental_function(X, a);
      double phiX2 = fundamental_function(X, 2 * a);
      EXPECT_GE(est, phiY / phiX2 * (1 - 1e-12) - 1e-9) << X.literal() << " " << Y.literal() << " a=" << a;
      if (phiX2 <= 2 * phiX) {
        ++doubling;
        EXPECT_GE(est, phiY / (2 * phiX) - 1e-9) << X.literal() << " " << Y.literal() << " a=" << a;
      }
    }
  });
  EXPECT_GT(doubling, 100);
}

TEST(Suptail, FloorCanFailWithoutDoubling) {
  // For q = inf the largest nonincreasing element of the unit ball of X is
  // 1/phi_X, so the exact supremum is sup_s w_Y(s)/phi_X(s + a) when Y also
  // has q = inf. Here phi_X(2) = 2.5 phi_X(1) and the supremum sits well
  // below phi_Y(1)/(2 phi_X(1)).
  auto X = LZSpace::parse("L(p=3/2,q=inf,a0=1,ainf=1)");
  auto Y = LZSpace::parse("L(p=3/2,q=inf,a0=0,ainf=-1/2)");
  const double a = 1;
  double exact = 0;
  for (int k = 0; k <= 20000; ++k) {
    double s = std::pow(10.0, -8 + 16.0 * k / 20000);
    exact = std::max(exact, Y.sup_weight(s) / fundamental_function(X, s + a));
  }
  double floor = fundamental_function(Y, a) / (2 * fundamental_function(X, a));
  EXPECT_LT(exact, 0.85 * floor);
  double est = suptail(X, Y, a).estimate;
  EXPECT_LE(est, exact * (1 + 1e-6));
  EXPECT_GE(est, exact * 0.99);
}

TEST(Suptail, EstimatesNeverExceedCertificates) {
  int certified = 0;
  for_each_instance(63, 40, [&](Rng& rng, int) {
    auto X = random_lz(rng, H), Y = random_lz(rng, H);
    double a = std::pow(10.0, double(rng() % 5) - 2);
    auto est = suptail(X, Y, a, {}, true);
    if (std::isinf(est.certificate)) return;
    ++certified;
    EXPECT_LE(est.estimate, est.certificate * (1 + 1e-6)) << X.literal() << " " << Y.literal();
  });
  EXPECT_GT(certified, 5);
}

TEST(Suptail, CurveIsMonotoneInA) {
  auto grid = log_grid(1e-2, 1e6, 9);
  auto X = LZSpace::parse("L(p=2,q=4,a0=0,ainf=1/2)"), Y = LZSpace::parse("L(p=3,q=2)");
  auto curve = suptail_curve(X, Y, grid);
  ASSERT_EQ(curve.size(), grid.size());
  for (size_t i = 0; i < curve.size(); ++i) {
    EXPECT_EQ(curve[i].a, grid[i]);
    EXPECT_GE(curve[i].estimate, curve[i].raw);
    if (i > 0) EXPECT_LE(curve[i].estimate, curve[i - 1].estimate);
  }
}

TEST(Suptail, RejectsBadArguments) {
  auto X = LZSpace::lebesgue(2);
  EXPECT_THROW(suptail(X, X, 0), BadInput);
  EXPECT_THROW(suptail(X, X, kInf), BadInput);
  EXPECT_THROW(suptail(LZSpace::lebesgue(2, U), X, 1), DomainMismatch);
}

TEST(HardyLocal, CriticalEqualDimensionVanishes) {
  // m = n: the kernel is bounded, so the estimate is at most phi_{X'}(1) phi_Y(a).
  auto X = LZSpace::lebesgue(2, U), Y = LZSpace::lebesgue(3, U);
  auto Xp = LZSpace::lebesgue(2, U);
  double prev = kInf;
  for (double a : {0.5, 0.1, 0.01, 0.001}) {
    double est = sup_hardy_local(X, Y, a, {3, 3, 0}, HardyForm::A1).estimate;
    EXPECT_LE(est, fundamental_function(Xp, 1 - 1e-12) * fundamental_function(Y, a) * (1 + 1e-9)) << a;
    EXPECT_LE(est, prev * (1 + 1e-9));
    prev = est;
  }
  // The estimate follows the bound's a^{1/3} decay.
  double first = sup_hardy_local(X, Y, 0.5, {3, 3, 0}, HardyForm::A1).estimate;
  EXPECT_LT(prev, 0.2 * first);
}

TEST(HardyLocal, HolderBoundAboveCriticalExponent) {
  // X = L^p, p > n/m: integral_0^a f* s^{-1+m/n} <= ||f||_p ||s^{-1+m/n} chi_(0,a)||_{p'}.
  const int m = 1, n = 3;
  const double p = 4, pp = 4.0 / 3.0;
  auto X = LZSpace::lebesgue(4, U);
  for (double a : {0.5, 0.05, 0.005}) {
    double e = (-1.0 + double(m) / n) * pp + 1;
    double holder = std::pow(std::pow(a, e) / e, 1 / pp);
    double est = sup_hardy_local(X, LZSpace::linf(U), a, {m, n, 0}, HardyForm::B1).estimate;
    EXPECT_LE(est, holder * (1 + 1e-9)) << a;
    EXPECT_GT(est, 0);
  }
  (void)p;
}

TEST(HardyLocal, CriticalLorentzSpaceStaysPositive) {
  // X = L^{n/m,1}: the candidate chi_(0,a)/phi_X(a) scores exactly 1 in the B1 form.
  auto X = LZSpace::lorentz(3, 1, U);
  for (double a : {0.5, 0.01, 1e-4}) {
    double est = sup_hardy_local(X, LZSpace::linf(U), a, {1, 3, 0}, HardyForm::B1).estimate;
    EXPECT_GE(est, 1 - 1e-9) << a;
  }
}

TEST(LimitProbe, SyntheticInputs) {
  auto grid = log_grid(1, 1e8, 12);
  std::vector<double> decay, flat, noisy;
  for (size_t i = 0; i < grid.size(); ++i) {
    decay.push_back(3 * std::pow(grid[i], -0.25));
    flat.push_back(1);
    noisy.push_back(i % 2 ? 0.2 : 1.0);
  }
  auto r = limit_probe(grid, decay, Direction::ToInfinity);
  EXPECT_EQ(r.cls, LimitClass::VanishingLimit);
  EXPECT_NEAR(r.exponent, -0.25, 0.02);
  EXPECT_EQ(limit_probe(grid, flat, Direction::ToInfinity).cls, LimitClass::PositiveLimit);
  EXPECT_EQ(limit_probe(grid, noisy, Direction::ToInfinity).cls, LimitClass::Inconclusive);
}

TEST(LimitProbe, TowardsZero) {
  auto grid = log_grid(1e-8, 1, 12);
  std::vector<double> vals;
  for (double a : grid) vals.push_back(std::pow(a, 0.5));
  auto r = limit_probe(grid, vals, Direction::ToZero);
  EXPECT_EQ(r.cls, LimitClass::VanishingLimit);
  EXPECT_NEAR(r.exponent, -0.5, 0.02);
  auto callable = limit_probe([](double a) { return 2 + 0 * a; }, grid, Direction::ToZero);
  EXPECT_EQ(callable.cls, LimitClass::PositiveLimit);
}

TEST(LimitProbe, RejectsMismatchedInput) {
  EXPECT_THROW(limit_probe({1, 2}, {1}, Direction::ToInfinity), BadInput);
}

TEST(Grids, ParseAndBuild) {
  auto g = parse_grid("log:1:1e4:5");
  ASSERT_EQ(g.size(), 5u);
  for (size_t i = 0; i < g.size(); ++i) EXPECT_NEAR(g[i], std::pow(10.0, double(i)), 1e-9 * g[i]);
  EXPECT_THROW(parse_grid("lin:1:2:3"), ParseError);
  EXPECT_THROW(parse_grid("log:1:2"), ParseError);
  EXPECT_THROW(parse_grid("log:1:2:x"), ParseError);
  EXPECT_EQ(parse_family("flat"), FamilyKind::FlatTruncations);
  EXPECT_EQ(family_name(parse_family("all")), "all");
  EXPECT_THROW(parse_family("nope"), ParseError);
}

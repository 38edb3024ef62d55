#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "generators.hpp"
#include "rsc/errors.hpp"
#include "rsc/suites.hpp"
#include "rsc/witness.hpp"

using namespace rsc;
using rsc::testing::for_each_instance;
using rsc::testing::near_rel;
using rsc::testing::rat;
using rsc::testing::step;

namespace {

const Domain H = Domain::HalfLine;
const Domain U = Domain::UnitInterval;

// Smoothstep of degree 2m+1: x^{m+1} sum_k C(m+k, k) C(2m+1, m-k) (-x)^k.
std::vector<Rational> smoothstep_oracle(int m) {
  auto binom = [](long n, long k) {
    mpz_class out;
    mpz_bin_uiui(out.get_mpz_t(), n, k);
    return Rational(out);
  };
  std::vector<Rational> c(2 * m + 2, Rational(0));
  for (int k = 0; k <= m; ++k) {
    Rational term = binom(m + k, k) * binom(2 * m + 1, m - k);
    c[m + 1 + k] = k % 2 ? Rational(-term) : term;
  }
  return c;
}

double factorial(int k) { return std::tgamma(k + 1.0); }

// (1/(k-1)!) integral_y^1 f(s) s^{-m+m/n} (s-y)^{k-1} ds by adaptive Gauss-Kronrod per piece.
double ball_g_oracle(const PiecewiseFn& f, int k, int m, int n, double y) {
  double total = 0;
  for (const auto& p : f.pieces()) {
    double lo = std::max(p.lo.get_d(), y), hi = p.hi ? p.hi->get_d() : 1.0;
    if (!(hi > lo) || p.value == 0) continue;
    auto integrand = [&](double s) {
      return std::pow(s, -m + double(m) / n) * std::pow(s - y, k - 1);
    };
    total += p.value.get_d() * boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, lo, hi, 15, 1e-13);
  }
  return total / factorial(k - 1);
}

// Nonincreasing simple function with bounded support on the half-line.
PiecewiseFn random_monotone(Rng& rng) {
  for (;;) {
    auto f = random_nonincreasing_step(rng, H, 5);
    if (!f.is_zero()) return f;
  }
}

// Nonincreasing f on (0,1) vanishing on [a, 1).
PiecewiseFn random_ball_input(Rng& rng, const Rational& a) {
  auto f = random_nonincreasing_step(rng, U, 5);
  f = restrict(f, 0, a);
  if (f.is_zero()) f = PiecewiseFn::indicator(U, 0, a / 2);
  return f;
}

}  // namespace

TEST(Cutoff, CoefficientsMatchSmoothstep) {
  EXPECT_EQ(CutoffSpec(0, 1, 1).coefficients(), (std::vector<Rational>{0, 0, 3, -2}));
  for (int m = 1; m <= 4; ++m) EXPECT_EQ(CutoffSpec(1, 2, m).coefficients(), smoothstep_oracle(m)) << m;
}

TEST(Cutoff, RangeFlatEndsAndDerivativeBounds) {
  for (int m = 1; m <= 3; ++m) {
    CutoffSpec eta(0.5, 2.0, m);
    ASSERT_EQ(eta.derivative_bounds().size(), size_t(m + 1));
    double prev = 0;
    for (int i = 0; i <= 3000; ++i) {
      double r = 3.0 * i / 3000;
      double v = eta(r);
      EXPECT_GE(v, 0);
      EXPECT_LE(v, 1);
      EXPECT_GE(v, prev - 1e-15);
      prev = v;
      if (r <= 0.5) EXPECT_EQ(v, 0);
      if (r >= 2.0) EXPECT_EQ(v, 1);
      for (int k = 1; k <= m; ++k) EXPECT_LE(std::abs(eta.derivative(k, r)), eta.derivative_bounds()[k] * (1 + 1e-12));
    }
    for (int k = 1; k <= m; ++k) {
      EXPECT_NEAR(eta.derivative(k, 0.5), 0, 1e-12);
      EXPECT_NEAR(eta.derivative(k, 2.0), 0, 1e-12);
    }
  }
}

TEST(UnitBallVolume, Values) {
  EXPECT_NEAR(unit_ball_volume(2), M_PI, 1e-14);
  EXPECT_NEAR(unit_ball_volume(3), 4 * M_PI / 3, 1e-14);
  EXPECT_NEAR(unit_ball_volume(4), M_PI * M_PI / 2, 1e-14);
}

TEST(EntireConstruction, ZeroInputGivesZero) {
  auto u = build_u_fa(PiecewiseFn::zero(H), 3, 2, 3);
  EXPECT_TRUE(u.is_zero());
  for (double r : {0.0, 0.5, 1.0, 10.0}) EXPECT_EQ(u(r), 0);
}

TEST(EntireConstruction, VanishesBelowAOverEight) {
  auto f = step(H, {1, 20, 40}, {5, 2, 1});
  auto u = build_u_fa(f, 8, 1, 3);
  for (int i = 0; i < 1000; ++i) {
    double t = double(i) / 1000;
    EXPECT_EQ(u.at_measure(t), 0) << t;
    EXPECT_EQ(u(std::cbrt(t)), 0) << t;
  }
  EXPECT_GT(u.at_measure(20), 0);
  EXPECT_EQ(max_below_vanishing_threshold(u), 0);
  for_each_instance(41, 200, [](Rng& rng, int) {
    auto g = random_monotone(rng);
    Rational a = 1 + random_rational(rng, 0, 12);
    int m = 1 + int(rng() % 3), n = 2 + int(rng() % 3);
    auto v = build_u_fa(g, a, m, n);
    EXPECT_EQ(max_below_vanishing_threshold(v), 0);
    for (int i = 1; i < 200; ++i) {
      double t = a.get_d() / 8 * i / 200;
      ASSERT_EQ(v(std::pow(t, 1.0 / n)), 0) << t;
    }
  });
}

TEST(EntireConstruction, SingleStepClosedForm) {
  // f = chi_(0,b), b >= a: g = b^{-m/n} chi_(0, b^{1/n}), v_m(r) = b^{-m/n} (b^{1/n} - r)_+^m / m!.
  for (int m : {1, 2, 3})
    for (int n : {2, 3}) {
      const double b = 10, a = 2;
      auto u = build_u_fa(PiecewiseFn::indicator(H, 0, 10), 2, m, n);
      ASSERT_TRUE(u.entire);
      const double beta = std::pow(b, 1.0 / n), c = std::pow(b, -double(m) / n);
      EXPECT_NEAR(u.r_support, beta, 1e-14);
      EXPECT_NEAR(u.entire->g(0.5 * beta), c, 1e-14);
      EXPECT_EQ(u.entire->g(1.01 * beta), 0);
      const double ramp_end = std::pow(a / 4, 1.0 / n);
      for (double r = ramp_end; r < beta * 1.2; r += 0.01) {
        double expect = c * std::pow(std::max(beta - r, 0.0), m) / factorial(m);
        EXPECT_NEAR(u(r), expect, 1e-12 * (1 + expect)) << m << " " << n << " " << r;
      }
    }
}

TEST(EntireConstruction, VChainDerivativeIdentity) {
  for_each_instance(42, 100, [](Rng& rng, int) {
    auto f = random_monotone(rng);
    Rational a = 1 + random_rational(rng, 0, 4);
    auto u = build_u_fa(f, a, 1 + int(rng() % 4), 2 + int(rng() % 3));
    EXPECT_LT(v_chain_error(u), 1e-4);
  });
}

TEST(EntireConstruction, RejectsBadInput) {
  EXPECT_THROW(build_u_fa(step(H, {1, 2}, {1, 2}), 1, 1, 2), BadInput);
  EXPECT_THROW(build_u_fa(PiecewiseFn::indicator(H, 0, 2), rat(1, 2), 1, 2), BadInput);
  EXPECT_THROW(build_u_fa(PiecewiseFn::constant(H, 1), 1, 1, 2), BadInput);
  EXPECT_THROW(build_u_fa(PiecewiseFn::indicator(U, 0, rat(1, 2)), 1, 1, 2), BadInput);
}

TEST(EntireConstruction, HomogeneousInF) {
  for_each_instance(43, 50, [](Rng& rng, int) {
    auto f = random_monotone(rng);
    Rational a = 1 + random_rational(rng, 0, 4), lam = random_rational(rng, 1, 5);
    int m = 1 + int(rng() % 2), n = 2 + int(rng() % 2);
    auto u = build_u_fa(f, a, m, n), v = build_u_fa(scale(f, lam), a, m, n);
    for (double r = 0; r < u.r_support + 0.5; r += 0.037)
      EXPECT_NEAR(v(r), lam.get_d() * u(r), 1e-12 * (1 + std::abs(v(r))));
  });
}

TEST(BallConstruction, ZeroInputGivesZero) {
  auto u = build_u_fRa(PiecewiseFn::zero(U), 1, rat(1, 2), 1, 3);
  EXPECT_TRUE(u.is_zero());
  EXPECT_EQ(u(0.3), 0);
}

TEST(BallConstruction, ClosedFormForIndicator) {
  // f = chi_(0,1), m = 1, n = 2: g_1(r) = integral_{r^2}^1 s^{-1/2} ds = 2(1 - r).
  auto u = build_u_fRa(PiecewiseFn::constant(U, 1), 1, 1, 1, 2);
  for (double r = 0; r < 1; r += 0.01) EXPECT_NEAR(u(r), 2 * (1 - r), 1e-12) << r;
}

TEST(BallConstruction, SupportRadius) {
  // f = chi_(0,1/8), n = 3: support radius (1/8)^{1/3} = 1/2.
  auto u = build_u_fRa(PiecewiseFn::indicator(U, 0, rat(1, 8)), 1, rat(1, 8), 1, 3);
  EXPECT_NEAR(u.r_support, 0.5, 1e-15);
  EXPECT_GT(u(0.49), 0);
  EXPECT_EQ(u(0.5), 0);
  EXPECT_EQ(u(0.75), 0);
}

TEST(BallConstruction, MatchesQuadratureOracle) {
  for_each_instance(44, 40, [](Rng& rng, int) {
    Rational a = random_rational(rng, 0, 1);
    if (a == 0) a = rat(1, 2);
    auto f = random_ball_input(rng, a);
    int n = 2 + int(rng() % 3), m = 1 + int(rng() % (n - 1));
    auto u = build_u_fRa(f, 1, a, m, n);
    for (double r : {0.3, 0.5, 0.7, 0.9}) {
      double expect = ball_g_oracle(f, m, m, n, std::pow(r, n));
      EXPECT_NEAR(u(r), expect, 1e-9 * (1 + expect)) << m << " " << n << " " << r;
    }
  });
}

TEST(BallConstruction, ProfileIsNonincreasing) {
  for_each_instance(45, 100, [](Rng& rng, int) {
    Rational a = random_rational(rng, 0, 1);
    if (a == 0) a = 1;
    auto f = random_ball_input(rng, a);
    int n = 2 + int(rng() % 3), m = 1 + int(rng() % (n - 1));
    auto u = build_u_fRa(f, random_rational(rng, 1, 4), a, m, n, random_rational(rng, 0, 3));
    EXPECT_TRUE(u.nonincreasing);
    double prev = kInf;
    for (int i = 0; i <= 500; ++i) {
      double v = u(0.002 + 0.998 * i / 500);
      EXPECT_GE(v, 0);
      EXPECT_LE(v, prev * (1 + 1e-12) + 1e-300);
      prev = v;
    }
  });
}

TEST(BallConstruction, RejectsBadInput) {
  auto f = PiecewiseFn::indicator(U, 0, rat(1, 2));
  EXPECT_THROW(build_u_fRa(f, 1, rat(1, 4), 1, 3), BadInput);  // support past a
  EXPECT_THROW(build_u_fRa(f, 0, rat(1, 2), 1, 3), BadInput);
  EXPECT_THROW(build_u_fRa(f, 1, rat(3, 2), 1, 3), BadInput);
  EXPECT_THROW(build_u_fRa(f, 1, rat(1, 2), 3, 3), BadInput);
  EXPECT_THROW(build_u_fRa(PiecewiseFn::indicator(H, 0, 1), 1, 1, 1, 3), BadInput);
}

TEST(ProfileNorms, ConeClosedForms) {
  // ||(1 - |x|/rho)_+||_p^p = n omega_n rho^n B(n, p + 1); |grad u| = 1/rho on B_rho.
  for (int n : {2, 3})
    for (double p : {1.0, 2.0, 3.0})
      for (double rho : {0.5, 2.0}) {
        auto u = radial_cone(n, rho);
        auto Lp = LZSpace::lebesgue(from_double(p));
        double w = n * unit_ball_volume(n) * std::pow(rho, n);
        double beta = std::tgamma(n) * std::tgamma(p + 1) / std::tgamma(n + p + 1);
        double expect = std::pow(w * beta, 1 / p);
        auto got = profile_norm(u, Lp);
        EXPECT_LE(got.lower, expect * (1 + 1e-9));
        EXPECT_GE(got.upper, expect * (1 - 1e-9));
        EXPECT_TRUE(near_rel(got.value(), expect, 1e-6)) << n << " " << p << " " << rho;
        double grad = std::pow(unit_ball_volume(n) * std::pow(rho, n), 1 / p) / rho;
        EXPECT_TRUE(near_rel(gradient_norm(u, Lp).value(), grad, 1e-6));
      }
}

TEST(ProfileNorms, DilationBound) {
  // u(lambda x) is D_{lambda^{-n}} in the measure coordinate.
  const std::vector<LZSpace> spaces{LZSpace::lebesgue(1), LZSpace::lebesgue(2), LZSpace::lorentz(3, 1),
                                    LZSpace::parse("L(p=2,q=4,a0=1/2,ainf=-1/2)"), LZSpace::linf()};
  for (int n : {2, 3})
    for (const auto& u : {radial_cone(n, 1), radial_tent(n, 2, 0.5)})
      for (const auto& S : spaces) {
        auto base = profile_norm(u, S);
        for (double lambda : {0.25, 0.5, 2.0, 4.0}) {
          double a = std::pow(lambda, -n);
          auto d = profile_norm(dilate_radial(u, lambda), S);
          EXPECT_LE(d.lower, std::max(1.0, a) * base.upper * (1 + 1e-9)) << S.literal() << " " << lambda;
        }
      }
}

TEST(RadialLemma, ConstantsBoundedAndScaleFree) {
  for (int n : {2, 3})
    for (double p : {1.0, 2.0, 3.0}) {
      auto cone = radial_cone(n, 1);
      std::vector<RadialProfile> family{cone, dilate_radial(cone, 0.5), dilate_radial(cone, 3)};
      for (double r0 : {1.0, 2.0, 4.0, 8.0}) family.push_back(radial_tent(n, r0, 0.5));
      auto rep = verify_radial_lemma(family, p, n);
      EXPECT_TRUE(rep.bounded);
      EXPECT_NEAR(rep.reference, std::pow(p / (n * unit_ball_volume(n)), 1 / p), 1e-14);
      EXPECT_GT(rep.min_constant, 0);
      EXPECT_LE(rep.max_constant, rep.reference * (1 + 1e-9));
      // The inequality is invariant under x -> lambda x.
      EXPECT_TRUE(near_rel(rep.rows[1].constant, rep.rows[0].constant, 0.02)) << n << " " << p;
      EXPECT_TRUE(near_rel(rep.rows[2].constant, rep.rows[0].constant, 0.02)) << n << " " << p;
    }
}

TEST(RadialLemma, TentPeaksDecayWithRadius) {
  // Peaks stay 1 while ||u|| grows like r0^{(n-1)/p}: the constant stays bounded.
  auto rep = verify_radial_lemma(default_tent_family(3), 2, 3);
  for (const auto& row : rep.rows) EXPECT_NEAR(row.peak, 1, 1e-2);
  for (size_t i = 1; i < rep.rows.size(); ++i) EXPECT_GT(rep.rows[i].u_norm, rep.rows[i - 1].u_norm);
  EXPECT_TRUE(rep.bounded);
}

TEST(RadialLemma, RejectsJumps) {
  auto u = radial_step(3, PiecewiseFn::indicator(H, 0, 1));
  EXPECT_FALSE(u.continuous);
  EXPECT_THROW(verify_radial_lemma({u}, 2, 3), NonSmoothProfile);
}

TEST(TailEstimate, WithinEnvelopeAndVanishingPastSupport) {
  const std::vector<double> grid{1, 2, 4, 8, 16, 32, 64};
  for (int n : {2, 3}) {
    auto rep = verify_tail_estimate(default_tent_family(n), LZSpace::lebesgue(2), LZSpace::lebesgue(4), grid);
    EXPECT_NEAR(rep.envelope, 6 / (n * unit_ball_volume(n)) + 12, 1e-12);
    EXPECT_TRUE(rep.within_envelope);
    ASSERT_EQ(rep.rows.size(), 4 * grid.size());
    for (const auto& row : rep.rows) {
      // Tents reach |x| = r0 + 1/2 <= 8.5.
      if (row.R >= 16) EXPECT_EQ(row.lhs, 0);
      EXPECT_LE(row.ratio, 2 * rep.envelope);
      if (row.certified_ratio > 0) EXPECT_LE(row.certified_ratio, rep.envelope);
    }
    // The left side is nonincreasing in R for each sample.
    for (size_t i = 0; i < 4; ++i)
      for (size_t j = 1; j < grid.size(); ++j)
        EXPECT_LE(rep.rows[i * grid.size() + j].lhs, rep.rows[i * grid.size() + j - 1].lhs * (1 + 1e-9));
  }
}

TEST(Construction, DefaultFamiliesAreStable) {
  ConstructionSetup e;
  e.m = 1, e.n = 2, e.X = LZSpace::lebesgue(2), e.Y = LZSpace::parse("L(p=4,q=4,a0=0,ainf=1/2)");
  auto re = verify_construction_bounds(e, default_construction_family(ConstructionKind::Entire));
  EXPECT_TRUE(re.stable);
  EXPECT_LT(re.c1_spread, 10);
  EXPECT_LT(re.c2_spread, 10);
  for (const auto& row : re.rows) {
    EXPECT_TRUE(std::isfinite(row.c1));
    EXPECT_GT(row.c2, 0);
    EXPECT_TRUE(row.source_bound_ok);
  }

  ConstructionSetup b;
  b.kind = ConstructionKind::Ball, b.m = 1, b.n = 3, b.alpha = 2;
  b.X = LZSpace::lebesgue(2, U), b.Y = LZSpace::lebesgue(4, U);
  auto rb = verify_construction_bounds(b, default_construction_family(ConstructionKind::Ball));
  EXPECT_TRUE(rb.stable);
  EXPECT_LT(rb.c2_spread, 10);
}

TEST(Construction, RatiosInvariantUnderScaling) {
  ConstructionSetup e;
  e.m = 2, e.n = 3, e.X = LZSpace::lebesgue(2), e.Y = LZSpace::lebesgue(4);
  auto family = default_construction_family(ConstructionKind::Entire);
  auto scaled = family;
  for (auto& s : scaled) s.f = scale(s.f, 7);
  auto r1 = verify_construction_bounds(e, family), r7 = verify_construction_bounds(e, scaled);
  ASSERT_EQ(r1.rows.size(), r7.rows.size());
  for (size_t i = 0; i < r1.rows.size(); ++i) {
    EXPECT_TRUE(near_rel(r7.rows[i].f_norm, 7 * r1.rows[i].f_norm, 1e-12));
    EXPECT_TRUE(near_rel(r7.rows[i].lhs_Y, 7 * r1.rows[i].lhs_Y, 1e-12));
    EXPECT_TRUE(near_rel(r7.rows[i].c1, r1.rows[i].c1, 1e-6));
    EXPECT_TRUE(near_rel(r7.rows[i].c2, r1.rows[i].c2, 1e-6));
  }
}

TEST(Construction, DomainMismatchIsReported) {
  ConstructionSetup b;
  b.kind = ConstructionKind::Ball;
  EXPECT_THROW(verify_construction_bounds(b, default_construction_family(ConstructionKind::Ball)), DomainMismatch);
}

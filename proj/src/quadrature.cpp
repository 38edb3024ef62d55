// Quadrature kernel for integrals of t^c l(t)^e ll(t)^d.
//
// On each side of t = 1 the substitution t = exp(-+u) turns the integrand
// into exp(-k u) (1+u)^e (1 + log(1+u))^d with k = +-(c+1). When k = 0 a
// second substitution w = log(1+u) restores exponential decay.

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "rsc/errors.hpp"
#include "rsc/spaces.hpp"

namespace rsc {

namespace {

constexpr double kQuadTol = 1e-13;

bool integrable_at_zero(const Rational& c, const Rational& e, const Rational& d) {
  return c > -1 || (c == -1 && (e < -1 || (e == -1 && d < -1)));
}

bool integrable_at_infinity(const Rational& c, const Rational& e, const Rational& d) {
  return c < -1 || (c == -1 && (e < -1 || (e == -1 && d < -1)));
}

double finite_gk(const std::function<double(double)>& f, double u0, double u1, double scale) {
  // Chunking keeps narrow peaks near either end visible to the adaptive rule.
  double len = u1 - u0;
  double chunk = std::max(4.0, 8.0 / std::max(scale, 1e-300));
  int pieces = static_cast<int>(std::min(256.0, std::ceil(len / chunk)));
  pieces = std::max(pieces, 1);
  double h = len / pieces, acc = 0;
  for (int i = 0; i < pieces; ++i) {
    double lo = u0 + i * h, hi = (i + 1 == pieces) ? u1 : u0 + (i + 1) * h;
    // Boost's error estimate stalls on short intervals away from the origin,
    // so each chunk is mapped onto [0, 1].
    double w = hi - lo, err = 0;
    std::function<double(double)> unit = [&](double x) { return w * f(lo + x * w); };
    acc += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(unit, 0.0, 1.0, 20, kQuadTol, &err);
  }
  return acc;
}

double semi_infinite(const std::function<double(double)>& f, double u0) {
  boost::math::quadrature::exp_sinh<double> integrator;
  double err = 0, l1 = 0;
  // exp_sinh integrates over (a, inf); shift so that the rule starts at 0.
  auto shifted = [&](double x) { return f(u0 + x); };
  return integrator.integrate(shifted, 0.0, std::numeric_limits<double>::infinity(), kQuadTol, &err, &l1);
}

// integral over [u0, u1] (u1 may be inf) of exp(-k u)(1+u)^e(1+log1p(u))^d.
double kernel_integral(double k, double e, double d, double u0, double u1) {
  if (!(u1 > u0)) return 0.0;
  if (k == 0.0 && (std::isinf(u1) || u1 - u0 > 50.0)) {
    // w = log(1+u): integrand exp((e+1) w) (1+w)^d
    double w0 = std::log1p(u0), w1 = std::isinf(u1) ? u1 : std::log1p(u1);
    if (e == -1.0) {
      if (d == -1.0) return std::log1p(w1) - std::log1p(w0);
      double p = d + 1.0;
      double hi = std::isinf(w1) ? 0.0 : std::pow(1.0 + w1, p);
      return (hi - std::pow(1.0 + w0, p)) / p;
    }
    double rate = -(e + 1.0);
    // Exponent form: the factors overflow separately long before their product does.
    auto g = [=](double w) {
      double x = -rate * w;
      if (d != 0.0) x += d * std::log1p(w);
      return std::exp(x);
    };
    if (std::isinf(w1)) return semi_infinite(g, w0);
    return finite_gk(g, w0, w1, std::abs(rate));
  }
  auto f = [=](double u) {
    double x = -k * u;
    if (e != 0.0) x += e * std::log1p(u);
    if (d != 0.0) x += d * std::log1p(std::log1p(u));
    return std::exp(x);
  };
  if (std::isinf(u1)) return semi_infinite(f, u0);
  return finite_gk(f, u0, u1, std::abs(k));
}

double closed_form(double c, double a, double b) {
  if (c == -1.0) return std::log(b) - std::log(a);
  double p = c + 1.0;
  if (a > 0.0 && !std::isinf(b)) return std::pow(a, p) * std::expm1(p * std::log(b / a)) / p;
  double hi = std::isinf(b) ? 0.0 : std::pow(b, p);
  double lo = (a == 0.0) ? 0.0 : std::pow(a, p);
  return (hi - lo) / p;
}

}  // namespace

double power_log_integral(const Rational& c, const Rational& e, const Rational& d, double a, double b) {
  if (a < 0 || std::isnan(a) || std::isnan(b)) throw BadInput("power_log_integral needs 0 <= a");
  if (!(b > a)) return 0.0;
  if (a == 0.0 && !integrable_at_zero(c, e, d)) throw DivergentIntegral("0");
  if (std::isinf(b) && !integrable_at_infinity(c, e, d)) throw DivergentIntegral("inf");
  double cd = c.get_d(), ed = e.get_d(), dd = d.get_d();
  if (e == 0 && d == 0) return closed_form(cd, a, b);
  double total = 0.0;
  if (a < 1.0) {
    double hi = std::min(b, 1.0);
    double u0 = -std::log(hi);
    double u1 = (a == 0.0) ? kInf : -std::log(a);
    total += kernel_integral(cd + 1.0, ed, dd, u0, u1);
  }
  if (b > 1.0) {
    double lo = std::max(a, 1.0);
    double u0 = std::log(lo);
    double u1 = std::isinf(b) ? kInf : std::log(b);
    total += kernel_integral(-(cd + 1.0), ed, dd, u0, u1);
  }
  return total;
}

}  // namespace rsc

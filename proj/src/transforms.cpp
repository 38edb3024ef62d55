#include "rsc/transforms.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>

#include "rsc/errors.hpp"

namespace rsc {

void CopsonParams::validate() const {
  if (m < 1) throw BadInput("m must be >= 1");
  if (n < 2) throw BadInput("n must be >= 2");
  if (alpha < 0) throw BadInput("alpha must be >= 0");
}

namespace {

// c * t^e with the right limit at t = 0.
double power_term(double c, double e, double t) {
  if (c == 0.0) return 0.0;
  if (t == 0.0) {
    if (e > 0) return 0.0;
    if (e == 0) return c;
    return c > 0 ? kInf : -kInf;
  }
  return c * std::pow(t, e);
}

}  // namespace

double PowerPiece::eval(double t) const {
  return power_term(A, beta, t) + power_term(B, beta + gamma, t);
}

PowerProfile::PowerProfile(std::vector<PowerPiece> pieces) : pieces_(std::move(pieces)) {}

double PowerProfile::operator()(double t) const {
  for (const auto& p : pieces_)
    if (t >= p.lo && t < p.hi) return p.eval(t);
  return 0.0;
}

namespace {

// Interior critical point of A t^b + B t^{b+g}, if any.
std::optional<double> critical_point(const PowerPiece& p, double lo, double hi) {
  double s = p.beta + p.gamma;
  if (p.B == 0.0 || s == 0.0 || p.gamma == 0.0) {
    return std::nullopt;
  }
  double ratio = -p.A * p.beta / (p.B * s);
  if (!(ratio > 0)) return std::nullopt;
  double t = std::pow(ratio, 1.0 / p.gamma);
  if (t > lo && t < hi) return t;
  return std::nullopt;
}

}  // namespace

std::pair<double, double> PowerProfile::range_on(double lo, double hi) const {
  double mn = kInf, mx = -kInf;
  for (const auto& p : pieces_) {
    double a = std::max(lo, p.lo), b = std::min(hi, p.hi);
    if (a > b) continue;
    for (double t : {a, b}) {
      double v = p.eval(t);
      mn = std::min(mn, v);
      mx = std::max(mx, v);
    }
    if (auto c = critical_point(p, a, b)) {
      double v = p.eval(*c);
      mn = std::min(mn, v);
      mx = std::max(mx, v);
    }
  }
  if (mn > mx) return {0.0, 0.0};
  return {mn, mx};
}

double PowerProfile::sup() const {
  if (pieces_.empty()) return 0.0;
  return range_on(0.0, 1.0).second;
}

double PowerProfile::integral() const {
  double acc = 0;
  auto prim = [](double c, double e, double lo, double hi) {
    if (c == 0.0) return 0.0;
    double k = e + 1.0;
    return c * (std::pow(hi, k) - (lo == 0.0 ? 0.0 : std::pow(lo, k))) / k;
  };
  for (const auto& p : pieces_) acc += prim(p.A, p.beta, p.lo, p.hi) + prim(p.B, p.beta + p.gamma, p.lo, p.hi);
  return acc;
}

bool PowerProfile::is_nonincreasing() const {
  // Rounding in the closed forms is relative to the largest value, not the local one.
  double scale = 1e-300;
  for (const auto& p : pieces_) scale = std::max({scale, std::abs(p.eval(p.lo)), std::abs(p.eval(p.hi))});
  const double slack = 1e-12 * scale;
  double prev = kInf;
  for (const auto& p : pieces_) {
    if (critical_point(p, p.lo, p.hi)) return false;
    double a = p.eval(p.lo), b = p.eval(p.hi);
    if (b > a + slack || a > prev + slack) return false;
    prev = b;
  }
  return true;
}

Enclosure PowerProfile::envelope(double rel_gap, size_t max_pieces) const {
  Enclosure out;
  out.lower = PiecewiseFn::zero(Domain::UnitInterval);
  out.upper = out.lower;
  double S = std::max(std::abs(range_on(0.0, 1.0).first), std::abs(sup()));
  if (pieces_.empty() || S == 0.0) return out;
  double tol = rel_gap * S;
  double margin = 1e-14 * S;
  struct Cell {
    double lo, hi;
  };
  std::vector<double> breaks;
  std::vector<double> lows, highs;
  std::vector<Cell> stack;
  for (auto it = pieces_.rbegin(); it != pieces_.rend(); ++it) stack.push_back({it->lo, it->hi});
  while (!stack.empty()) {
    Cell c = stack.back();
    stack.pop_back();
    auto [mn, mx] = range_on(c.lo, c.hi);
    bool tiny = c.hi - c.lo <= 1e-15 * c.hi;
    if (mx - mn <= tol || tiny) {
      breaks.push_back(c.hi);
      lows.push_back(std::max(0.0, mn - margin));
      highs.push_back(mx + margin);
      out.max_gap = std::max(out.max_gap, mx - mn);
      if (breaks.size() > max_pieces)
        throw ResourceExhausted("envelope needs more than " + std::to_string(max_pieces) + " pieces");
      continue;
    }
    double mid;
    if (c.lo == 0.0)
      mid = c.hi / 16.0;
    else if (c.hi / c.lo > 4.0)
      mid = std::sqrt(c.lo * c.hi);
    else
      mid = 0.5 * (c.lo + c.hi);
    stack.push_back({mid, c.hi});
    stack.push_back({c.lo, mid});
  }
  std::vector<Rational> rb, lv, hv;
  rb.reserve(breaks.size());
  for (size_t i = 0; i + 1 < breaks.size(); ++i) {
    rb.push_back(from_double(breaks[i]));
    lv.push_back(from_double(lows[i]));
    hv.push_back(from_double(highs[i]));
  }
  out.lower = PiecewiseFn(Domain::UnitInterval, rb, std::move(lv), from_double(lows.back()));
  out.upper = PiecewiseFn(Domain::UnitInterval, std::move(rb), std::move(hv), from_double(highs.back()));
  return out;
}

namespace {

// Pieces of t -> t^beta * integral_{t^kappa}^1 f(s) s^{mu-1} ds.
PowerProfile power_kernel(const PiecewiseFn& f, double mu, double kappa, double beta) {
  if (f.domain() != Domain::UnitInterval) throw DomainMismatch();
  auto pcs = f.pieces();
  std::vector<double> lo(pcs.size()), hi(pcs.size()), val(pcs.size());
  for (size_t i = 0; i < pcs.size(); ++i) {
    lo[i] = pcs[i].lo.get_d();
    hi[i] = pcs[i].hi->get_d();
    val[i] = pcs[i].value.get_d();
  }
  auto pw = [mu](double s) { return s == 0.0 ? (mu > 0 ? 0.0 : kInf) : std::pow(s, mu); };
  std::vector<PowerPiece> out(pcs.size());
  double suffix = 0.0;  // integral over the pieces to the right of i
  for (size_t k = pcs.size(); k-- > 0;) {
    PowerPiece p;
    p.lo = lo[k] == 0.0 ? 0.0 : std::pow(lo[k], 1.0 / kappa);
    p.hi = std::pow(hi[k], 1.0 / kappa);
    p.beta = beta;
    p.gamma = kappa * mu;
    p.A = suffix + (val[k] == 0.0 ? 0.0 : val[k] * pw(hi[k]) / mu);
    p.B = -val[k] / mu;
    out[k] = p;
    if (val[k] != 0.0) suffix += val[k] * (pw(hi[k]) - pw(lo[k])) / mu;
  }
  return PowerProfile(std::move(out));
}

}  // namespace

PowerProfile copson(const PiecewiseFn& f, const CopsonParams& params) {
  params.validate();
  double mu = static_cast<double>(params.m) / params.n;
  double kappa = params.n / (params.n + params.alpha.get_d());
  return power_kernel(f, mu, kappa, 0.0);
}

PowerProfile t_alpha_beta(const PiecewiseFn& f, const Rational& a, const Rational& b) {
  if (a == 0) throw BadInput("t_alpha_beta needs a != 0");
  Rational floor_b = a < 0 ? Rational(-a) : Rational(0);
  if (b < floor_b) throw BadInput("t_alpha_beta needs b >= max{0, -a}");
  return power_kernel(f, a.get_d(), 1.0, b.get_d());
}

namespace {

// Gauss-Kronrod on [a, b] after mapping onto [0, 1]; Boost's error estimate
// stalls on short intervals otherwise.
double unit_gk(const std::function<double(double)>& f, double a, double b, double tol) {
  double w = b - a, err = 0;
  std::function<double(double)> g = [&](double x) { return w * f(a + x * w); };
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(g, 0.0, 1.0, 20, tol, &err);
}

// Largest value of score on [llo, lhi] (log scale): dense sampling, then golden section.
double log_scale_max(const std::function<double(double)>& score, double llo, double lhi) {
  const int N = 96;
  int arg = 0;
  double bv = -1;
  for (int i = 0; i <= N; ++i) {
    double v = score(llo + (lhi - llo) * i / N);
    if (v > bv) bv = v, arg = i;
  }
  double a = llo + (lhi - llo) * std::max(arg - 1, 0) / N;
  double b = llo + (lhi - llo) * std::min(arg + 1, N) / N;
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int it = 0; it < 60; ++it) {
    double c = b - g * (b - a), d = a + g * (b - a);
    if (score(c) > score(d))
      b = d;
    else
      a = c;
  }
  return std::max(bv, score(0.5 * (a + b)));
}

}  // namespace

double lz_norm_callable(const std::function<double(double)>& P, std::vector<double> breaks, const LZSpace& space,
                        double cutoff) {
  if (space.domain() == Domain::UnitInterval) cutoff = std::min(cutoff, 1.0);
  if (!(cutoff > 0)) return 0.0;
  if (std::isinf(cutoff)) throw BadInput("profile norms need a finite cutoff");
  breaks.push_back(1.0);  // the weight changes its exponents at t = 1
  std::vector<double> ends;
  for (double b : breaks)
    if (b > 0 && b < cutoff) ends.push_back(b);
  ends.push_back(cutoff);
  std::sort(ends.begin(), ends.end());
  ends.erase(std::unique(ends.begin(), ends.end()), ends.end());

  if (space.q().is_inf()) {
    double best = 0.0, lo = 0.0;
    for (double hi : ends) {
      double llo = lo > 0 ? std::log(lo) : std::log(hi) - 60.0, lhi = std::log(hi);
      // Sample strictly inside the segment: P may jump at its ends.
      double shrink = 1e-12 * std::max(1.0, std::abs(lhi - llo));
      auto score = [&](double u) {
        double t = std::exp(u);
        return P(t) * space.sup_weight(t);
      };
      best = std::max(best, log_scale_max(score, llo + (lo > 0 ? shrink : 0.0), lhi - shrink));
      lo = hi;
    }
    return best;
  }
  double q = space.q().value().get_d();
  double c = q * space.p().reciprocal().value().get_d() - 1.0;
  // u = log t; the integrand P^q t^{c+1} l^{q alpha} ll^{q beta} is assembled
  // as one exponential, since its factors overflow separately near t = 0.
  // Where t underflows, P is evaluated at the smallest positive double: for
  // p = inf the weight decays only polynomially in u, so that tail still counts.
  std::function<double(double)> integrand = [&](double u) {
    double t = std::max(std::exp(u), std::numeric_limits<double>::denorm_min());
    double v = P(t);
    if (v <= 0.0) return 0.0;
    double x = q * std::log(v) + (c + 1.0) * u;
    const Rational& al = space.alpha_at(t);
    const Rational& be = space.beta_at(t);
    double l = 1.0 + std::abs(u);
    if (al != 0) x += q * al.get_d() * std::log(l);
    if (be != 0) x += q * be.get_d() * std::log(1.0 + std::log(l));
    return std::exp(x);
  };
  double acc = 0.0, lo = 0.0;
  for (double hi : ends) {
    double top = std::log(hi);
    if (lo == 0.0) {
      boost::math::quadrature::exp_sinh<double> es;
      double l1 = 0, err = 0;
      auto reflected = [&](double x) { return integrand(top - x); };
      acc += es.integrate(reflected, 0.0, kInf, 1e-12, &err, &l1);
    } else {
      double bottom = std::log(lo);
      int chunks = std::max(1, static_cast<int>(std::ceil((top - bottom) / 4.0)));
      for (int i = 0; i < chunks; ++i)
        acc += unit_gk(integrand, bottom + (top - bottom) * i / chunks, bottom + (top - bottom) * (i + 1) / chunks,
                       1e-12);
    }
    lo = hi;
  }
  return std::pow(acc, 1.0 / q);
}

double lz_norm_profile(const PowerProfile& F, const LZSpace& space, double cutoff) {
  std::vector<double> breaks;
  for (const auto& p : F.pieces()) breaks.push_back(p.hi);
  return lz_norm_callable([&](double t) { return F(t); }, breaks, space, std::min(cutoff, 1.0));
}

namespace {

void check_intervals(const std::vector<Interval>& intervals, Rational& delta) {
  if (intervals.empty()) throw BadIntervals("at least one interval is required");
  delta = intervals.front().hi - intervals.front().lo;
  if (delta <= 0) throw BadIntervals("intervals must have positive length");
  for (const auto& I : intervals) {
    if (I.lo < 0) throw BadIntervals("intervals must lie in (0, inf)");
    if (I.hi - I.lo != delta) throw BadIntervals("intervals must share a common length");
  }
  std::vector<Interval> sorted = intervals;
  std::sort(sorted.begin(), sorted.end(), [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
  for (size_t i = 0; i + 1 < sorted.size(); ++i)
    if (sorted[i].hi > sorted[i + 1].lo) throw BadIntervals("intervals overlap");
}

Rational integral_over(const PiecewiseFn& g, const Interval& I) {
  if (g.domain() == Domain::UnitInterval && I.hi > 1) throw BadIntervals("interval leaves (0,1)");
  return integral_to(g, I.hi) - integral_to(g, I.lo);
}

// Step function with the given heights on nonoverlapping intervals.
PiecewiseFn assemble(Domain d, std::vector<std::pair<Interval, Rational>> parts) {
  std::sort(parts.begin(), parts.end(), [](const auto& x, const auto& y) { return x.first.lo < y.first.lo; });
  std::vector<Rational> breaks, values;
  Rational end = 0;
  for (const auto& [I, h] : parts) {
    if (I.lo > end) {
      breaks.push_back(I.lo);
      values.push_back(0);
    }
    breaks.push_back(I.hi);
    values.push_back(h);
    end = I.hi;
  }
  return PiecewiseFn(d, std::move(breaks), std::move(values), 0);
}

}  // namespace

PiecewiseFn averaging(const PiecewiseFn& g, const std::vector<Interval>& intervals) {
  Rational delta;
  check_intervals(intervals, delta);
  std::vector<Rational> ints;
  for (const auto& I : intervals) ints.push_back(integral_over(g, I));
  std::vector<std::pair<Interval, Rational>> parts;
  for (size_t j = 0; j + 1 < intervals.size(); ++j)
    parts.emplace_back(intervals[j], (ints[j] + ints[j + 1]) / delta);
  return assemble(g.domain(), std::move(parts));
}

PiecewiseFn averaging_core(const PiecewiseFn& h, const std::vector<Interval>& intervals) {
  Rational delta;
  check_intervals(intervals, delta);
  std::vector<std::pair<Interval, Rational>> parts;
  for (const auto& I : intervals) parts.emplace_back(I, integral_over(h, I) / delta);
  return assemble(h.domain(), std::move(parts));
}

namespace {

// Growth of phi_X(t) as t -> inf, as t^P l^L ll^LL.
struct Order {
  Rational P = 0, L = 0, LL = 0;
};

Order fundamental_growth(const LZSpace& X) {
  const Rational& ai = X.ainf();
  const Rational& bi = X.binf();
  if (X.p().is_finite()) return {X.p().reciprocal().value(), ai, bi};
  if (X.q().is_finite()) {
    Rational iq = X.q().reciprocal().value();
    if (ai + iq > 0) return {0, ai + iq, bi};
    if (ai + iq == 0 && bi + iq > 0) return {0, 0, bi + iq};
    return {};
  }
  if (ai > 0) return {0, ai, bi};
  if (ai == 0 && bi > 0) return {0, 0, bi};
  return {};
}

}  // namespace

TailCutBound tail_cut_bound(const LZSpace& X, const LZSpace& Y, double a) {
  if (!(a > 0)) throw BadInput("tail_cut_bound needs a > 0");
  if (X.domain() != Domain::HalfLine || Y.domain() != Domain::HalfLine) throw DomainMismatch();
  TailCutBound out;
  out.fundamental_ratio = fundamental_function(Y, a) / fundamental_function(X, a);
  Order phi = fundamental_growth(X);
  Rational inv_r = Y.p().reciprocal().value();
  auto log_w_over_phi = [&](double u) {
    // log of t^{1/r} l^B ll^B' / phi_X(t) at t = e^u (the 1/s part is handled by the caller)
    double t = std::exp(u);
    double v = u * inv_r.get_d() - std::log(fundamental_function(X, t));
    if (Y.ainf() != 0) v += Y.ainf().get_d() * std::log(ell(t));
    if (Y.binf() != 0) v += Y.binf().get_d() * std::log(ell_ell(t));
    return v;
  };
  const double u0 = std::log(a);
  if (Y.q().is_inf()) {
    Rational P = inv_r - phi.P, L = Y.ainf() - phi.L, LL = Y.binf() - phi.LL;
    bool bounded = P < 0 || (P == 0 && (L < 0 || (L == 0 && LL <= 0)));
    if (!bounded) {
      out.tail_majorant = kInf;
    } else {
      double best = -kInf;
      const int N = 1200;
      for (int i = 0; i <= N; ++i) best = std::max(best, log_w_over_phi(u0 + 60.0 * i / N));
      out.tail_majorant = std::exp(best);
    }
    out.total = out.fundamental_ratio + out.tail_majorant;
    return out;
  }
  Rational s = Y.q().value();
  Rational P = s * inv_r - 1 - s * phi.P;
  Rational L = s * (Y.ainf() - phi.L), LL = s * (Y.binf() - phi.LL);
  bool converges = P < -1 || (P == -1 && (L < -1 || (L == -1 && LL < -1)));
  double rate = Rational(-(P + 1)).get_d();
  const double u_max = 700.0;
  if (!converges || P == -1 || rate < 0.02 || rate * (u_max - u0) < 46.0) {
    out.tail_majorant = kInf;
  } else {
    double sd = s.get_d();
    auto integrand = [&](double x) {
      double u = u0 + x;
      if (u > u_max) return 0.0;
      // w^s / phi^s * t with w = t^{1/r - 1/s} ...: exponent of t collapses to s/r
      return std::exp(sd * log_w_over_phi(u));
    };
    boost::math::quadrature::exp_sinh<double> es;
    double err = 0, l1 = 0;
    double I = es.integrate(integrand, 0.0, kInf, 1e-12, &err, &l1);
    out.tail_majorant = std::pow(I, 1.0 / sd);
  }
  out.total = out.fundamental_ratio + out.tail_majorant;
  return out;
}

}  // namespace rsc

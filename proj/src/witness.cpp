#include "rsc/witness.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "rsc/errors.hpp"
#include "rsc/parallel.hpp"

namespace rsc {

namespace {

double binomial(int n, int k) {
  double b = 1;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

double factorial(int k) {
  double f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

Rational rational_binomial(int n, int k) {
  Rational b = 1;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

// Coefficients of the k-th derivative of sum_j c_j x^j.
std::vector<Rational> differentiate(const std::vector<Rational>& c, int k) {
  std::vector<Rational> out;
  for (size_t j = k; j < c.size(); ++j) {
    Rational f = c[j];
    for (int i = 0; i < k; ++i) f *= static_cast<long>(j - i);
    out.push_back(f);
  }
  return out;
}

double horner(const std::vector<double>& c, double x) {
  double v = 0;
  for (size_t j = c.size(); j-- > 0;) v = v * x + c[j];
  return v;
}

std::vector<double> to_doubles(const std::vector<Rational>& c) {
  std::vector<double> out;
  for (const auto& v : c) out.push_back(v.get_d());
  return out;
}

bool is_plain_power(const LZSpace& S) {
  return S.a0() == 0 && S.ainf() == 0 && !S.has_double_log();
}

bool is_lebesgue(const LZSpace& S) { return S.p() == S.q() && is_plain_power(S); }

double spread(const std::vector<double>& v) {
  double lo = kInf, hi = 0;
  for (double x : v) {
    if (!(x > 0) || !std::isfinite(x)) continue;
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  return hi > 0 ? hi / lo : 1.0;
}

}  // namespace

double unit_ball_volume(int n) {
  return std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

// --- cutoff --------------------------------------------------------------

CutoffSpec::CutoffSpec(double lo, double hi, int m) : lo_(lo), hi_(hi), m_(m) {
  if (!(hi > lo) || m < 0) throw BadInput("cutoff needs lo < hi and m >= 0");
  // S(x) = x^{m+1} sum_{k<=m} C(m+k,k) (1-x)^k
  coeffs_.assign(2 * m + 2, Rational(0));
  for (int k = 0; k <= m; ++k) {
    Rational ck = rational_binomial(m + k, k);
    for (int i = 0; i <= k; ++i) {
      Rational term = ck * rational_binomial(k, i);
      if (i % 2) term = -term;
      coeffs_[m + 1 + i] += term;
    }
  }
  // sup |S^{(k)}| on [0,1]: sample maximum plus the Lipschitz slack of the
  // next derivative, so the result is an upper bound.
  const int N = 4096;
  const double width = hi - lo;
  for (int k = 0; k <= m; ++k) {
    auto dk = to_doubles(differentiate(coeffs_, k));
    auto dk1 = to_doubles(differentiate(coeffs_, k + 1));
    double lip = 0;
    for (double c : dk1) lip += std::abs(c);
    double best = 0;
    for (int i = 0; i <= N; ++i) best = std::max(best, std::abs(horner(dk, static_cast<double>(i) / N)));
    bounds_.push_back((best + 0.5 * lip / N) / std::pow(width, k));
  }
}

double CutoffSpec::derivative(int k, double r) const {
  if (r <= lo_) return 0.0;
  if (r >= hi_) return k == 0 ? 1.0 : 0.0;
  const double width = hi_ - lo_;
  double x = (r - lo_) / width;
  return horner(to_doubles(differentiate(coeffs_, k)), x) / std::pow(width, k);
}

// --- closed-form pieces ----------------------------------------------------

double EntireParts::g(double r) const {
  double s = 0;
  for (size_t j = 0; j < c.size(); ++j)
    if (beta[j] > r) s += c[j];
  return s;
}

double EntireParts::v(int j, double r) const {
  if (j == 0) return g(r);
  double s = 0;
  for (size_t i = 0; i < c.size(); ++i)
    if (beta[i] > r) s += c[i] * std::pow(beta[i] - r, j);
  return s / factorial(j);
}

double EntireParts::envelope(double r) const {
  double s = 0;
  for (size_t j = 0; j < c.size(); ++j)
    if (beta[j] > r) s += c[j] * (std::pow(beta[j], m) - std::pow(r, m)) / m;
  return s + g(r);
}

double BallParts::f(double y) const {
  for (size_t i = 0; i < lo.size(); ++i)
    if (y >= lo[i] && y < hi[i]) return height[i];
  return 0.0;
}

double BallParts::G(int k, double y) const {
  const double mn = static_cast<double>(m) / n;
  if (k == 0) return f(y) * std::pow(y, -m + mn);
  double acc = 0;
  for (size_t p = 0; p < lo.size(); ++p) {
    if (hi[p] <= y) continue;
    double L = std::max(y, lo[p]), H = hi[p];
    double part = 0;
    for (int i = 0; i < k; ++i) {
      double coef = binomial(k - 1, i) * std::pow(-y, k - 1 - i);
      if (coef == 0.0) continue;
      double e = i - m + 1 + mn;  // never zero because m < n
      part += coef * (std::pow(H, e) - std::pow(L, e)) / e;
    }
    acc += height[p] * part;
  }
  return std::max(acc / factorial(k - 1), 0.0);
}

std::string witness_kind_name(WitnessKind k) {
  switch (k) {
    case WitnessKind::Entire: return "entire";
    case WitnessKind::Ball: return "ball";
    case WitnessKind::Sample: return "sample";
  }
  return "sample";
}

double RadialProfile::measure_of_radius(double r, double w) const { return std::pow(r, n + w); }

double RadialProfile::at_measure(double t, double w) const {
  if (w == 0 && t < t_zero) return 0.0;
  return value(std::pow(t, 1.0 / (n + w)));
}

// --- norms ---------------------------------------------------------------

ProfileEnclosure profile_enclosure(const RadialProfile& u, Domain domain, double w, double t_from, double rel_gap,
                                   size_t max_cells) {
  ProfileEnclosure out;
  out.lower = out.upper = PiecewiseFn::zero(domain);
  const double d = u.n + w;
  double t_start = std::max(std::pow(u.r_zero, d), t_from);
  double t_end = std::pow(u.r_support, d);
  if (domain == Domain::UnitInterval) t_end = std::min(t_end, 1.0);
  if (u.is_zero() || !(t_end > t_start)) return out;

  std::vector<double> ends{t_start};
  for (double b : u.breaks) {
    double t = std::pow(b, d);
    if (t > t_start && t < t_end) ends.push_back(t);
  }
  ends.push_back(t_end);
  std::sort(ends.begin(), ends.end());
  ends.erase(std::unique(ends.begin(), ends.end()), ends.end());

  struct Cell {
    double lo, hi, low, up;
  };
  auto bounds = [&](double lo, double hi) {
    double rl = std::pow(lo, 1.0 / d), rh = std::pow(hi, 1.0 / d);
    auto [a, b] = u.range(rl, rh);
    return Cell{lo, hi, std::max(a, 0.0), std::max(b, 0.0)};
  };
  std::vector<Cell> cells;
  for (size_t s = 0; s + 1 < ends.size(); ++s) {
    double A = ends[s], B = ends[s + 1];
    const int K = 8;
    if (A == 0.0) {
      // The sliver (0, tiny) takes the value at tiny; its measure is negligible.
      double tiny = B * 1e-12;
      Cell c = bounds(tiny, tiny);
      c.lo = 0.0;
      c.hi = tiny;
      cells.push_back(c);
      A = tiny;
    }
    for (int i = 0; i < K; ++i) {
      double lo = A * std::pow(B / A, static_cast<double>(i) / K);
      double hi = i + 1 == K ? B : A * std::pow(B / A, static_cast<double>(i + 1) / K);
      cells.push_back(bounds(lo, hi));
    }
  }
  for (;;) {
    double peak = 0;
    for (const auto& c : cells) peak = std::max(peak, c.up);
    double tol = rel_gap * peak;
    size_t wide = 0;
    for (const auto& c : cells) wide += (c.up - c.low > tol && c.hi > c.lo * (1 + 1e-12)) ? 1 : 0;
    if (wide == 0 || cells.size() + wide > max_cells) break;
    std::vector<Cell> next;
    next.reserve(cells.size() + wide);
    for (const auto& c : cells) {
      if (c.up - c.low > tol && c.hi > c.lo * (1 + 1e-12)) {
        double mid = c.lo > 0 && c.hi > 2 * c.lo ? std::sqrt(c.lo * c.hi) : 0.5 * (c.lo + c.hi);
        next.push_back(bounds(c.lo, mid));
        next.push_back(bounds(mid, c.hi));
      } else {
        next.push_back(c);
      }
    }
    cells.swap(next);
  }

  // Piece values with their right ends; a leading zero piece covers (0, t_start).
  std::vector<Rational> ends_r, lows, ups;
  if (cells.front().lo > 0) {
    ends_r.push_back(from_double(cells.front().lo));
    lows.push_back(0);
    ups.push_back(0);
  }
  for (const auto& c : cells) {
    out.max_gap = std::max(out.max_gap, c.up - c.low);
    ends_r.push_back(from_double(c.hi));
    lows.push_back(from_double(c.low));
    ups.push_back(from_double(c.up));
  }
  Rational low_tail = 0, up_tail = 0;
  if (domain == Domain::UnitInterval && ends_r.back() >= 1) {
    // The last piece reaches the end of (0,1) and becomes the tail.
    ends_r.pop_back();
    low_tail = lows.back();
    up_tail = ups.back();
    lows.pop_back();
    ups.pop_back();
  }
  out.lower = PiecewiseFn(domain, ends_r, lows, low_tail);
  out.upper = PiecewiseFn(domain, ends_r, ups, up_tail);
  out.cells = cells.size();
  return out;
}

NormBracket profile_norm(const RadialProfile& u, const LZSpace& S, double w, double t_from) {
  if ((u.kind == WitnessKind::Ball) != (S.domain() == Domain::UnitInterval))
    throw DomainMismatch();
  const double d = u.n + w;
  double t_start = std::max(std::pow(u.r_zero, d), t_from);
  double t_end = std::pow(u.r_support, d);
  if (S.domain() == Domain::UnitInterval) t_end = std::min(t_end, 1.0);
  if (u.is_zero() || !(t_end > t_start)) return {};
  if (u.nonincreasing) {
    // The rearrangement of chi_(t_start, inf) P is P(t + t_start).
    std::vector<double> breaks;
    for (double b : u.breaks) {
      double t = std::pow(b, d) - t_start;
      if (t > 0) breaks.push_back(t);
    }
    auto P = [&](double t) { return u.value(std::pow(t + t_start, 1.0 / d)); };
    double v = lz_norm_callable(P, breaks, S, t_end - t_start);
    return {v, v};
  }
  ProfileEnclosure e = profile_enclosure(u, S.domain(), w, t_from);
  return {lz_norm(e.lower, S), lz_norm(e.upper, S)};
}

NormBracket gradient_norm(const RadialProfile& u, const LZSpace& S) {
  if (!u.slope) throw NonSmoothProfile("profile has no weak derivative");
  NormBracket b = profile_norm(*u.slope, S);
  double factor = u.kind == WitnessKind::Ball ? 1.0 / u.R : std::pow(unit_ball_volume(u.n), 1.0 / u.n);
  return {b.lower * factor, b.upper * factor};
}

// --- samples ---------------------------------------------------------------

namespace {

RadialProfile constant_slope(int n, double lo, double hi, double height) {
  RadialProfile s;
  s.n = n;
  s.r_zero = lo;
  s.r_support = hi;
  s.nonincreasing = true;
  s.continuous = false;
  s.value = [=](double r) { return r >= lo && r < hi ? height : 0.0; };
  s.range = [=](double, double) { return std::pair{height, height}; };
  return s;
}

std::pair<double, double> endpoint_range(const std::function<double(double)>& g, double lo, double hi) {
  double a = g(lo), b = g(hi);
  return {std::min(a, b), std::max(a, b)};
}

}  // namespace

RadialProfile radial_tent(int n, double center, double half_width, double height) {
  if (!(half_width > 0) || !(center >= 0) || !(height >= 0)) throw BadInput("tent needs width > 0, center >= 0");
  const double scale = std::pow(unit_ball_volume(n), 1.0 / n);  // r = scale |x|
  double lo_x = std::max(center - half_width, 0.0), hi_x = center + half_width;
  RadialProfile u;
  u.n = n;
  u.r_zero = lo_x * scale;
  u.r_support = hi_x * scale;
  u.breaks = {center * scale};
  u.value = [=](double r) {
    double x = r / scale;
    return height * std::max(0.0, 1.0 - std::abs(x - center) / half_width);
  };
  auto g = u.value;
  u.range = [g](double lo, double hi) { return endpoint_range(g, lo, hi); };
  u.slope = std::make_shared<RadialProfile>(constant_slope(n, u.r_zero, u.r_support, height / (half_width * scale)));
  return u;
}

RadialProfile radial_cone(int n, double radius, double height) {
  if (!(radius > 0) || !(height >= 0)) throw BadInput("cone needs radius > 0");
  const double scale = std::pow(unit_ball_volume(n), 1.0 / n);
  RadialProfile u;
  u.n = n;
  u.r_support = radius * scale;
  u.nonincreasing = true;
  u.value = [=](double r) { return height * std::max(0.0, 1.0 - r / (radius * scale)); };
  auto g = u.value;
  u.range = [g](double lo, double hi) { return std::pair{g(hi), g(lo)}; };
  u.slope = std::make_shared<RadialProfile>(constant_slope(n, 0.0, u.r_support, height / (radius * scale)));
  return u;
}

RadialProfile radial_step(int n, const PiecewiseFn& f) {
  if (f.domain() != Domain::HalfLine || !f.bounded_support()) throw BadInput("radial step needs bounded support");
  const double scale = std::pow(unit_ball_volume(n), 1.0 / n);
  RadialProfile u;
  u.n = n;
  u.r_support = f.support_end().get_d() * scale;
  for (const auto& b : f.breaks()) u.breaks.push_back(b.get_d() * scale);
  u.continuous = false;
  u.nonincreasing = f.is_nonincreasing();
  u.value = [f, scale](double r) { return f.eval(r / scale); };
  auto g = u.value;
  u.range = [g](double lo, double hi) {
    // Constant inside a cell; the right end may already sit on the next piece.
    double v = g(0.5 * (lo + hi));
    return std::pair{v, v};
  };
  return u;
}

RadialProfile dilate_radial(const RadialProfile& u, double lambda) {
  if (!(lambda > 0)) throw BadInput("dilation needs lambda > 0");
  if (u.kind == WitnessKind::Ball) throw BadInput("dilation is defined for entire-space profiles");
  RadialProfile v = u;
  v.kind = WitnessKind::Sample;
  v.entire.reset();
  v.r_zero = u.r_zero / lambda;
  v.r_support = u.r_support / lambda;
  v.t_zero = u.t_zero / std::pow(lambda, u.n);
  for (double& b : v.breaks) b /= lambda;
  auto g = u.value;
  auto rg = u.range;
  v.value = [g, lambda](double r) { return g(lambda * r); };
  v.range = [rg, lambda](double lo, double hi) { return rg(lambda * lo, lambda * hi); };
  if (u.slope) {
    RadialProfile s = dilate_radial(*u.slope, lambda);
    auto sg = s.value;
    auto sr = s.range;
    s.value = [sg, lambda](double r) { return lambda * sg(r); };
    s.range = [sr, lambda](double lo, double hi) {
      auto [a, b] = sr(lo, hi);
      return std::pair{lambda * a, lambda * b};
    };
    v.slope = std::make_shared<RadialProfile>(std::move(s));
  }
  return v;
}

// --- constructions -------------------------------------------------------

RadialProfile build_u_fa(const PiecewiseFn& f, const Rational& a, int m, int n) {
  if (f.domain() != Domain::HalfLine) throw BadInput("u_{f,a} needs f on the half-line");
  if (!f.is_nonincreasing()) throw BadInput("u_{f,a} needs a nonincreasing f");
  if (!f.bounded_support()) throw BadInput("u_{f,a} needs f with bounded support");
  if (a < 1) throw BadInput("u_{f,a} needs a >= 1");
  if (m < 1 || n < 2) throw BadInput("u_{f,a} needs m >= 1 and n >= 2");

  // f is replaced by f(a) on (0,a); the jumps past a give f = sum gamma_j chi_(0,b_j).
  auto parts = std::make_shared<EntireParts>();
  parts->m = m;
  parts->a = a;
  auto pieces = f.pieces();
  for (size_t i = 0; i < pieces.size(); ++i) {
    if (!pieces[i].hi) break;
    const Rational& b = *pieces[i].hi;
    if (b <= a) continue;
    Rational next = i + 1 < pieces.size() ? pieces[i + 1].value : Rational(0);
    Rational gamma = pieces[i].value - next;
    if (gamma == 0) continue;
    double bd = b.get_d();
    parts->c.push_back(gamma.get_d() / std::pow(bd, static_cast<double>(m) / n));
    parts->beta.push_back(std::pow(bd, 1.0 / n));
  }
  const double ad = a.get_d();
  parts->cutoff = CutoffSpec(std::pow(ad / 8, 1.0 / n), std::pow(ad / 4, 1.0 / n), m);

  RadialProfile u;
  u.kind = WitnessKind::Entire;
  u.n = n;
  u.t_zero = ad / 8;
  u.entire = parts;
  if (parts->c.empty()) {
    u.value = [](double) { return 0.0; };
    u.range = [](double, double) { return std::pair{0.0, 0.0}; };
    return u;
  }
  u.r_zero = parts->cutoff.lo();
  u.r_support = *std::max_element(parts->beta.begin(), parts->beta.end());
  u.breaks = parts->beta;
  u.breaks.push_back(parts->cutoff.hi());
  const EntireParts* P = parts.get();
  u.value = [P](double r) {
    if (r <= P->cutoff.lo()) return 0.0;
    return P->cutoff(r) * P->v(P->m, r);
  };
  u.range = [P](double lo, double hi) {
    return std::pair{P->cutoff(lo) * P->v(P->m, hi), P->cutoff(hi) * P->v(P->m, lo)};
  };
  return u;
}

RadialProfile build_u_fRa(const PiecewiseFn& f, const Rational& R, const Rational& a, int m, int n,
                          const Rational& alpha) {
  if (f.domain() != Domain::UnitInterval) throw BadInput("u_{f,R,a} needs f on (0,1)");
  if (!(R > 0)) throw BadInput("u_{f,R,a} needs R > 0");
  if (!(a > 0) || a > 1) throw BadInput("u_{f,R,a} needs a in (0,1]");
  if (m < 1 || m >= n) throw BadInput("u_{f,R,a} needs 1 <= m < n");
  if (alpha < 0) throw BadInput("u_{f,R,a} needs alpha >= 0");
  if (f.support_end() > a) throw BadInput("f must vanish on [a, 1)");

  auto parts = std::make_shared<BallParts>();
  parts->m = m;
  parts->n = n;
  for (const auto& p : f.pieces()) {
    if (p.value == 0) continue;
    parts->lo.push_back(p.lo.get_d());
    parts->hi.push_back(p.hi ? p.hi->get_d() : 1.0);
    parts->height.push_back(p.value.get_d());
  }
  RadialProfile u;
  u.kind = WitnessKind::Ball;
  u.n = n;
  u.R = R.get_d();
  u.alpha = alpha.get_d();
  u.ball = parts;
  u.nonincreasing = true;
  if (parts->lo.empty()) {
    u.value = [](double) { return 0.0; };
    u.range = [](double, double) { return std::pair{0.0, 0.0}; };
    return u;
  }
  u.r_support = std::pow(f.support_end().get_d(), 1.0 / n);
  for (size_t i = 0; i < parts->lo.size(); ++i) {
    if (parts->lo[i] > 0) u.breaks.push_back(std::pow(parts->lo[i], 1.0 / n));
    u.breaks.push_back(std::pow(parts->hi[i], 1.0 / n));
  }
  const BallParts* P = parts.get();
  u.value = [P, n](double r) { return r >= 1.0 ? 0.0 : P->G(P->m, std::pow(r, n)); };
  auto g = u.value;
  u.range = [g](double lo, double hi) { return std::pair{g(hi), g(lo)}; };
  return u;
}

// --- verification ----------------------------------------------------------

RadialLemmaReport verify_radial_lemma(const std::vector<RadialProfile>& family, double p, int n) {
  if (!(p >= 1) || n < 2) throw BadInput("radial lemma needs p >= 1 and n >= 2");
  for (const auto& u : family) {
    if (!u.continuous || !u.slope) throw NonSmoothProfile("radial lemma needs a weakly differentiable profile");
    if (u.kind == WitnessKind::Ball || u.n != n) throw BadInput("radial lemma samples must live on R^n");
  }
  RadialLemmaReport rep;
  rep.p = p;
  rep.n = n;
  const double omega = unit_ball_volume(n);
  rep.reference = std::pow(p / (n * omega), 1.0 / p);
  const double scale = std::pow(omega, 1.0 / n);
  LZSpace Lp = LZSpace::lebesgue(from_double(p));
  rep.rows.resize(family.size());
  parallel_for(family.size(), [&](size_t i) {
    const auto& u = family[i];
    RadialLemmaRow row;
    if (!u.is_zero()) {
      row.u_norm = profile_norm(u, Lp).lower;
      row.grad_norm = gradient_norm(u, Lp).lower;
      double denom = std::pow(row.u_norm, (p - 1) / p) * std::pow(row.grad_norm, 1.0 / p);
      double x_lo = std::max(u.r_zero, u.r_support * 1e-6) / scale, x_hi = u.r_support / scale;
      const int N = 512;
      for (int k = 0; k <= N; ++k) {
        double x = x_lo * std::pow(x_hi / x_lo, static_cast<double>(k) / N);
        double v = std::abs(u.value(x * scale));
        row.peak = std::max(row.peak, v);
        if (v > 0 && denom > 0) row.constant = std::max(row.constant, v * std::pow(x, (n - 1) / p) / denom);
      }
    }
    rep.rows[i] = row;
  });
  std::vector<double> cs;
  for (const auto& r : rep.rows) {
    cs.push_back(r.constant);
    rep.max_constant = std::max(rep.max_constant, r.constant);
    if (r.constant > rep.reference * (1 + 1e-9)) rep.bounded = false;
  }
  rep.min_constant = rep.max_constant;
  for (double c : cs)
    if (c > 0) rep.min_constant = std::min(rep.min_constant, c);
  return rep;
}

TailReport verify_tail_estimate(const std::vector<RadialProfile>& family, const LZSpace& X, const LZSpace& Y,
                                const std::vector<double>& R_grid, const CandidateFamily& search) {
  TailReport rep;
  if (family.empty() || R_grid.empty()) return rep;
  const int n = family.front().n;
  for (const auto& u : family)
    if (u.n != n || u.kind == WitnessKind::Ball) throw BadInput("tail samples must live on one R^n");
  rep.n = n;
  const double omega = unit_ball_volume(n);
  rep.envelope = 6.0 / (n * omega) + 12.0;

  std::vector<SupEstimate> sups(R_grid.size());
  parallel_for(R_grid.size(), [&](size_t j) {
    sups[j] = suptail(X, Y, std::pow(R_grid[j], n - 1), search, true);
  });
  std::vector<double> sobolev(family.size());
  parallel_for(family.size(), [&](size_t i) {
    sobolev[i] = profile_norm(family[i], X).lower + gradient_norm(family[i], X).lower;
  });
  rep.rows.resize(family.size() * R_grid.size());
  parallel_for(rep.rows.size(), [&](size_t k) {
    size_t i = k / R_grid.size(), j = k % R_grid.size();
    TailRow row;
    row.sample = i;
    row.R = R_grid[j];
    row.lhs = profile_norm(family[i], Y, 0, omega * std::pow(R_grid[j], n)).upper;
    row.sobolev = sobolev[i];
    row.sup_estimate = sups[j].estimate;
    row.sup_certificate = sups[j].certificate;
    if (row.lhs > 0) {
      row.ratio = row.lhs / (row.sup_estimate * row.sobolev);
      if (std::isfinite(row.sup_certificate)) row.certified_ratio = row.lhs / (row.sup_certificate * row.sobolev);
    }
    rep.rows[k] = row;
  });
  for (const auto& r : rep.rows) {
    rep.max_ratio = std::max(rep.max_ratio, r.ratio);
    if (r.certified_ratio > rep.envelope || r.ratio > 2 * rep.envelope || std::isnan(r.ratio))
      rep.within_envelope = false;
  }
  return rep;
}

std::string construction_kind_name(ConstructionKind k) { return k == ConstructionKind::Entire ? "entire" : "ball"; }

namespace {

// Top-order derivative envelope of u_{f,a}, nonincreasing past the cutoff start.
RadialProfile entire_envelope(const RadialProfile& u) {
  const EntireParts* P = u.entire.get();
  RadialProfile e = u;
  e.kind = WitnessKind::Entire;
  e.nonincreasing = true;
  e.continuous = false;
  e.value = [P](double r) { return r < P->cutoff.lo() ? 0.0 : P->envelope(r); };
  e.range = [P](double lo, double hi) { return std::pair{P->envelope(hi), P->envelope(lo)}; };
  return e;
}

// R^{-m} sum_{j=1}^m G_{m-j}(y) y^{j-m/n}, y = r^n: the top-order terms of D^m u_{f,R,a}.
RadialProfile ball_envelope(const RadialProfile& u) {
  const BallParts* P = u.ball.get();
  const int m = P->m, n = P->n;
  const double Rm = std::pow(u.R, -m);
  RadialProfile e = u;
  e.continuous = false;
  e.nonincreasing = m == 1;
  auto term = [P, m, n](int j, double y) {
    if (j == m) return P->f(y);
    return P->G(m - j, y) * std::pow(y, j - static_cast<double>(m) / n);
  };
  e.value = [=](double r) {
    double y = std::pow(r, n), s = 0;
    for (int j = 1; j <= m; ++j) s += term(j, y);
    return Rm * s;
  };
  e.range = [=](double lo, double hi) {
    double ylo = std::pow(lo, n), yhi = std::pow(hi, n), a = 0, b = 0;
    for (int j = 1; j <= m; ++j) {
      if (j == m) {
        a += P->f(yhi);
        b += P->f(ylo);
        continue;
      }
      double e_ = j - static_cast<double>(m) / n;
      a += P->G(m - j, yhi) * std::pow(ylo, e_);
      b += P->G(m - j, ylo) * std::pow(yhi, e_);
    }
    return std::pair{Rm * a, Rm * b};
  };
  return e;
}

}  // namespace

ConstructionReport verify_construction_bounds(const ConstructionSetup& setup,
                                              const std::vector<ConstructionSample>& samples) {
  ConstructionReport rep;
  rep.kind = setup.kind;
  const bool ball = setup.kind == ConstructionKind::Ball;
  const Domain dom = ball ? Domain::UnitInterval : Domain::HalfLine;
  if (setup.X.domain() != dom || setup.Y.domain() != dom) throw DomainMismatch();
  const int m = setup.m, n = setup.n;
  rep.rows.resize(samples.size());
  std::vector<bool> ok(samples.size(), true);
  parallel_for(samples.size(), [&](size_t i) {
    const auto& s = samples[i];
    ConstructionRow row;
    row.a = s.a.get_d();
    row.f_norm = lz_norm(s.f, setup.X);
    if (!ball) {
      RadialProfile u = build_u_fa(s.f, s.a, m, n);
      row.u_norm_X = profile_norm(u, setup.X);
      if (!u.is_zero()) row.derivative_norm_X = profile_norm(entire_envelope(u), setup.X);
      row.lhs_Y = lz_norm(restrict(s.f, s.a, std::nullopt), setup.Y);
      row.u_norm_Y = profile_norm(u, setup.Y);
      // u <= f / m! pointwise in the measure coordinate.
      row.source_bound_ok = row.u_norm_X.lower <= row.f_norm / factorial(m) * (1 + 1e-9);
      if (row.f_norm > 0) row.c1 = (row.u_norm_X.upper + row.derivative_norm_X.upper) / row.f_norm;
    } else {
      RadialProfile u = build_u_fRa(s.f, setup.R, s.a, m, n, setup.alpha);
      const double alpha = setup.alpha.get_d();
      row.u_norm_X = profile_norm(u, setup.X);
      if (!u.is_zero()) row.derivative_norm_X = profile_norm(ball_envelope(u), setup.X);
      row.lhs_Y = lz_norm_profile(copson(s.f, CopsonParams{m, n, setup.alpha}), setup.Y, 1.0);
      row.u_norm_Y = profile_norm(u, setup.Y, alpha);
      if (is_lebesgue(setup.X))
        row.source_bound_ok = row.u_norm_X.lower <= row.f_norm * n / (m * factorial(m - 1)) * (1 + 1e-9);
      double scale = std::max(1.0, std::pow(setup.R.get_d(), -m));
      if (row.f_norm > 0) row.c1 = (row.u_norm_X.upper + row.derivative_norm_X.upper) / (scale * row.f_norm);
    }
    if (row.u_norm_Y.lower > 0) row.c2 = row.lhs_Y / row.u_norm_Y.lower;
    if (ball && is_plain_power(setup.Y)) {
      double C4 = std::pow(2.0, setup.alpha.get_d() / n + m) * factorial(m - 1);
      if (row.c2 > C4 * (1 + 1e-6)) ok[i] = false;
    }
    rep.rows[i] = row;
  });
  std::vector<double> c1, c2;
  bool bounds_ok = true;
  for (size_t i = 0; i < rep.rows.size(); ++i) {
    c1.push_back(rep.rows[i].c1);
    c2.push_back(rep.rows[i].c2);
    bounds_ok = bounds_ok && ok[i] && rep.rows[i].source_bound_ok;
  }
  rep.c1_spread = spread(c1);
  rep.c2_spread = spread(c2);
  rep.stable = bounds_ok && rep.c1_spread < 10 && rep.c2_spread < 10;
  return rep;
}

std::vector<ConstructionSample> default_construction_family(ConstructionKind kind) {
  std::vector<ConstructionSample> out;
  if (kind == ConstructionKind::Entire) {
    for (long a : {1L, 4L, 16L, 64L}) {
      Rational A(a);
      PiecewiseFn f(Domain::HalfLine, {A / 2, 2 * A, 8 * A}, {6, 3, 1});
      out.push_back({f, A});
    }
  } else {
    for (long k : {1L, 4L, 16L, 64L}) {
      Rational A(1, k);
      PiecewiseFn f(Domain::UnitInterval, {A / 4, A / 2, 3 * A / 4}, {3, 2, 1});
      out.push_back({f, A});
    }
  }
  return out;
}

std::vector<RadialProfile> default_tent_family(int n) {
  std::vector<RadialProfile> out;
  for (double r0 : {1.0, 2.0, 4.0, 8.0}) out.push_back(radial_tent(n, r0, 0.5));
  return out;
}

// --- json ----------------------------------------------------------------

nlohmann::json to_json(const RadialLemmaReport& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"u_norm", row.u_norm}, {"grad_norm", row.grad_norm}, {"constant", row.constant},
                    {"peak", row.peak}});
  return {{"suite", "radial-lemma"}, {"p", r.p},       {"n", r.n},
          {"reference", r.reference}, {"max_constant", r.max_constant},
          {"min_constant", r.min_constant}, {"bounded", r.bounded}, {"rows", rows}};
}

nlohmann::json to_json(const TailReport& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : r.rows) {
    nlohmann::json cert = std::isfinite(row.sup_certificate) ? nlohmann::json(row.sup_certificate) : nlohmann::json();
    rows.push_back({{"sample", row.sample},
                    {"R", row.R},
                    {"lhs", row.lhs},
                    {"sobolev", row.sobolev},
                    {"sup_estimate", row.sup_estimate},
                    {"sup_certificate", cert},
                    {"ratio", row.ratio},
                    {"certified_ratio", row.certified_ratio}});
  }
  return {{"suite", "tail-estimate"}, {"n", r.n}, {"envelope", r.envelope}, {"max_ratio", r.max_ratio},
          {"within_envelope", r.within_envelope}, {"rows", rows}};
}

nlohmann::json to_json(const ConstructionReport& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"a", row.a},
                    {"f_norm", row.f_norm},
                    {"u_norm_X", {row.u_norm_X.lower, row.u_norm_X.upper}},
                    {"derivative_norm_X", {row.derivative_norm_X.lower, row.derivative_norm_X.upper}},
                    {"c1", row.c1},
                    {"lhs_Y", row.lhs_Y},
                    {"u_norm_Y", {row.u_norm_Y.lower, row.u_norm_Y.upper}},
                    {"c2", row.c2},
                    {"source_bound_ok", row.source_bound_ok}});
  return {{"suite", "construction"}, {"kind", construction_kind_name(r.kind)}, {"c1_spread", r.c1_spread},
          {"c2_spread", r.c2_spread}, {"stable", r.stable}, {"rows", rows}};
}

}  // namespace rsc

// Candidate search for the tail and local Hardy suprema.
//
// Candidates are nonincreasing step functions on a fixed partition. For a
// partition the X-norm of heights h is (sum h_i^q W_i)^{1/q} (or max h_i S_i
// when q = inf) with W_i, S_i the exact cell weights, so every score below is
// the norm of an explicit function and not an approximation of one.

#include "rsc/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <sstream>

#include "rsc/errors.hpp"
#include "rsc/parallel.hpp"

namespace rsc {

namespace {

constexpr double kGolden = 0.6180339887498949;
constexpr int kGoldenSteps = 32;

double exponent_of(const ExtRational& q) { return q.is_inf() ? kInf : q.value().get_d(); }

// Weight of one cell in a space: integral weight for q < inf, sup weight otherwise.
double cell_weight(const LZSpace& space, double lo, double hi) {
  if (!(hi > lo)) return 0.0;
  return space.q().is_inf() ? space.weight_sup(lo, hi) : space.weight_integral(lo, hi);
}

// Norm of sum v_j chi_{cell j} for nonincreasing v, kept incrementally so
// that changing one coordinate costs O(1).
class NormAcc {
 public:
  NormAcc(double q, std::vector<double> w) : q_(q), w_(std::move(w)), v_(w_.size(), 0.0) {}

  void set(const std::vector<double>& v) {
    v_ = v;
    total_ = aggregate(-1);
  }
  void focus(size_t i) { excl_ = aggregate(static_cast<long>(i)); }
  double with(size_t i, double x) const {
    double t = term(i, x);
    if (std::isinf(q_)) return std::max(excl_, t);
    return std::pow(excl_ + t, 1.0 / q_);
  }
  void commit(size_t i, double x) {
    v_[i] = x;
    total_ = aggregate(-1);
  }
  double value() const { return std::isinf(q_) ? total_ : std::pow(total_, 1.0 / q_); }
  const std::vector<double>& weights() const { return w_; }

 private:
  double term(size_t i, double x) const {
    if (x == 0.0 || w_[i] == 0.0) return 0.0;
    return std::isinf(q_) ? x * w_[i] : std::pow(x, q_) * w_[i];
  }
  double aggregate(long skip) const {
    double acc = 0.0;
    for (size_t j = 0; j < v_.size(); ++j) {
      if (static_cast<long>(j) == skip) continue;
      double t = term(j, v_[j]);
      acc = std::isinf(q_) ? std::max(acc, t) : acc + t;
    }
    return acc;
  }

  double q_;
  std::vector<double> w_;
  std::vector<double> v_;
  double total_ = 0, excl_ = 0;
};

double safe_ratio(double num, double den) {
  if (den <= 0.0 || std::isnan(den)) return 0.0;
  if (std::isinf(den)) return 0.0;
  return num / den;
}

// Score of a height vector, with incremental single-coordinate updates.
class Objective {
 public:
  virtual ~Objective() = default;
  virtual void set(const std::vector<double>& h) = 0;
  virtual void focus(size_t i) = 0;
  virtual double with(size_t i, double x) const = 0;
  virtual void commit(size_t i, double x) = 0;
  virtual double value() const = 0;
  virtual double x_norm() const = 0;
};

// ||(f chi_(a,inf))*||_Y / ||f||_X; the Y weights already carry the shift by a.
class TailObjective : public Objective {
 public:
  TailObjective(NormAcc x, NormAcc y) : x_(std::move(x)), y_(std::move(y)) {}
  void set(const std::vector<double>& h) override { x_.set(h), y_.set(h); }
  void focus(size_t i) override { x_.focus(i), y_.focus(i); }
  double with(size_t i, double v) const override { return safe_ratio(y_.with(i, v), x_.with(i, v)); }
  void commit(size_t i, double v) override { x_.commit(i, v), y_.commit(i, v); }
  double value() const override { return safe_ratio(y_.value(), x_.value()); }
  double x_norm() const override { return x_.value(); }

 private:
  NormAcc x_, y_;
};

// ||F||_Y / ||f||_X where F is the Copson profile sampled at the right end
// of each Y cell (a lower step function, since F is nonincreasing).
class HardyA1Objective : public Objective {
 public:
  HardyA1Objective(NormAcc x, double qy, std::vector<double> wy, std::vector<std::vector<double>> kernel)
      : x_(std::move(x)), qy_(qy), wy_(std::move(wy)), k_(std::move(kernel)) {}
  void set(const std::vector<double>& h) override {
    h_ = h;
    x_.set(h);
    F_.assign(wy_.size(), 0.0);
    for (size_t j = 0; j < F_.size(); ++j)
      for (size_t i = 0; i < h.size(); ++i) F_[j] += h[i] * k_[j][i];
  }
  void focus(size_t i) override { x_.focus(i); }
  double with(size_t i, double v) const override {
    double d = v - h_[i];
    return safe_ratio(y_norm([&](size_t j) { return std::max(0.0, F_[j] + d * k_[j][i]); }), x_.with(i, v));
  }
  void commit(size_t i, double v) override {
    double d = v - h_[i];
    for (size_t j = 0; j < F_.size(); ++j) F_[j] = std::max(0.0, F_[j] + d * k_[j][i]);
    h_[i] = v;
    x_.commit(i, v);
  }
  double value() const override {
    return safe_ratio(y_norm([&](size_t j) { return F_[j]; }), x_.value());
  }
  double x_norm() const override { return x_.value(); }

 private:
  template <class G>
  double y_norm(G&& F) const {
    double acc = 0.0;
    for (size_t j = 0; j < wy_.size(); ++j) {
      double v = F(j);
      if (v == 0.0 || wy_[j] == 0.0) continue;
      if (std::isinf(qy_))
        acc = std::max(acc, v * wy_[j]);
      else
        acc += std::pow(v, qy_) * wy_[j];
    }
    return std::isinf(qy_) ? acc : std::pow(acc, 1.0 / qy_);
  }

  NormAcc x_;
  double qy_;
  std::vector<double> wy_;
  std::vector<std::vector<double>> k_;  // k_[j][i]
  std::vector<double> h_, F_;
};

// integral_0^a f*(s) s^{mu-1} ds / ||f||_X, linear in the heights.
class HardyB1Objective : public Objective {
 public:
  HardyB1Objective(NormAcc x, std::vector<double> beta) : x_(std::move(x)), beta_(std::move(beta)) {}
  void set(const std::vector<double>& h) override {
    h_ = h;
    x_.set(h);
    lin_ = std::inner_product(h.begin(), h.end(), beta_.begin(), 0.0);
  }
  void focus(size_t i) override { x_.focus(i); }
  double with(size_t i, double v) const override {
    return safe_ratio(lin_ + (v - h_[i]) * beta_[i], x_.with(i, v));
  }
  void commit(size_t i, double v) override {
    lin_ += (v - h_[i]) * beta_[i];
    h_[i] = v;
    x_.commit(i, v);
  }
  double value() const override { return safe_ratio(lin_, x_.value()); }
  double x_norm() const override { return x_.value(); }

 private:
  NormAcc x_;
  std::vector<double> beta_;
  std::vector<double> h_;
  double lin_ = 0;
};

// Coordinate ascent keeping the heights nonincreasing; golden-section search per coordinate.
double coordinate_ascent(Objective& obj, std::vector<double>& h, int max_sweeps, double tol) {
  obj.set(h);
  double best = obj.value();
  size_t K = h.size();
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double before = best;
    for (size_t i = 0; i < K; ++i) {
      obj.focus(i);
      double lo = (i + 1 < K) ? h[i + 1] : 0.0;
      double hi = (i > 0) ? h[i - 1] : 4.0 * h[0];
      if (!(hi > lo)) continue;
      double x1 = hi - kGolden * (hi - lo), x2 = lo + kGolden * (hi - lo);
      double f1 = obj.with(i, x1), f2 = obj.with(i, x2);
      double L = lo, H = hi;
      for (int s = 0; s < kGoldenSteps; ++s) {
        if (f1 < f2) {
          L = x1, x1 = x2, f1 = f2, x2 = L + kGolden * (H - L), f2 = obj.with(i, x2);
        } else {
          H = x2, x2 = x1, f2 = f1, x1 = H - kGolden * (H - L), f1 = obj.with(i, x1);
        }
      }
      double cand[] = {x1, x2, lo, hi};
      double arg = h[i], val = obj.with(i, h[i]);
      for (double c : cand) {
        double v = obj.with(i, c);
        if (v > val) val = v, arg = c;
      }
      if (arg != h[i]) {
        obj.commit(i, arg);
        h[i] = arg;
      }
    }
    best = obj.value();
    if (best - before <= tol * std::max(before, 1e-300)) break;
  }
  return best;
}

// Running minimum makes a sampled profile nonincreasing.
void make_nonincreasing(std::vector<double>& h) {
  for (size_t i = 1; i < h.size(); ++i) h[i] = std::min(h[i], h[i - 1]);
}

// The profile t^{-1/p} l(t)^{-A} from the necessity argument, sampled at cell ends.
std::vector<double> profile_heights(const LZSpace& X, const std::vector<double>& ends) {
  double inv_p = X.p().is_inf() ? 0.0 : 1.0 / X.p().value().get_d();
  std::vector<double> h;
  for (double t : ends) {
    double v = std::pow(t, -inv_p) * std::pow(ell(t), -X.alpha_at(t).get_d());
    h.push_back(std::isfinite(v) ? v : 0.0);
  }
  make_nonincreasing(h);
  if (!h.empty() && h[0] > 0) {
    double top = h[0];
    for (double& v : h) v /= top;
  }
  return h;
}

PiecewiseFn step_candidate(Domain domain, const std::vector<double>& ends, const std::vector<double>& h,
                           double scale) {
  std::vector<Rational> breaks, values;
  Rational tail = 0;
  for (size_t i = 0; i < h.size(); ++i) {
    Rational v = from_double(h[i] / scale);
    if (domain == Domain::UnitInterval && i + 1 == h.size()) {
      tail = v;  // the last cell runs to 1
    } else {
      breaks.push_back(from_double(ends[i]));
      values.push_back(v);
    }
  }
  return PiecewiseFn(domain, breaks, values, tail);
}

struct Best {
  double score = -1;
  PiecewiseFn fn;
  std::string kind;
  void offer(double s, const std::string& k, const std::function<PiecewiseFn()>& make) {
    if (s > score) {
      score = s;
      kind = k;
      fn = make();
    }
  }
};

bool uses(FamilyKind family, FamilyKind k) { return family == FamilyKind::All || family == k; }

double flat_score(const LZSpace& X, const LZSpace& Y, double a, double T) {
  return safe_ratio(fundamental_function(Y, T - a), fundamental_function(X, T));
}

}  // namespace

std::string family_name(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::FlatTruncations: return "flat";
    case FamilyKind::TwoLevel: return "twolevel";
    case FamilyKind::LogGridSteps: return "loggrid";
    case FamilyKind::Profile: return "profile";
    case FamilyKind::All: return "all";
  }
  return "all";
}

FamilyKind parse_family(const std::string& name) {
  for (FamilyKind k : {FamilyKind::FlatTruncations, FamilyKind::TwoLevel, FamilyKind::LogGridSteps,
                       FamilyKind::Profile, FamilyKind::All})
    if (family_name(k) == name) return k;
  throw ParseError("unknown candidate family '" + name + "'");
}

SupEstimate suptail(const LZSpace& X, const LZSpace& Y, double a, const CandidateFamily& family,
                    bool with_certificate) {
  if (X.domain() != Domain::HalfLine || Y.domain() != Domain::HalfLine)
    throw DomainMismatch();
  if (!(a > 0) || !std::isfinite(a)) throw BadInput("suptail needs a finite a > 0");
  if (family.grid_size < 2 || !(family.span > 2)) throw BadInput("candidate grid too small");
  if (family.grid_size > kMaxCandidateGrid)
    throw ResourceExhausted("candidate grid larger than " + std::to_string(kMaxCandidateGrid));

  Best best;
  auto flat_fn = [&](double T) {
    return [&X, T] {
      Rational end = from_double(T);
      return PiecewiseFn::indicator(Domain::HalfLine, 0, end, from_double(1.0 / fundamental_function(X, T)));
    };
  };

  // Always present: chi_(0,2a) / phi_X(2a).
  best.offer(flat_score(X, Y, a, 2 * a), "floor", flat_fn(2 * a));

  const int N = family.grid_size;
  if (uses(family.kind, FamilyKind::FlatTruncations)) {
    std::vector<double> Ts, scores;
    for (int j = 0; j < N; ++j) {
      double T = a * std::pow(family.span, static_cast<double>(j + 1) / N);
      Ts.push_back(T);
      scores.push_back(flat_score(X, Y, a, T));
    }
    size_t k = std::max_element(scores.begin(), scores.end()) - scores.begin();
    best.offer(scores[k], "flat", flat_fn(Ts[k]));
    // Golden-section refinement in log T around the best grid point.
    double L = std::log(k > 0 ? Ts[k - 1] : a * 1.0000001), H = std::log(k + 1 < Ts.size() ? Ts[k + 1] : Ts[k]);
    auto f = [&](double u) { return flat_score(X, Y, a, std::exp(u)); };
    double x1 = H - kGolden * (H - L), x2 = L + kGolden * (H - L), f1 = f(x1), f2 = f(x2);
    for (int s = 0; s < 48; ++s) {
      if (f1 < f2)
        L = x1, x1 = x2, f1 = f2, x2 = L + kGolden * (H - L), f2 = f(x2);
      else
        H = x2, x2 = x1, f2 = f1, x1 = H - kGolden * (H - L), f1 = f(x1);
    }
    double T = std::exp(f1 >= f2 ? x1 : x2);
    best.offer(flat_score(X, Y, a, T), "flat", flat_fn(T));
  }

  double qx = exponent_of(X.q()), qy = exponent_of(Y.q());

  if (uses(family.kind, FamilyKind::TwoLevel)) {
    const double splits[] = {1.1, 1.25, 1.5, 2, 3, 5, 10, 30, 100, 1000};
    const double lengths[] = {1.5, 2, 4, 10, 100, 1e4};
    const double levels[] = {0.05, 0.1, 0.2, 0.35, 0.5, 0.7, 0.85};
    for (double sp : splits) {
      double s = a * sp;
      for (double len : lengths) {
        double T = s * len;
        std::vector<double> ends = {s, T};
        NormAcc nx(qx, {cell_weight(X, 0, s), cell_weight(X, s, T)});
        NormAcc ny(qy, {cell_weight(Y, 0, s - a), cell_weight(Y, s - a, T - a)});
        TailObjective obj(nx, ny);
        for (double rho : levels) {
          std::vector<double> h = {1.0, rho};
          obj.set(h);
          double v = obj.value();
          double xn = obj.x_norm();
          best.offer(v, "twolevel", [&] { return step_candidate(Domain::HalfLine, ends, h, xn); });
        }
      }
    }
  }

  bool want_grid = uses(family.kind, FamilyKind::LogGridSteps) || uses(family.kind, FamilyKind::Profile);
  if (want_grid) {
    const int K = N;
    double rho = std::pow(family.span, 1.0 / K);
    std::vector<double> ends;
    std::vector<double> wx, wy;
    double prev = 0;
    for (int i = 1; i <= K; ++i) {
      double c = a * std::pow(rho, i);
      ends.push_back(c);
      wx.push_back(cell_weight(X, prev, c));
      wy.push_back(cell_weight(Y, std::max(prev - a, 0.0), c - a));
      prev = c;
    }
    TailObjective obj(NormAcc(qx, wx), NormAcc(qy, wy));

    std::vector<double> f0 = profile_heights(X, ends);
    if (uses(family.kind, FamilyKind::Profile)) {
      for (int J = 1; J <= K; ++J) {
        std::vector<double> h(f0.begin(), f0.begin() + J);
        h.resize(K, 0.0);
        obj.set(h);
        double v = obj.value(), xn = obj.x_norm();
        best.offer(v, "profile", [&] { return step_candidate(Domain::HalfLine, ends, h, xn); });
      }
    }

    if (uses(family.kind, FamilyKind::LogGridSteps)) {
      std::vector<std::vector<double>> starts;
      // Flat start at the grid point nearest the best flat truncation so far.
      {
        size_t J = 1;
        for (size_t i = 0; i < ends.size(); ++i)
          if (flat_score(X, Y, a, ends[i]) >= flat_score(X, Y, a, ends[J - 1])) J = i + 1;
        std::vector<double> h(K, 0.0);
        std::fill(h.begin(), h.begin() + J, 1.0);
        starts.push_back(h);
      }
      starts.push_back(f0);
      {
        std::vector<double> h;
        for (double c : ends) h.push_back(1.0 / fundamental_function(X, c));
        make_nonincreasing(h);
        double top = h[0];
        for (double& v : h) v = std::isfinite(v / top) ? v / top : 0.0;
        starts.push_back(h);
      }
      for (auto& h : starts) {
        if (h.empty() || h[0] <= 0) continue;
        double v = coordinate_ascent(obj, h, family.max_sweeps, family.ascent_tol);
        double xn = obj.x_norm();
        best.offer(v, "loggrid", [&] { return step_candidate(Domain::HalfLine, ends, h, xn); });
      }
    }
  }

  SupEstimate out;
  out.estimate = best.score;
  out.best = best.fn;
  out.best_kind = best.kind;
  if (with_certificate) {
    try {
      out.certificate = tail_cut_bound(X, Y, a).total;
    } catch (const Error&) {
      out.certificate = kInf;
    }
  }
  return out;
}

std::vector<SupCurvePoint> suptail_curve(const LZSpace& X, const LZSpace& Y, const std::vector<double>& grid,
                                         const CandidateFamily& family, bool with_certificate) {
  std::vector<double> as = grid;
  std::sort(as.begin(), as.end());
  std::vector<SupCurvePoint> out(as.size());
  parallel_for(as.size(), [&](size_t i) {
    SupEstimate e = suptail(X, Y, as[i], family, with_certificate);
    out[i].a = as[i];
    out[i].raw = e.estimate;
    out[i].certificate = e.certificate;
  });
  double run = 0;
  for (size_t i = out.size(); i-- > 0;) {
    run = std::max(run, out[i].raw);
    out[i].estimate = run;
  }
  return out;
}

SupEstimate sup_hardy_local(const LZSpace& X, const LZSpace& Y, double a, const CopsonParams& params,
                            HardyForm form, const CandidateFamily& family) {
  params.validate();
  if (X.domain() != Domain::UnitInterval) throw DomainMismatch();
  if (form == HardyForm::A1 && Y.domain() != Domain::UnitInterval && !Y.is_linf()) throw DomainMismatch();
  if (!(a > 0 && a < 1)) throw BadInput("local Hardy supremum needs a in (0,1)");

  const double mu = static_cast<double>(params.m) / params.n;
  const double kappa = params.n / (params.n + params.alpha.get_d());
  const int K = std::max(family.grid_size, 2);
  const double L = std::min(1e-10, a * 1e-6);

  // Cells (0, b_1), [b_1, b_2), ..., [b_{K-1}, 1).
  std::vector<double> ends;
  for (int j = 0; j < K; ++j) ends.push_back(L * std::pow(1.0 / L, static_cast<double>(j) / (K - 1)));
  ends.back() = 1.0;
  double qx = exponent_of(X.q());
  std::vector<double> wx;
  for (int i = 0; i < K; ++i) wx.push_back(cell_weight(X, i == 0 ? 0.0 : ends[i - 1], ends[i]));
  NormAcc nx(qx, wx);

  auto s_power_integral = [mu](double lo, double hi) {
    return hi > lo ? (std::pow(hi, mu) - std::pow(lo, mu)) / mu : 0.0;
  };

  std::unique_ptr<Objective> obj;
  if (form == HardyForm::B1) {
    std::vector<double> beta;
    for (int i = 0; i < K; ++i) beta.push_back(s_power_integral(i == 0 ? 0.0 : ends[i - 1], std::min(ends[i], a)));
    obj = std::make_unique<HardyB1Objective>(nx, beta);
  } else {
    // F is evaluated at the right end of each Y cell [tau_{j-1}, tau_j) of (0,a).
    const int J = 4 * K;
    double tmin = std::min(std::pow(L, 1.0 / kappa), a * 1e-8);
    std::vector<double> taus;
    for (int j = 0; j < J; ++j) taus.push_back(tmin * std::pow(a / tmin, static_cast<double>(j) / (J - 1)));
    taus.back() = a;
    LZSpace Yu = Y.domain() == Domain::UnitInterval ? Y : LZSpace::linf(Domain::UnitInterval);
    double qy = exponent_of(Yu.q());
    std::vector<double> wy;
    std::vector<std::vector<double>> kernel;
    for (int j = 0; j < J; ++j) {
      wy.push_back(cell_weight(Yu, j == 0 ? 0.0 : taus[j - 1], taus[j]));
      double lower = std::pow(taus[j], kappa);
      std::vector<double> row;
      for (int i = 0; i < K; ++i) {
        double lo = i == 0 ? 0.0 : ends[i - 1];
        row.push_back(s_power_integral(std::max(lower, lo), ends[i]));
      }
      kernel.push_back(std::move(row));
    }
    obj = std::make_unique<HardyA1Objective>(nx, qy, wy, kernel);
  }

  Best best;
  auto offer = [&](const std::vector<double>& h, const std::string& kind) {
    obj->set(h);
    double v = obj->value(), xn = obj->x_norm();
    best.offer(v, kind, [&] { return step_candidate(Domain::UnitInterval, ends, h, xn); });
  };

  std::vector<std::vector<double>> starts;
  size_t best_flat = 0;
  double best_flat_score = -1;
  for (int J = 1; J <= K; ++J) {
    std::vector<double> h(K, 0.0);
    std::fill(h.begin(), h.begin() + J, 1.0);
    offer(h, "flat");
    if (obj->value() > best_flat_score) best_flat_score = obj->value(), best_flat = J;
  }
  {
    std::vector<double> h(K, 0.0);
    std::fill(h.begin(), h.begin() + best_flat, 1.0);
    starts.push_back(h);
  }
  std::vector<double> f0 = profile_heights(X, ends);
  offer(f0, "profile");
  starts.push_back(f0);
  {
    std::vector<double> h;
    for (double c : ends) h.push_back(1.0 / fundamental_function(X, c));
    make_nonincreasing(h);
    double top = h[0];
    for (double& v : h) v = std::isfinite(v / top) ? v / top : 0.0;
    offer(h, "majorant");
    starts.push_back(h);
  }
  if (uses(family.kind, FamilyKind::LogGridSteps)) {
    for (auto& h : starts) {
      if (h.empty() || h[0] <= 0) continue;
      double v = coordinate_ascent(*obj, h, family.max_sweeps, family.ascent_tol);
      double xn = obj->x_norm();
      best.offer(v, "loggrid", [&] { return step_candidate(Domain::UnitInterval, ends, h, xn); });
    }
  }

  SupEstimate out;
  out.estimate = best.score;
  out.best = best.fn;
  out.best_kind = best.kind;
  return out;
}

std::string limit_class_name(LimitClass c) {
  switch (c) {
    case LimitClass::VanishingLimit: return "VanishingLimit";
    case LimitClass::PositiveLimit: return "PositiveLimit";
    case LimitClass::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

LimitReport limit_probe(const std::vector<double>& grid, const std::vector<double>& values, Direction direction) {
  LimitReport r;
  if (grid.size() != values.size()) throw BadInput("grid and values differ in length");
  if (grid.size() < 8) {
    r.note = "fewer than 8 grid points";
    return r;
  }
  std::vector<std::pair<double, double>> pts;
  for (size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0)) throw BadInput("grid points must be positive");
    // x grows as the probe approaches the limit point.
    double x = direction == Direction::ToInfinity ? std::log(grid[i]) : -std::log(grid[i]);
    pts.emplace_back(x, values[i]);
  }
  std::sort(pts.begin(), pts.end());
  if ((pts.back().first - pts.front().first) / std::log(10.0) < 4.0 - 1e-9) {
    r.note = "grid spans fewer than 4 decades";
    return r;
  }
  double n = static_cast<double>(pts.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto& [x, v] : pts) {
    double y = std::log(std::max(v, 1e-300));
    sx += x, sy += y, sxx += x * x, sxy += x * y;
  }
  r.exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  double first = pts.front().second, last = pts.back().second;
  if (r.exponent < -0.05 && last < 0.1 * first) {
    r.cls = LimitClass::VanishingLimit;
    return r;
  }
  double lo = kInf, hi = 0;
  for (size_t i = pts.size() - 3; i < pts.size(); ++i) {
    lo = std::min(lo, pts[i].second);
    hi = std::max(hi, pts[i].second);
  }
  if (lo > 1e-3 && hi <= 1.05 * lo) {
    r.cls = LimitClass::PositiveLimit;
    return r;
  }
  r.note = "no decay and no plateau";
  return r;
}

LimitReport limit_probe(const std::function<double(double)>& evaluate, const std::vector<double>& grid,
                        Direction direction) {
  std::vector<double> values(grid.size());
  for (size_t i = 0; i < grid.size(); ++i) values[i] = evaluate(grid[i]);
  return limit_probe(grid, values, direction);
}

std::vector<double> log_grid(double start, double stop, int count) {
  if (!(start > 0 && stop > 0) || count < 1) throw BadInput("log grid needs positive ends and count >= 1");
  std::vector<double> g;
  if (count == 1) return {start};
  double ls = std::log(start), le = std::log(stop);
  for (int i = 0; i < count; ++i) g.push_back(std::exp(ls + (le - ls) * i / (count - 1)));
  g.front() = start;
  g.back() = stop;
  return g;
}

std::vector<double> parse_grid(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.size() != 4 || parts[0] != "log") throw ParseError("grid must look like log:<start>:<stop>:<count>");
  try {
    size_t used = 0;
    int count = std::stoi(parts[3], &used);
    if (used != parts[3].size()) throw ParseError("bad grid count");
    return log_grid(to_double(parse_rational(parts[1])), to_double(parse_rational(parts[2])), count);
  } catch (const std::logic_error&) {
    throw ParseError("bad grid '" + spec + "'");
  } catch (const BadInput& e) {
    throw ParseError(e.what());
  }
}

}  // namespace rsc

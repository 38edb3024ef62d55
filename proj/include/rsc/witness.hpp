#pragma once

// Explicit radial test functions and numerical checks of the inequalities
// the compactness proofs rely on.
//
// A radial function is stored through a one-dimensional profile g of a
// radial variable r:
//   entire space: r = omega_n^{1/n} |x|, measure coordinate t = r^n;
//   ball B_R:     r = |x| / R,           measure coordinate t = r^{n+w},
// where w = alpha for the weighted target and w = 0 for the source space.
// With these coordinates the map x -> t is measure preserving (the ball
// measure normalized to 1), so r.i. norms of u are norms of g(t^{1/(n+w)}).

#include <json.hpp>

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rsc/extremal.hpp"
#include "rsc/rational.hpp"
#include "rsc/spaces.hpp"
#include "rsc/stepfn.hpp"
#include "rsc/transforms.hpp"

namespace rsc {

double unit_ball_volume(int n);  // omega_n

// Smoothstep of degree 2m+1 rising from 0 at lo to 1 at hi with m vanishing
// derivatives at both ends.
class CutoffSpec {
 public:
  CutoffSpec() = default;
  CutoffSpec(double lo, double hi, int m);

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  int order() const { return m_; }
  // Exact monomial coefficients of the smoothstep on [0, 1].
  const std::vector<Rational>& coefficients() const { return coeffs_; }

  double operator()(double r) const { return derivative(0, r); }
  double derivative(int k, double r) const;
  // Upper bound for sup |eta^{(k)}|, k = 0..m.
  const std::vector<double>& derivative_bounds() const { return bounds_; }

 private:
  double lo_ = 0, hi_ = 1;
  int m_ = 1;
  std::vector<Rational> coeffs_;
  std::vector<double> bounds_;
};

// g = sum_j c_j chi_(0, beta_j) and u = eta * v_m with
// v_j(r) = sum_i c_i (beta_i - r)_+^j / j!.
struct EntireParts {
  int m = 1;
  Rational a = 1;
  std::vector<double> c;
  std::vector<double> beta;
  CutoffSpec cutoff;

  double g(double r) const;
  double v(int j, double r) const;
  // integral_r^inf g(tau) tau^{m-1} d tau + g(r), the derivative envelope.
  double envelope(double r) const;
};

// Piece values of f on (0,1) and the closed-form iterated integrals
// G_k(y) = (1/(k-1)!) integral_y^1 f(s) s^{-m+m/n} (s-y)^{k-1} ds.
struct BallParts {
  int m = 1;
  int n = 2;
  std::vector<double> lo, hi, height;
  double G(int k, double y) const;
  double f(double y) const;
};

enum class WitnessKind { Entire, Ball, Sample };
std::string witness_kind_name(WitnessKind k);

struct RadialProfile {
  WitnessKind kind = WitnessKind::Sample;
  int n = 2;
  double R = 1;    // ball radius
  double alpha = 0;  // ball weight exponent
  double r_zero = 0;     // g = 0 on [0, r_zero)
  double r_support = 0;  // g = 0 on [r_support, inf)
  std::vector<double> breaks;  // kinks and jumps of g in r
  double t_zero = 0;     // g(t^{1/n}) = 0 for t < t_zero, compared exactly (w = 0)
  bool continuous = true;
  bool nonincreasing = false;  // on [r_zero, inf)
  std::function<double(double)> value;
  // Bounds for g on [lo, hi] when no break lies strictly inside.
  std::function<std::pair<double, double>(double, double)> range;
  std::shared_ptr<const RadialProfile> slope;  // |g'| when g is Lipschitz
  std::shared_ptr<const EntireParts> entire;
  std::shared_ptr<const BallParts> ball;

  double operator()(double r) const { return value(r); }
  // Value at the measure coordinate t = r^{n+w}.
  double at_measure(double t, double w = 0) const;
  double measure_of_radius(double r, double w = 0) const;
  bool is_zero() const { return r_support <= r_zero; }
};

struct NormBracket {
  double lower = 0;
  double upper = 0;
  double value() const { return 0.5 * (lower + upper); }
};

struct ProfileEnclosure {
  PiecewiseFn lower;
  PiecewiseFn upper;
  double max_gap = 0;
  size_t cells = 0;
};

constexpr double kProfileGap = 2e-4;
constexpr size_t kMaxProfileCells = 6000;

// Step functions of t bracketing chi_(t_from, inf)(t) g(t^{1/(n+w)}).
ProfileEnclosure profile_enclosure(const RadialProfile& u, Domain domain, double w = 0, double t_from = 0,
                                   double rel_gap = kProfileGap, size_t max_cells = kMaxProfileCells);
// ||chi_(t_from, inf)(t) g(t^{1/(n+w)})||_S, exact up to quadrature for
// nonincreasing profiles and bracketed by enclosures otherwise.
NormBracket profile_norm(const RadialProfile& u, const LZSpace& S, double w = 0, double t_from = 0);
// ||grad u||_S through the slope profile (times omega_n^{1/n} or 1/R).
NormBracket gradient_norm(const RadialProfile& u, const LZSpace& S);

// Radial samples on the entire space, in units of |x|.
RadialProfile radial_tent(int n, double center, double half_width, double height = 1);
RadialProfile radial_cone(int n, double radius, double height = 1);  // height (1 - |x|/radius)_+
// Piecewise constant in |x|: not weakly differentiable.
RadialProfile radial_step(int n, const PiecewiseFn& profile_of_abs_x);
// x -> u(lambda x).
RadialProfile dilate_radial(const RadialProfile& u, double lambda);

// u_{f,a}: vanishes for omega_n |x|^n < a/8. Throws BadInput.
RadialProfile build_u_fa(const PiecewiseFn& f, const Rational& a, int m, int n);
// u_{f,R,a} on B_R with weight |x|^alpha on the target side. Throws BadInput.
RadialProfile build_u_fRa(const PiecewiseFn& f, const Rational& R, const Rational& a, int m, int n,
                          const Rational& alpha = 0);

struct RadialLemmaRow {
  double u_norm = 0;
  double grad_norm = 0;
  double constant = 0;  // smallest C valid on the radius grid
  double peak = 0;
};

struct RadialLemmaReport {
  double p = 2;
  int n = 2;
  double reference = 0;  // (p / (n omega_n))^{1/p}
  std::vector<RadialLemmaRow> rows;
  double max_constant = 0;
  double min_constant = 0;
  bool bounded = true;  // every constant <= reference
};

// Throws NonSmoothProfile for a profile with a jump.
RadialLemmaReport verify_radial_lemma(const std::vector<RadialProfile>& family, double p, int n);

struct TailRow {
  size_t sample = 0;
  double R = 0;
  double lhs = 0;        // ||u chi_{|x| > R}||_Y, upper bracket
  double sobolev = 0;    // ||u||_X + ||grad u||_X, lower bracket
  double sup_estimate = 0;
  double sup_certificate = kInf;
  double ratio = 0;  // lhs / (sup_estimate * sobolev); 0 when lhs = 0
  double certified_ratio = 0;  // against the certificate, 0 when none
};

struct TailReport {
  int n = 2;
  double envelope = 0;  // 6/(n omega_n) + 12
  std::vector<TailRow> rows;
  double max_ratio = 0;
  bool within_envelope = true;  // certified ratios <= envelope, estimated ratios <= 2 envelope
};

TailReport verify_tail_estimate(const std::vector<RadialProfile>& family, const LZSpace& X, const LZSpace& Y,
                                const std::vector<double>& R_grid, const CandidateFamily& search = {});

enum class ConstructionKind { Entire, Ball };
std::string construction_kind_name(ConstructionKind k);

struct ConstructionSample {
  PiecewiseFn f;
  Rational a = 1;
};

struct ConstructionSetup {
  ConstructionKind kind = ConstructionKind::Entire;
  int m = 1;
  int n = 2;
  Rational R = 1;
  Rational alpha = 0;
  LZSpace X = LZSpace::lebesgue(2);
  LZSpace Y = LZSpace::lebesgue(2);
};

struct ConstructionRow {
  double a = 0;
  double f_norm = 0;
  NormBracket u_norm_X;
  NormBracket derivative_norm_X;  // norm of the derivative envelope
  double c1 = 0;       // (||u||_X + ||envelope||_X) / ||f||_X, scaled by max{1, R^-m} on the ball
  double lhs_Y = 0;    // ||chi_(a,inf) f||_Y, or the Copson profile norm on the ball
  NormBracket u_norm_Y;
  double c2 = 0;       // lhs_Y / ||u||_Y
  bool source_bound_ok = true;  // ||u||_X within the closed-form bound
};

struct ConstructionReport {
  ConstructionKind kind = ConstructionKind::Entire;
  std::vector<ConstructionRow> rows;
  double c1_spread = 1;  // max / min over the family
  double c2_spread = 1;
  bool stable = true;  // spreads < 10 and every closed-form bound holds
};

ConstructionReport verify_construction_bounds(const ConstructionSetup& setup,
                                              const std::vector<ConstructionSample>& samples);

// The default families used by the acceptance suite and the CLI.
std::vector<ConstructionSample> default_construction_family(ConstructionKind kind);
std::vector<RadialProfile> default_tent_family(int n);

nlohmann::json to_json(const RadialLemmaReport& r);
nlohmann::json to_json(const TailReport& r);
nlohmann::json to_json(const ConstructionReport& r);

}  // namespace rsc

#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "rsc/rational.hpp"
#include "rsc/spaces.hpp"
#include "rsc/stepfn.hpp"

namespace rsc {

struct CopsonParams {
  int m = 1;
  int n = 2;
  Rational alpha = 0;
  void validate() const;  // throws BadInput
};

// t^beta * (A + B t^gamma) on [lo, hi).
struct PowerPiece {
  double lo = 0, hi = 1;
  double A = 0, B = 0;
  double beta = 0, gamma = 0;
  // Right limit at t = 0 is used when t == 0.
  double eval(double t) const;
};

// Lower and upper step functions bracketing a profile on (0,1).
struct Enclosure {
  PiecewiseFn lower;
  PiecewiseFn upper;
  double max_gap = 0;
};

constexpr double kDefaultEnvelopeGap = 1e-5;
constexpr size_t kMaxEnvelopePieces = size_t{1} << 20;

// Closed-form output of the power-kernel operators on (0,1).
class PowerProfile {
 public:
  PowerProfile() = default;
  explicit PowerProfile(std::vector<PowerPiece> pieces);

  const std::vector<PowerPiece>& pieces() const { return pieces_; }
  double operator()(double t) const;
  // Exact min and max over [lo, hi] within one piece or across pieces.
  std::pair<double, double> range_on(double lo, double hi) const;
  double sup() const;
  double integral() const;
  bool is_nonincreasing() const;

  // Adaptive bisection until every cell satisfies upper - lower <= rel_gap * sup.
  // Throws ResourceExhausted past max_pieces cells.
  Enclosure envelope(double rel_gap = kDefaultEnvelopeGap, size_t max_pieces = kMaxEnvelopePieces) const;

 private:
  std::vector<PowerPiece> pieces_;
};

// t -> integral_{t^{n/(n+alpha)}}^1 f(s) s^{-1+m/n} ds.
PowerProfile copson(const PiecewiseFn& f, const CopsonParams& params);
// t -> t^b integral_t^1 f(s) s^{-1+a} ds, a != 0, b >= max{0, -a}.
PowerProfile t_alpha_beta(const PiecewiseFn& f, const Rational& a, const Rational& b);

// ||chi_(0,cutoff) F||_X for a nonincreasing profile F, by quadrature.
double lz_norm_profile(const PowerProfile& F, const LZSpace& space, double cutoff = 1.0);
// ||chi_(0,cutoff) P||_X for a nonincreasing P that is smooth between the
// given breakpoints; cutoff must be finite.
double lz_norm_callable(const std::function<double(double)>& P, std::vector<double> breaks, const LZSpace& space,
                        double cutoff);

struct Interval {
  Rational lo;
  Rational hi;
};

// sum_{j<=M} chi_{I_j} (1/delta) integral over I_j and I_{j+1} of g.
PiecewiseFn averaging(const PiecewiseFn& g, const std::vector<Interval>& intervals);
// sum_{j<=M+1} chi_{I_j} (1/delta) integral over I_j of h; a contraction on L^1 and L^inf.
PiecewiseFn averaging_core(const PiecewiseFn& h, const std::vector<Interval>& intervals);

struct TailCutBound {
  double fundamental_ratio = 0;  // phi_Y(a) / phi_X(a)
  double tail_majorant = 0;      // || w / phi_X chi_(a,inf) ||_{L^s}, may be +inf
  double total = 0;
};

// Upper bound for sup_{||f||_X <= 1} ||f* chi_(a,inf)||_Y. The second summand
// uses the pointwise bound f*(t) <= ||f||_X / phi_X(t); it is reported as +inf
// when the majorant diverges or decays too slowly to integrate reliably.
TailCutBound tail_cut_bound(const LZSpace& X, const LZSpace& Y, double a);

}  // namespace rsc

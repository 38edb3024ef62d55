#pragma once

// Lorentz-Zygmund spaces L^{p,q,A}[B] over (0,inf) or (0,1):
//   ||f|| = || t^{1/p - 1/q} l^A(t) ll^B(t) f*(t) ||_{L^q},
// with l(t) = 1 + |log t|, ll(t) = 1 + log l(t), and A, B broken exponent
// pairs (first entry on (0,1], second on (1,inf)).

#include <limits>
#include <string>

#include "rsc/rational.hpp"
#include "rsc/stepfn.hpp"

namespace rsc {

constexpr double kInf = std::numeric_limits<double>::infinity();

double ell(double t);        // 1 + |log t|
double ell_ell(double t);    // 1 + log(1 + |log t|)

struct BrokenLog {
  Rational e0 = 0;
  Rational einf = 0;
  const Rational& at(double t) const { return t <= 1 ? e0 : einf; }
  double operator()(double t) const;
};

// Integral of t^c l(t)^e ll(t)^d over (a, b); a may be 0 and b may be +inf.
// Closed form when e = d = 0, otherwise adaptive quadrature after a
// logarithmic change of variable. Throws DivergentIntegral.
double power_log_integral(const Rational& c, const Rational& e, const Rational& d, double a,
                          double b);

struct LZParams {
  ExtRational p = 1;
  ExtRational q = 1;
  BrokenLog A;
  BrokenLog B;  // double-log tier, zero unless requested
  Domain domain = Domain::HalfLine;
};

struct Validity {
  bool ok = false;
  std::string reason;
};

Validity is_valid_ri(const LZParams& params);

class LZSpace {
 public:
  // Throws InvalidSpace when the parameters do not give an r.i. space.
  explicit LZSpace(LZParams params);

  static LZSpace lebesgue(const ExtRational& p, Domain domain = Domain::HalfLine);
  static LZSpace lorentz(const ExtRational& p, const ExtRational& q, Domain domain = Domain::HalfLine);
  static LZSpace linf(Domain domain = Domain::HalfLine);

  // "L(p=2,q=3,a0=0,ainf=-1/2)", "L(r=10,s=2,g=0)", "Linf", "L2".
  static LZSpace parse(const std::string& literal, Domain domain = Domain::HalfLine);

  const LZParams& params() const { return params_; }
  const ExtRational& p() const { return params_.p; }
  const ExtRational& q() const { return params_.q; }
  const Rational& a0() const { return params_.A.e0; }
  const Rational& ainf() const { return params_.A.einf; }
  const Rational& b0() const { return params_.B.e0; }
  const Rational& binf() const { return params_.B.einf; }
  Domain domain() const { return params_.domain; }

  bool has_double_log() const { return params_.B.e0 != 0 || params_.B.einf != 0; }
  bool is_linf() const;
  // Exponent pair in effect at t (on (0,1) only the first entries are used).
  const Rational& alpha_at(double t) const;
  const Rational& beta_at(double t) const;

  // Weight t^{1/p} l^A ll^B, i.e. the q = inf weight.
  double sup_weight(double t) const;
  // q < inf: integral of (t^{1/p-1/q} l^A ll^B)^q over (lo, hi); may be +inf.
  double weight_integral(double lo, double hi) const;
  // q = inf: supremum of t^{1/p} l^A ll^B over [lo, hi] (right end included as a limit).
  double weight_sup(double lo, double hi) const;

  std::string literal() const;

 private:
  LZParams params_;
};

// Norm of f in the space; +inf when f is not in it. Throws NonIntegrableTail.
double lz_norm(const PiecewiseFn& f, const LZSpace& space);
// Norm of chi_(0,t).
double fundamental_function(const LZSpace& space, double t);
// Exact integral of f*g.
Rational holder_pairing(const PiecewiseFn& f, const PiecewiseFn& g);
// Lebesgue exponent p' with 1/p + 1/p' = 1.
ExtRational conjugate_exponent(const ExtRational& p);

}  // namespace rsc

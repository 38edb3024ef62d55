#pragma once

// Exact algebra of nonnegative piecewise-constant functions on (0,inf) or
// (0,1), and their nonincreasing rearrangements.
//
// A function is stored as breakpoints b_1 < ... < b_k (0 is implicit), one
// value per piece [b_{i-1}, b_i), and a tail value on [b_k, end). Every
// constructor and operation returns the canonical form: adjacent equal
// pieces are merged and, on (0,1), no breakpoint reaches 1.

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "rsc/rational.hpp"

namespace rsc {

enum class Domain { HalfLine, UnitInterval };

std::string domain_name(Domain d);  // "halfline" | "unit"
Domain parse_domain(const std::string& name);

struct Piece {
  Rational lo;
  std::optional<Rational> hi;  // empty for the unbounded tail on the half-line
  Rational value;
};

class PiecewiseFn {
 public:
  PiecewiseFn() = default;  // zero on the half-line
  // Validates (strictly increasing positive breaks, nonnegative values) and
  // canonicalizes. Throws BadInput.
  PiecewiseFn(Domain domain, std::vector<Rational> breaks, std::vector<Rational> values,
              Rational tail = 0);

  static PiecewiseFn zero(Domain domain);
  static PiecewiseFn constant(Domain domain, const Rational& c);
  // height * chi_[lo, hi); hi is clipped to the domain end.
  static PiecewiseFn indicator(Domain domain, const Rational& lo, const Rational& hi,
                               const Rational& height = 1);

  Domain domain() const { return domain_; }
  const std::vector<Rational>& breaks() const { return breaks_; }
  const std::vector<Rational>& values() const { return values_; }
  const Rational& tail() const { return tail_; }

  // All pieces including the tail piece (omitted when it is empty).
  std::vector<Piece> pieces() const;
  size_t piece_count() const { return breaks_.size() + 1; }

  // Right-continuous evaluation; t must be >= 0.
  Rational operator()(const Rational& t) const;
  double eval(double t) const;

  bool is_zero() const { return breaks_.empty() && tail_ == 0; }
  // Bounded support: always on (0,1), tail == 0 on the half-line.
  bool bounded_support() const;
  bool is_nonincreasing() const;
  // Right end of the essential support (0 for the zero function); requires bounded support.
  Rational support_end() const;
  Rational sup_value() const;

  friend bool operator==(const PiecewiseFn& a, const PiecewiseFn& b);

 private:
  void canonicalize();

  Domain domain_ = Domain::HalfLine;
  std::vector<Rational> breaks_;
  std::vector<Rational> values_;
  Rational tail_ = 0;
};

// A PiecewiseFn whose values, tail included, are nonincreasing.
class MonotoneStepFn {
 public:
  MonotoneStepFn() = default;
  // Throws BadInput when f is not nonincreasing.
  explicit MonotoneStepFn(PiecewiseFn f);

  const PiecewiseFn& fn() const { return f_; }
  operator const PiecewiseFn&() const { return f_; }  // NOLINT(google-explicit-constructor)
  Rational operator()(const Rational& t) const { return f_(t); }

  friend bool operator==(const MonotoneStepFn& a, const MonotoneStepFn& b) { return a.f_ == b.f_; }

 private:
  PiecewiseFn f_;
};

// lambda -> |{f > lambda}| as a step function on the half-line.
MonotoneStepFn distribution(const PiecewiseFn& f);
MonotoneStepFn rearrange(const PiecewiseFn& f);
// f**(t) = (1/t) * integral_0^t f*.
Rational maximal_rearrangement(const PiecewiseFn& f, const Rational& t);
// D_a f(t) = f(t/a) * chi_(0, a L), L the domain length.
PiecewiseFn dilate(const PiecewiseFn& f, const Rational& a);

PiecewiseFn add(const PiecewiseFn& f, const PiecewiseFn& g);
PiecewiseFn max(const PiecewiseFn& f, const PiecewiseFn& g);
PiecewiseFn min(const PiecewiseFn& f, const PiecewiseFn& g);
PiecewiseFn multiply(const PiecewiseFn& f, const PiecewiseFn& g);
PiecewiseFn scale(const PiecewiseFn& f, const Rational& lambda);
PiecewiseFn truncate_above(const PiecewiseFn& f, const Rational& cap);
// f * chi_[lo, hi); hi empty means up to the domain end.
PiecewiseFn restrict(const PiecewiseFn& f, const Rational& lo, const std::optional<Rational>& hi);

// Exact integral over the whole domain / over (0, t).
Rational integral(const PiecewiseFn& f);
Rational integral_to(const PiecewiseFn& f, const Rational& t);

// Pointwise comparison f <= g everywhere on the domain.
bool pointwise_le(const PiecewiseFn& f, const PiecewiseFn& g);

nlohmann::json to_json(const PiecewiseFn& f);
PiecewiseFn piecewise_from_json(const nlohmann::json& j);

}  // namespace rsc

#pragma once

// Exact rationals (GMP) and the extended rationals [.., +inf] used for
// integrability exponents.

#include <gmpxx.h>

#include <compare>
#include <string>

namespace rsc {

using Rational = mpq_class;

// Accepts "7", "-3/4", "0.125", "1e4", "2.5e-3". Throws ParseError.
Rational parse_rational(const std::string& text);

// Canonical GMP form: "3/4", "-2", "0".
std::string to_string(const Rational& r);

double to_double(const Rational& r);

// Exact rational equal to the given finite double.
Rational from_double(double x);

Rational abs(const Rational& r);

class ExtRational {
 public:
  ExtRational() = default;
  ExtRational(const Rational& v) : value_(v) {}  // NOLINT(google-explicit-constructor)
  ExtRational(long v) : value_(v) {}             // NOLINT(google-explicit-constructor)

  static ExtRational infinity();
  // Same literals as parse_rational plus "inf" / "infinity" / "oo".
  static ExtRational parse(const std::string& text);

  bool is_inf() const { return inf_; }
  bool is_finite() const { return !inf_; }
  // Finite value; throws std::logic_error for +inf.
  const Rational& value() const;

  // 1/inf = 0 and 1/0 = inf.
  ExtRational reciprocal() const;
  double to_double() const;
  std::string str() const;

  friend bool operator==(const ExtRational& a, const ExtRational& b);
  friend std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b);

 private:
  bool inf_ = false;
  Rational value_ = 0;
};

}  // namespace rsc

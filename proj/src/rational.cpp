#include "rsc/rational.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "rsc/errors.hpp"

namespace rsc {

namespace {

std::string trim(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

mpz_class pow10(unsigned long k) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, k);
  return r;
}

// Decimal literal with optional fraction and exponent, no sign.
Rational parse_decimal(const std::string& s, const std::string& original) {
  std::string mant = s;
  long exp10 = 0;
  auto epos = s.find_first_of("eE");
  if (epos != std::string::npos) {
    mant = s.substr(0, epos);
    std::string ex = s.substr(epos + 1);
    bool neg = false;
    if (!ex.empty() && (ex[0] == '+' || ex[0] == '-')) {
      neg = ex[0] == '-';
      ex = ex.substr(1);
    }
    if (!all_digits(ex) || ex.size() > 6) throw ParseError("bad rational literal: '" + original + "'");
    exp10 = std::stol(ex);
    if (neg) exp10 = -exp10;
  }
  std::string intpart = mant, frac;
  auto dot = mant.find('.');
  if (dot != std::string::npos) {
    intpart = mant.substr(0, dot);
    frac = mant.substr(dot + 1);
  }
  if (intpart.empty() && frac.empty()) throw ParseError("bad rational literal: '" + original + "'");
  if ((!intpart.empty() && !all_digits(intpart)) || (!frac.empty() && !all_digits(frac)))
    throw ParseError("bad rational literal: '" + original + "'");
  mpz_class num((intpart.empty() ? std::string("0") : intpart) + frac, 10);
  long scale = exp10 - static_cast<long>(frac.size());
  Rational r(num);
  if (scale >= 0)
    r *= Rational(pow10(static_cast<unsigned long>(scale)));
  else
    r /= Rational(pow10(static_cast<unsigned long>(-scale)));
  r.canonicalize();
  return r;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  std::string s = trim(text);
  if (s.empty()) throw ParseError("empty rational literal");
  bool neg = false;
  std::string body = s;
  if (body[0] == '+' || body[0] == '-') {
    neg = body[0] == '-';
    body = body.substr(1);
  }
  Rational r;
  auto slash = body.find('/');
  if (slash != std::string::npos) {
    std::string n = trim(body.substr(0, slash)), d = trim(body.substr(slash + 1));
    if (!all_digits(n) || !all_digits(d)) throw ParseError("bad rational literal: '" + text + "'");
    mpz_class den(d, 10);
    if (den == 0) throw ParseError("zero denominator in '" + text + "'");
    r = Rational(mpz_class(n, 10), den);
    r.canonicalize();
  } else {
    r = parse_decimal(body, text);
  }
  return neg ? Rational(-r) : r;
}

std::string to_string(const Rational& r) { return r.get_str(); }

double to_double(const Rational& r) { return r.get_d(); }

Rational from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("from_double: non-finite value");
  Rational r(x);
  r.canonicalize();
  return r;
}

Rational abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

ExtRational ExtRational::infinity() {
  ExtRational e;
  e.inf_ = true;
  return e;
}

ExtRational ExtRational::parse(const std::string& text) {
  std::string s = trim(text);
  if (s == "inf" || s == "infinity" || s == "oo" || s == "+inf" || s == "Inf") return infinity();
  return ExtRational(parse_rational(s));
}

const Rational& ExtRational::value() const {
  if (inf_) throw std::logic_error("ExtRational::value on infinity");
  return value_;
}

ExtRational ExtRational::reciprocal() const {
  if (inf_) return ExtRational(Rational(0));
  if (value_ == 0) return infinity();
  return ExtRational(Rational(1) / value_);
}

double ExtRational::to_double() const {
  return inf_ ? std::numeric_limits<double>::infinity() : value_.get_d();
}

std::string ExtRational::str() const { return inf_ ? "inf" : value_.get_str(); }

bool operator==(const ExtRational& a, const ExtRational& b) {
  if (a.inf_ || b.inf_) return a.inf_ == b.inf_;
  return a.value_ == b.value_;
}

std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b) {
  if (a.inf_ && b.inf_) return std::strong_ordering::equal;
  if (a.inf_) return std::strong_ordering::greater;
  if (b.inf_) return std::strong_ordering::less;
  int c = cmp(a.value_, b.value_);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace rsc

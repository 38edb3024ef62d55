#include "rsc/spaces.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "rsc/errors.hpp"

namespace rsc {

double ell(double t) { return 1.0 + std::abs(std::log(t)); }

double ell_ell(double t) { return 1.0 + std::log(ell(t)); }

double BrokenLog::operator()(double t) const { return std::pow(ell(t), at(t).get_d()); }

Validity is_valid_ri(const LZParams& prm) {
  const ExtRational one(1);
  if (prm.p < one || prm.q < one) return {false, "p and q must lie in [1, inf]"};
  bool unit = prm.domain == Domain::UnitInterval;
  const Rational& a0 = prm.A.e0;
  const Rational& ainf = prm.A.einf;
  const Rational& b0 = prm.B.e0;
  const Rational& binf = prm.B.einf;
  if (prm.p == one) {
    if (prm.q != one) return {false, "p = 1 requires q = 1"};
    bool zero_ok = a0 > 0 || (a0 == 0 && b0 >= 0);
    bool inf_ok = unit || ainf < 0 || (ainf == 0 && binf <= 0);
    if (!zero_ok) return {false, "p = q = 1 requires alpha_0 >= 0"};
    if (!inf_ok) return {false, "p = q = 1 requires alpha_inf <= 0"};
    return {true, "p = q = 1 with admissible log exponents"};
  }
  if (prm.p.is_finite()) return {true, "1 < p < inf"};
  if (prm.q.is_finite()) {
    Rational s = a0 + prm.q.reciprocal().value();
    if (s < 0 || (s == 0 && b0 + prm.q.reciprocal().value() < 0))
      return {true, "p = inf, q < inf, alpha_0 + 1/q < 0"};
    return {false, "p = inf and q < inf require alpha_0 + 1/q < 0"};
  }
  if (a0 < 0 || (a0 == 0 && b0 <= 0)) return {true, "p = q = inf, alpha_0 <= 0"};
  return {false, "p = q = inf requires alpha_0 <= 0"};
}

LZSpace::LZSpace(LZParams params) : params_(std::move(params)) {
  if (params_.domain == Domain::UnitInterval) {
    params_.A.einf = params_.A.e0;
    params_.B.einf = params_.B.e0;
  }
  Validity v = is_valid_ri(params_);
  if (!v.ok) throw InvalidSpace("not a rearrangement-invariant space: " + v.reason);
}

LZSpace LZSpace::lebesgue(const ExtRational& p, Domain domain) {
  LZParams prm;
  prm.p = p;
  prm.q = p;
  prm.domain = domain;
  return LZSpace(prm);
}

LZSpace LZSpace::lorentz(const ExtRational& p, const ExtRational& q, Domain domain) {
  LZParams prm;
  prm.p = p;
  prm.q = q;
  prm.domain = domain;
  return LZSpace(prm);
}

LZSpace LZSpace::linf(Domain domain) { return lebesgue(ExtRational::infinity(), domain); }

bool LZSpace::is_linf() const {
  return params_.p.is_inf() && params_.q.is_inf() && a0() == 0 && b0() == 0 &&
         (params_.domain == Domain::UnitInterval || (ainf() == 0 && binf() == 0));
}

const Rational& LZSpace::alpha_at(double t) const { return params_.A.at(t); }
const Rational& LZSpace::beta_at(double t) const { return params_.B.at(t); }

double LZSpace::sup_weight(double t) const {
  double w = params_.p.is_inf() ? 1.0 : std::pow(t, params_.p.reciprocal().value().get_d());
  const Rational& a = alpha_at(t);
  const Rational& b = beta_at(t);
  if (a != 0) w *= std::pow(ell(t), a.get_d());
  if (b != 0) w *= std::pow(ell_ell(t), b.get_d());
  return w;
}

double LZSpace::weight_integral(double lo, double hi) const {
  if (params_.q.is_inf()) throw std::logic_error("weight_integral needs q < inf");
  if (!(hi > lo)) return 0.0;
  const Rational& q = params_.q.value();
  Rational c = q * params_.p.reciprocal().value() - 1;
  auto part = [&](double a, double b, const Rational& al, const Rational& be) {
    try {
      return power_log_integral(c, q * al, q * be, a, b);
    } catch (const DivergentIntegral&) {
      return kInf;
    }
  };
  if (lo >= 1.0 || hi <= 1.0) {
    double probe = hi <= 1.0 ? 0.5 : 2.0;
    return part(lo, hi, alpha_at(probe), beta_at(probe));
  }
  return part(lo, 1.0, params_.A.e0, params_.B.e0) + part(1.0, hi, params_.A.einf, params_.B.einf);
}

namespace {

// d/dx of log W along x = 1 + |log t| on one side of t = 1, where
// sign = +1 for t >= 1 and -1 for t <= 1:
//   sign/p + (alpha + beta / (1 + log x)) / x
double log_weight_slope(double x, double inv_p, double sign, double alpha, double beta) {
  return sign * inv_p + (alpha + beta / (1.0 + std::log(x))) / x;
}

// Critical points, as values of x = 1 + |log t| > 1, of the weight on one side of 1.
std::vector<double> critical_ells(double inv_p, double sign, double alpha, double beta) {
  std::vector<double> xs;
  if (beta == 0.0) {
    if (inv_p == 0.0) return xs;  // monotone
    double x = -sign * alpha / inv_p;
    if (x > 1.0) xs.push_back(x);
    return xs;
  }
  // bracket sign changes on a logarithmic grid, then bisect
  double prev_x = 1.0;
  double prev = log_weight_slope(prev_x, inv_p, sign, alpha, beta);
  for (int i = 1; i <= 400; ++i) {
    double x = std::pow(10.0, 0.02 * i);  // up to 1e8
    double cur = log_weight_slope(x, inv_p, sign, alpha, beta);
    if ((prev < 0) != (cur < 0)) {
      double lo = prev_x, hi = x;
      for (int k = 0; k < 200 && hi - lo > 1e-15 * hi; ++k) {
        double mid = 0.5 * (lo + hi);
        double vm = log_weight_slope(mid, inv_p, sign, alpha, beta);
        if ((vm < 0) == (prev < 0))
          lo = mid;
        else
          hi = mid;
      }
      xs.push_back(0.5 * (lo + hi));
    }
    prev_x = x;
    prev = cur;
  }
  return xs;
}

}  // namespace

double LZSpace::weight_sup(double lo, double hi) const {
  if (!(hi >= lo)) return 0.0;
  double inv_p = params_.p.is_inf() ? 0.0 : params_.p.reciprocal().value().get_d();
  auto limit_at_zero = [&]() {
    if (inv_p > 0) return 0.0;
    int sa = sgn(params_.A.e0), sb = sgn(params_.B.e0);
    if (sa < 0 || (sa == 0 && sb < 0)) return 0.0;
    if (sa == 0 && sb == 0) return 1.0;
    return kInf;
  };
  auto limit_at_infinity = [&]() {
    if (inv_p > 0) return kInf;
    int sa = sgn(params_.A.einf), sb = sgn(params_.B.einf);
    if (sa < 0 || (sa == 0 && sb < 0)) return 0.0;
    if (sa == 0 && sb == 0) return 1.0;
    return kInf;
  };
  double best = (lo == 0.0) ? limit_at_zero() : sup_weight(lo);
  best = std::max(best, std::isinf(hi) ? limit_at_infinity() : sup_weight(hi));
  if (lo < 1.0 && hi > 1.0) best = std::max(best, sup_weight(1.0));
  auto scan_side = [&](double sign, const Rational& al, const Rational& be) {
    for (double x : critical_ells(inv_p, sign, al.get_d(), be.get_d())) {
      double t = std::exp(sign * (x - 1.0));
      if (t > lo && t < hi) best = std::max(best, sup_weight(t));
    }
  };
  if (lo < 1.0) scan_side(-1.0, params_.A.e0, params_.B.e0);
  if (hi > 1.0) scan_side(1.0, params_.A.einf, params_.B.einf);
  return best;
}

namespace {

std::string trim(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

}  // namespace

LZSpace LZSpace::parse(const std::string& literal, Domain domain) {
  std::string s = trim(literal);
  if (s.size() < 2 || s[0] != 'L') throw ParseError("space literal must start with 'L': '" + literal + "'");
  LZParams prm;
  prm.domain = domain;
  if (s[1] != '(') {
    // "Linf", "L2", "L3/2"
    ExtRational p = ExtRational::parse(s.substr(1));
    prm.p = p;
    prm.q = p;
    return LZSpace(prm);
  }
  if (s.back() != ')') throw ParseError("unbalanced parentheses in '" + literal + "'");
  std::string body = s.substr(2, s.size() - 3);
  bool have_p = false, have_q = false;
  std::vector<std::string> items;
  for (size_t pos = 0;;) {
    size_t comma = body.find(',', pos);
    items.push_back(trim(body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos)));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  for (const auto& item : items) {
    if (item.empty()) throw ParseError("empty field in '" + literal + "'");
    auto eq = item.find('=');
    if (eq == std::string::npos) throw ParseError("expected key=value in '" + literal + "'");
    std::string key = trim(item.substr(0, eq)), val = trim(item.substr(eq + 1));
    if (key == "p" || key == "r") {
      prm.p = ExtRational::parse(val);
      have_p = true;
    } else if (key == "q" || key == "s") {
      prm.q = ExtRational::parse(val);
      have_q = true;
    } else if (key == "a" || key == "g" || key == "gamma") {
      prm.A.e0 = prm.A.einf = parse_rational(val);
    } else if (key == "a0") {
      prm.A.e0 = parse_rational(val);
    } else if (key == "ainf") {
      prm.A.einf = parse_rational(val);
    } else if (key == "b" || key == "d" || key == "delta") {
      prm.B.e0 = prm.B.einf = parse_rational(val);
    } else if (key == "b0") {
      prm.B.e0 = parse_rational(val);
    } else if (key == "binf") {
      prm.B.einf = parse_rational(val);
    } else {
      throw ParseError("unknown key '" + key + "' in '" + literal + "'");
    }
  }
  if (!have_p) throw ParseError("space literal needs p: '" + literal + "'");
  if (!have_q) prm.q = prm.p;
  return LZSpace(prm);
}

std::string LZSpace::literal() const {
  if (is_linf()) return "Linf";
  std::string out = "L(p=" + params_.p.str() + ",q=" + params_.q.str() + ",a0=" + to_string(a0());
  if (params_.domain == Domain::HalfLine) out += ",ainf=" + to_string(ainf());
  if (has_double_log()) {
    out += ",b0=" + to_string(b0());
    if (params_.domain == Domain::HalfLine) out += ",binf=" + to_string(binf());
  }
  return out + ")";
}

double lz_norm(const PiecewiseFn& f, const LZSpace& space) {
  if (f.domain() != space.domain()) throw DomainMismatch();
  const PiecewiseFn g = rearrange(f).fn();
  if (space.q().is_inf()) {
    double best = 0.0;
    for (const auto& p : g.pieces()) {
      if (p.value == 0) continue;
      double lo = p.lo.get_d(), hi = p.hi ? p.hi->get_d() : kInf;
      best = std::max(best, p.value.get_d() * space.weight_sup(lo, hi));
    }
    return best;
  }
  double q = space.q().value().get_d();
  double acc = 0.0;
  for (const auto& p : g.pieces()) {
    if (p.value == 0) continue;
    double w = space.weight_integral(p.lo.get_d(), p.hi ? p.hi->get_d() : kInf);
    if (std::isinf(w)) return kInf;
    acc += std::pow(p.value.get_d(), q) * w;
  }
  return std::pow(acc, 1.0 / q);
}

double fundamental_function(const LZSpace& space, double t) {
  if (t <= 0) return 0.0;
  if (space.domain() == Domain::UnitInterval) t = std::min(t, 1.0);
  if (space.q().is_inf()) return space.weight_sup(0.0, t);
  double w = space.weight_integral(0.0, t);
  return std::isinf(w) ? kInf : std::pow(w, 1.0 / space.q().value().get_d());
}

Rational holder_pairing(const PiecewiseFn& f, const PiecewiseFn& g) {
  return integral(multiply(f, g));
}

ExtRational conjugate_exponent(const ExtRational& p) {
  if (p.is_inf()) return ExtRational(1);
  if (p.value() == 1) return ExtRational::infinity();
  return ExtRational(p.value() / (p.value() - 1));
}

}  // namespace rsc

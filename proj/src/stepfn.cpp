#include "rsc/stepfn.hpp"

#include <algorithm>
#include <functional>
#include <utility>

#include "rsc/errors.hpp"

namespace rsc {

std::string domain_name(Domain d) { return d == Domain::HalfLine ? "halfline" : "unit"; }

Domain parse_domain(const std::string& name) {
  if (name == "halfline" || name == "entire") return Domain::HalfLine;
  if (name == "unit" || name == "ball") return Domain::UnitInterval;
  throw ParseError("unknown domain '" + name + "'");
}

PiecewiseFn::PiecewiseFn(Domain domain, std::vector<Rational> breaks, std::vector<Rational> values,
                         Rational tail)
    : domain_(domain), breaks_(std::move(breaks)), values_(std::move(values)), tail_(std::move(tail)) {
  if (breaks_.size() != values_.size())
    throw BadInput("breaks and values must have the same length");
  for (size_t i = 0; i < breaks_.size(); ++i) {
    if (breaks_[i] <= 0) throw BadInput("breakpoints must be positive");
    if (i > 0 && breaks_[i] <= breaks_[i - 1]) throw BadInput("breakpoints must be strictly increasing");
    if (values_[i] < 0) throw BadInput("values must be nonnegative");
  }
  if (tail_ < 0) throw BadInput("tail value must be nonnegative");
  canonicalize();
}

void PiecewiseFn::canonicalize() {
  if (domain_ == Domain::UnitInterval) {
    auto it = std::lower_bound(breaks_.begin(), breaks_.end(), Rational(1));
    size_t j = static_cast<size_t>(it - breaks_.begin());
    if (j < breaks_.size()) {
      // piece [b_{j-1}, b_j) already covers the rest of (0,1)
      tail_ = values_[j];
      breaks_.resize(j);
      values_.resize(j);
    }
  }
  std::vector<Rational> nb, nv;
  nb.reserve(breaks_.size());
  nv.reserve(values_.size());
  for (size_t i = 0; i < breaks_.size(); ++i) {
    const Rational& next = (i + 1 < values_.size()) ? values_[i + 1] : tail_;
    if (values_[i] != next) {
      nb.push_back(breaks_[i]);
      nv.push_back(values_[i]);
    }
  }
  breaks_ = std::move(nb);
  values_ = std::move(nv);
}

PiecewiseFn PiecewiseFn::zero(Domain domain) { return PiecewiseFn(domain, {}, {}, 0); }

PiecewiseFn PiecewiseFn::constant(Domain domain, const Rational& c) {
  return PiecewiseFn(domain, {}, {}, c);
}

PiecewiseFn PiecewiseFn::indicator(Domain domain, const Rational& lo, const Rational& hi,
                                   const Rational& height) {
  if (lo < 0 || hi <= lo) throw BadInput("indicator needs 0 <= lo < hi");
  std::vector<Rational> b, v;
  if (lo > 0) {
    b.push_back(lo);
    v.push_back(0);
  }
  Rational h = hi;
  if (domain == Domain::UnitInterval && h > 1) h = 1;
  if (h <= lo) return zero(domain);
  b.push_back(h);
  v.push_back(height);
  return PiecewiseFn(domain, std::move(b), std::move(v), 0);
}

std::vector<Piece> PiecewiseFn::pieces() const {
  std::vector<Piece> out;
  out.reserve(breaks_.size() + 1);
  Rational lo = 0;
  for (size_t i = 0; i < breaks_.size(); ++i) {
    out.push_back({lo, breaks_[i], values_[i]});
    lo = breaks_[i];
  }
  if (domain_ == Domain::UnitInterval)
    out.push_back({lo, Rational(1), tail_});
  else
    out.push_back({lo, std::nullopt, tail_});
  return out;
}

Rational PiecewiseFn::operator()(const Rational& t) const {
  if (domain_ == Domain::UnitInterval && t >= 1) return 0;
  auto it = std::upper_bound(breaks_.begin(), breaks_.end(), t);
  size_t i = static_cast<size_t>(it - breaks_.begin());
  return i < values_.size() ? values_[i] : tail_;
}

double PiecewiseFn::eval(double t) const {
  if (domain_ == Domain::UnitInterval && t >= 1) return 0;
  size_t i = 0;
  while (i < breaks_.size() && breaks_[i].get_d() <= t) ++i;
  return (i < values_.size() ? values_[i] : tail_).get_d();
}

bool PiecewiseFn::bounded_support() const { return domain_ == Domain::UnitInterval || tail_ == 0; }

bool PiecewiseFn::is_nonincreasing() const {
  for (size_t i = 0; i < values_.size(); ++i) {
    const Rational& next = (i + 1 < values_.size()) ? values_[i + 1] : tail_;
    if (next > values_[i]) return false;
  }
  return true;
}

Rational PiecewiseFn::support_end() const {
  if (tail_ != 0) {
    if (domain_ == Domain::HalfLine) throw NonIntegrableTail();
    return 1;
  }
  return breaks_.empty() ? Rational(0) : breaks_.back();
}

Rational PiecewiseFn::sup_value() const {
  Rational m = tail_;
  for (const auto& v : values_) m = std::max(m, v);
  return m;
}

bool operator==(const PiecewiseFn& a, const PiecewiseFn& b) {
  return a.domain_ == b.domain_ && a.breaks_ == b.breaks_ && a.values_ == b.values_ && a.tail_ == b.tail_;
}

MonotoneStepFn::MonotoneStepFn(PiecewiseFn f) : f_(std::move(f)) {
  if (!f_.is_nonincreasing()) throw BadInput("function is not nonincreasing");
}

namespace {

Rational piece_length(const Piece& p) {
  if (!p.hi) throw NonIntegrableTail();
  return *p.hi - p.lo;
}

PiecewiseFn combine(const PiecewiseFn& f, const PiecewiseFn& g,
                    const std::function<Rational(const Rational&, const Rational&)>& op) {
  if (f.domain() != g.domain()) throw DomainMismatch();
  std::vector<Rational> merged;
  merged.reserve(f.breaks().size() + g.breaks().size());
  std::merge(f.breaks().begin(), f.breaks().end(), g.breaks().begin(), g.breaks().end(),
             std::back_inserter(merged));
  merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
  std::vector<Rational> vals;
  vals.reserve(merged.size());
  // walk both break lists; the piece ending at merged[i] starts at merged[i-1]
  size_t fi = 0, gi = 0;
  for (const auto& b : merged) {
    const Rational& fv = fi < f.values().size() ? f.values()[fi] : f.tail();
    const Rational& gv = gi < g.values().size() ? g.values()[gi] : g.tail();
    vals.push_back(op(fv, gv));
    if (fi < f.breaks().size() && f.breaks()[fi] == b) ++fi;
    if (gi < g.breaks().size() && g.breaks()[gi] == b) ++gi;
  }
  return PiecewiseFn(f.domain(), std::move(merged), std::move(vals), op(f.tail(), g.tail()));
}

PiecewiseFn map_values(const PiecewiseFn& f, const std::function<Rational(const Rational&)>& op) {
  std::vector<Rational> vals;
  vals.reserve(f.values().size());
  for (const auto& v : f.values()) vals.push_back(op(v));
  return PiecewiseFn(f.domain(), f.breaks(), std::move(vals), op(f.tail()));
}

}  // namespace

MonotoneStepFn distribution(const PiecewiseFn& f) {
  if (!f.bounded_support()) throw NonIntegrableTail();
  std::vector<std::pair<Rational, Rational>> levels;  // (value, measure)
  for (const auto& p : f.pieces()) {
    if (p.value > 0) levels.emplace_back(p.value, piece_length(p));
  }
  std::sort(levels.begin(), levels.end(),
            [](const auto& x, const auto& y) { return x.first > y.first; });
  // cumulative measure of {f >= u_j} for distinct values u_1 > u_2 > ...
  std::vector<Rational> distinct, cum;
  Rational acc = 0;
  for (size_t i = 0; i < levels.size(); ++i) {
    acc += levels[i].second;
    if (i + 1 == levels.size() || levels[i + 1].first != levels[i].first) {
      distinct.push_back(levels[i].first);
      cum.push_back(acc);
    }
  }
  std::vector<Rational> breaks(distinct.rbegin(), distinct.rend());
  std::vector<Rational> values(cum.rbegin(), cum.rend());
  return MonotoneStepFn(PiecewiseFn(Domain::HalfLine, std::move(breaks), std::move(values), 0));
}

MonotoneStepFn rearrange(const PiecewiseFn& f) {
  if (!f.bounded_support()) throw NonIntegrableTail();
  std::vector<std::pair<Rational, Rational>> levels;
  for (const auto& p : f.pieces()) {
    if (p.value > 0) levels.emplace_back(p.value, piece_length(p));
  }
  std::stable_sort(levels.begin(), levels.end(),
                   [](const auto& x, const auto& y) { return x.first > y.first; });
  std::vector<Rational> breaks, values;
  Rational pos = 0;
  for (const auto& [v, len] : levels) {
    pos += len;
    breaks.push_back(pos);
    values.push_back(v);
  }
  return MonotoneStepFn(PiecewiseFn(f.domain(), std::move(breaks), std::move(values), 0));
}

Rational integral_to(const PiecewiseFn& f, const Rational& t) {
  Rational acc = 0;
  for (const auto& p : f.pieces()) {
    if (p.lo >= t) break;
    Rational hi = p.hi ? std::min(*p.hi, t) : t;
    acc += p.value * (hi - p.lo);
  }
  return acc;
}

Rational integral(const PiecewiseFn& f) {
  if (!f.bounded_support()) throw NonIntegrableTail();
  Rational acc = 0;
  for (const auto& p : f.pieces()) {
    if (p.hi) acc += p.value * (*p.hi - p.lo);
  }
  return acc;
}

Rational maximal_rearrangement(const PiecewiseFn& f, const Rational& t) {
  if (t <= 0) throw BadInput("maximal rearrangement needs t > 0");
  return integral_to(rearrange(f).fn(), t) / t;
}

PiecewiseFn dilate(const PiecewiseFn& f, const Rational& a) {
  if (a <= 0) throw BadInput("dilation factor must be positive");
  std::vector<Rational> breaks, values = f.values();
  breaks.reserve(f.breaks().size() + 1);
  for (const auto& b : f.breaks()) breaks.push_back(b * a);
  if (f.domain() == Domain::UnitInterval && a < 1) {
    // chi_(0,a): the old tail lives on [a b_k, a), zero afterwards
    breaks.push_back(a);
    values.push_back(f.tail());
    return PiecewiseFn(f.domain(), std::move(breaks), std::move(values), 0);
  }
  return PiecewiseFn(f.domain(), std::move(breaks), std::move(values), f.tail());
}

PiecewiseFn add(const PiecewiseFn& f, const PiecewiseFn& g) {
  return combine(f, g, [](const Rational& x, const Rational& y) { return Rational(x + y); });
}

PiecewiseFn max(const PiecewiseFn& f, const PiecewiseFn& g) {
  return combine(f, g, [](const Rational& x, const Rational& y) { return x < y ? y : x; });
}

PiecewiseFn min(const PiecewiseFn& f, const PiecewiseFn& g) {
  return combine(f, g, [](const Rational& x, const Rational& y) { return x < y ? x : y; });
}

PiecewiseFn multiply(const PiecewiseFn& f, const PiecewiseFn& g) {
  return combine(f, g, [](const Rational& x, const Rational& y) { return Rational(x * y); });
}

PiecewiseFn scale(const PiecewiseFn& f, const Rational& lambda) {
  if (lambda < 0) throw BadInput("scale factor must be nonnegative");
  return map_values(f, [&](const Rational& v) { return Rational(v * lambda); });
}

PiecewiseFn truncate_above(const PiecewiseFn& f, const Rational& cap) {
  if (cap < 0) throw BadInput("truncation level must be nonnegative");
  return map_values(f, [&](const Rational& v) { return v < cap ? v : cap; });
}

PiecewiseFn restrict(const PiecewiseFn& f, const Rational& lo, const std::optional<Rational>& hi) {
  if (lo < 0 || (hi && *hi <= lo)) throw BadInput("restrict needs 0 <= lo < hi");
  std::vector<Rational> b, v;
  if (lo > 0) {
    b.push_back(lo);
    v.push_back(0);
  }
  Rational tail = 1;
  if (hi && (f.domain() == Domain::HalfLine || *hi < 1)) {
    b.push_back(*hi);
    v.push_back(1);
    tail = 0;
  }
  return multiply(f, PiecewiseFn(f.domain(), std::move(b), std::move(v), tail));
}

bool pointwise_le(const PiecewiseFn& f, const PiecewiseFn& g) {
  bool ok = true;
  combine(f, g, [&](const Rational& x, const Rational& y) {
    if (x > y) ok = false;
    return Rational(0);
  });
  return ok;
}

nlohmann::json to_json(const PiecewiseFn& f) {
  nlohmann::json j;
  j["domain"] = domain_name(f.domain());
  j["breaks"] = nlohmann::json::array();
  j["values"] = nlohmann::json::array();
  for (const auto& b : f.breaks()) j["breaks"].push_back(to_string(b));
  for (const auto& v : f.values()) j["values"].push_back(to_string(v));
  j["tail"] = to_string(f.tail());
  return j;
}

namespace {

Rational rational_field(const nlohmann::json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw ParseError("rational fields must be strings like \"3/4\" or integers");
}

}  // namespace

PiecewiseFn piecewise_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("step function JSON must be an object");
  Domain d = parse_domain(j.value("domain", std::string("halfline")));
  std::vector<Rational> breaks, values;
  if (j.contains("breaks"))
    for (const auto& b : j.at("breaks")) breaks.push_back(rational_field(b));
  if (j.contains("values"))
    for (const auto& v : j.at("values")) values.push_back(rational_field(v));
  Rational tail = j.contains("tail") ? rational_field(j.at("tail")) : Rational(0);
  return PiecewiseFn(d, std::move(breaks), std::move(values), std::move(tail));
}

}  // namespace rsc

#include "rsc/verdicts.hpp"

#include <algorithm>

#include "rsc/errors.hpp"

namespace rsc {

namespace {

Rational inv(const ExtRational& x) { return x.reciprocal().value(); }

// Sobolev threshold (n + alpha) p / (n - m p); +inf at p = n/m. Requires p <= n/m.
ExtRational sobolev_threshold(int m, int n, const Rational& alpha, const ExtRational& p) {
  Rational crit(n, m);
  crit.canonicalize();
  if (p.is_inf() || p.value() >= crit) return ExtRational::infinity();
  Rational pv = p.value();
  Rational r = (Rational(n) + alpha) * pv / (Rational(n) - Rational(m) * pv);
  return r;
}

Rational critical_p(int m, int n) {
  Rational c(n, m);
  c.canonicalize();
  return c;
}

class Tracer {
 public:
  explicit Tracer(std::vector<TraceEntry>& t) : t_(t) {}
  bool operator()(const std::string& id, bool v) {
    t_.push_back({id, v});
    return v;
  }

 private:
  std::vector<TraceEntry>& t_;
};

bool any_of(const std::vector<TraceEntry>& trace, const std::vector<std::string>& ids) {
  for (const auto& e : trace)
    if (e.holds && std::find(ids.begin(), ids.end(), e.id) != ids.end()) return true;
  return false;
}

void require_lz_scale(const LZSpace& s, const char* role) {
  if (s.has_double_log())
    throw InvalidQuery(std::string(role) + " space has a double-log weight; the decision tables cover the single-log scale");
}

// Local conditions at the origin shared by the entire-space and ball tables.
// Returns the ids evaluated; tag is "C" (ids 6..9) or "E" (ids 1..4).
void local_conditions(Tracer& tr, const std::string& tag, int first, int m, int n, const Rational& alpha,
                      const ExtRational& p, const ExtRational& q, const Rational& a0, const ExtRational& r,
                      const ExtRational& s, const Rational& b0) {
  const Rational crit = critical_p(m, n);
  const ExtRational threshold = sobolev_threshold(m, n, alpha, p);
  const bool p_below = p.is_finite() && p.value() < crit;
  const bool p_at = p.is_finite() && p.value() == crit;
  const Rational iq = inv(q), is = inv(s);
  auto id = [&](int k) { return tag + std::to_string(first + k); };
  tr(id(0), (p_below || p_at) && r < threshold);
  tr(id(1), p_below && r == threshold && b0 < a0 + std::min(Rational(iq - is), Rational(0)));
  tr(id(2), p_at && r.is_inf() && a0 <= 1 - iq && b0 < a0 - 1 + iq - is);
  tr(id(3), (p_at && a0 > 1 - iq) || !(p_below || p_at));
}

bool is_l1_pattern(const LZSpace& X) {
  return X.p() == ExtRational(1) && X.q() == ExtRational(1) && X.a0() == 0;
}

bool is_linf_pattern(const LZSpace& Y) { return Y.p().is_inf() && Y.q().is_inf() && Y.a0() == 0; }

}  // namespace

std::string branch_name(Branch b) {
  switch (b) {
    case Branch::MLessN: return "m<n";
    case Branch::MEqualN: return "m=n";
    case Branch::MGreaterN: return "m>n";
  }
  return "m<n";
}

Branch branch_of(int m, int n) {
  if (m < n) return Branch::MLessN;
  return m == n ? Branch::MEqualN : Branch::MGreaterN;
}

std::string provenance_name(Provenance p) {
  switch (p) {
    case Provenance::Certified: return "certified";
    case Provenance::NumericSuggested: return "numeric-suggested";
    case Provenance::Unknown: return "unknown";
  }
  return "unknown";
}

Provenance parse_provenance(const std::string& s) {
  for (Provenance p : {Provenance::Certified, Provenance::NumericSuggested, Provenance::Unknown})
    if (provenance_name(p) == s) return p;
  throw ParseError("unknown provenance '" + s + "'");
}

std::optional<bool> Verdict::holds(const std::string& id) const {
  for (const auto& e : trace)
    if (e.id == id) return e.holds;
  return std::nullopt;
}

nlohmann::json to_json(const Verdict& v) {
  nlohmann::json trace = nlohmann::json::array();
  for (const auto& e : v.trace) trace.push_back({{"id", e.id}, {"holds", e.holds}});
  nlohmann::json j = {{"compact", v.compact},
                      {"decided", v.decided},
                      {"branch", branch_name(v.branch)},
                      {"trace", trace},
                      {"provenance", provenance_name(v.provenance)}};
  if (!v.notes.empty()) j["notes"] = v.notes;
  return j;
}

void EmbeddingQuery::validate() const {
  if (m < 1) throw InvalidQuery("m must be a positive integer");
  if (n < 2) throw InvalidQuery("n must be at least 2");
  Domain want = geometry.ball ? Domain::UnitInterval : Domain::HalfLine;
  if (source.domain() != want || target.domain() != want)
    throw InvalidQuery(geometry.ball ? "ball queries take spaces on (0,1)" : "entire-space queries take spaces on (0,inf)");
  if (geometry.ball && (geometry.R <= 0 || geometry.alpha < 0))
    throw InvalidQuery("ball needs R > 0 and alpha >= 0");
  require_lz_scale(source, "source");
  require_lz_scale(target, "target");
}

AcNearInfinity ac_near_infinity_lz(const LZSpace& X, const LZSpace& Y) {
  if (X.domain() != Domain::HalfLine || Y.domain() != Domain::HalfLine) throw DomainMismatch();
  AcNearInfinity out;
  Tracer tr(out.trace);
  const ExtRational &p = X.p(), &q = X.q(), &r = Y.p(), &s = Y.q();
  const Rational &ai = X.ainf(), &bi = Y.ainf();
  const Rational iq = inv(q), is = inv(s);
  const bool both_inf = p.is_inf() && r.is_inf();
  bool c1 = tr("C1", p < r);
  bool c2 = tr("C2", p == r && p.is_finite() && bi + std::max(Rational(is - iq), Rational(0)) < ai);
  bool c3 = tr("C3", both_inf && ai + iq > 0 && ai + iq > bi + is);
  bool c4 = tr("C4", both_inf && q.is_finite() && ai + iq == 0 && 0 > bi + is);
  bool c5 = tr("C5", both_inf && q < s && ai + iq == 0 && bi + is == 0);
  out.holds = c1 || c2 || c3 || c4 || c5;
  return out;
}

// Distances are taken inside the stratum fixed by the order of p and r, since
// p = r is itself a stratum of the table rather than a boundary to avoid.
Rational ac_boundary_distance(const LZSpace& X, const LZSpace& Y) {
  const ExtRational &p = X.p(), &q = X.q(), &r = Y.p(), &s = Y.q();
  const Rational iq = inv(q), is = inv(s);
  if (p != r) return abs(Rational(inv(p) - inv(r)));
  if (p.is_finite()) return abs(Rational(Y.ainf() + std::max(Rational(is - iq), Rational(0)) - X.ainf()));
  Rational x = X.ainf() + iq, y = Y.ainf() + is;
  return std::min(abs(x), abs(Rational(x - y)));
}

Verdict decide_entire_lz(const EmbeddingQuery& query) {
  query.validate();
  if (query.geometry.ball) throw InvalidQuery("decide_entire_lz needs the entire-space geometry");
  const LZSpace &X = query.source, &Y = query.target;
  Verdict v;
  v.branch = branch_of(query.m, query.n);
  AcNearInfinity ac = ac_near_infinity_lz(X, Y);
  v.trace = ac.trace;
  Tracer tr(v.trace);
  bool global = ac.holds;
  switch (v.branch) {
    case Branch::MLessN: {
      local_conditions(tr, "C", 6, query.m, query.n, 0, X.p(), X.q(), X.a0(), Y.p(), Y.q(), Y.a0());
      bool local = any_of(v.trace, {"C6", "C7", "C8", "C9"});
      v.compact = global && local;
      break;
    }
    case Branch::MEqualN: {
      // Literal reading: at least one of the two degeneracies must be absent.
      bool x_not_l1 = tr("X-not-L1", !(X.p() == ExtRational(1) && X.q() == ExtRational(1) && X.a0() == 0));
      bool y_not_linf = tr("Y-not-Linf", !(Y.p().is_inf() && Y.q().is_inf() && Y.a0() == 0));
      v.compact = global && (x_not_l1 || y_not_linf);
      break;
    }
    case Branch::MGreaterN:
      v.compact = global;
      break;
  }
  return v;
}

Verdict decide_ball_lz(const EmbeddingQuery& query) {
  query.validate();
  if (!query.geometry.ball) throw InvalidQuery("decide_ball_lz needs the ball geometry");
  const LZSpace &X = query.source, &Y = query.target;
  Verdict v;
  v.branch = branch_of(query.m, query.n);
  Tracer tr(v.trace);
  switch (v.branch) {
    case Branch::MLessN:
      local_conditions(tr, "E", 1, query.m, query.n, query.geometry.alpha, X.p(), X.q(), X.a0(), Y.p(), Y.q(),
                       Y.a0());
      v.compact = any_of(v.trace, {"E1", "E2", "E3", "E4"});
      break;
    case Branch::MEqualN: {
      bool x_not_l1 = tr("X-not-L1", !is_l1_pattern(X));
      bool y_not_linf = tr("Y-not-Linf", !is_linf_pattern(Y));
      v.compact = x_not_l1 || y_not_linf;
      v.notes = "L1 and Linf are recognized by their exact parameters only";
      break;
    }
    case Branch::MGreaterN:
      v.compact = true;
      v.notes = "always compact when m > n";
      break;
  }
  return v;
}

Verdict decide(const EmbeddingQuery& query) {
  return query.geometry.ball ? decide_ball_lz(query) : decide_entire_lz(query);
}

void OrliczParams::validate() const {
  for (const Rational* e : {&p1, &p2, &r1, &r2})
    if (*e < 1) throw InvalidQuery("Young function powers must be >= 1");
  if ((p1 == 1 && gamma1 < 0) || (p2 == 1 && gamma2 < 0) || (r1 == 1 && delta1 < 0) || (r2 == 1 && delta2 < 0))
    throw InvalidQuery("a power equal to 1 needs a nonnegative log exponent");
}

Verdict decide_entire_orlicz(int m, int n, const OrliczParams& o) {
  if (m < 1 || n < 2) throw InvalidQuery("need m >= 1 and n >= 2");
  o.validate();
  Verdict v;
  v.branch = branch_of(m, n);
  Tracer tr(v.trace);
  bool d1 = tr("D1", o.p1 < o.r1);
  bool d2 = tr("D2", o.p1 == o.r1 && o.delta1 < o.gamma1);
  bool global = d1 || d2;
  if (v.branch != Branch::MLessN) {
    v.compact = global;
    return v;
  }
  const Rational crit = critical_p(m, n);
  bool below = o.p2 < crit;
  Rational threshold = below ? Rational(n * o.p2 / (n - m * o.p2)) : Rational(0);
  bool d3 = tr("D3", below && o.r2 < threshold);
  bool d4 = tr("D4", below && o.r2 == threshold && o.delta2 < n * o.gamma2 / (n - m * o.p2));
  bool d5 = tr("D5", o.p2 >= crit);
  v.compact = global && (d3 || d4 || d5);
  return v;
}

std::string shape_name(OptimalSpaceDesc::Shape s) {
  switch (s) {
    case OptimalSpaceDesc::Shape::LZ: return "LZ";
    case OptimalSpaceDesc::Shape::LZDoubleLog: return "LZDoubleLog";
    case OptimalSpaceDesc::Shape::Linf: return "Linf";
  }
  return "Linf";
}

LZSpace OptimalSpaceDesc::space() const {
  if (shape == Shape::Linf) return LZSpace::linf(Domain::UnitInterval);
  LZParams prm;
  prm.p = r;
  prm.q = s;
  prm.A = {gamma, gamma};
  prm.B = {delta, delta};
  prm.domain = Domain::UnitInterval;
  return LZSpace(prm);
}

std::string OptimalSpaceDesc::literal() const {
  if (shape == Shape::Linf) return "Linf";
  std::string out = "L(r=" + r.str() + ",s=" + s.str() + ",g=" + to_string(gamma);
  if (shape == Shape::LZDoubleLog) out += ",d=" + to_string(delta);
  return out + ")";
}

nlohmann::json to_json(const OptimalSpaceDesc& d) {
  nlohmann::json j = {{"shape", shape_name(d.shape)}, {"literal", d.literal()}};
  if (d.shape != OptimalSpaceDesc::Shape::Linf) {
    j["r"] = d.r.str();
    j["s"] = d.s.str();
    j["gamma"] = to_string(d.gamma);
  }
  if (d.shape == OptimalSpaceDesc::Shape::LZDoubleLog) j["delta"] = to_string(d.delta);
  if (!d.note.empty()) j["note"] = d.note;
  return j;
}

OptimalSpaceDesc optimal_target_ball_lz(int m, int n, const Rational& alpha, const LZSpace& X) {
  if (m < 1 || n < 2) throw InvalidQuery("need m >= 1 and n >= 2");
  if (alpha < 0) throw InvalidQuery("alpha must be >= 0");
  if (X.domain() != Domain::UnitInterval) throw InvalidQuery("source must live on (0,1)");
  require_lz_scale(X, "source");
  OptimalSpaceDesc d;
  if (m >= n) {
    d.note = "m >= n: the optimal target is Linf";
    return d;
  }
  const Rational crit = critical_p(m, n);
  const ExtRational& p = X.p();
  const ExtRational& q = X.q();
  const Rational g = X.a0();
  if (p.is_finite() && p.value() < crit) {
    d.shape = OptimalSpaceDesc::Shape::LZ;
    d.r = sobolev_threshold(m, n, alpha, p);
    d.s = q;
    d.gamma = g;
    return d;
  }
  if (p.is_finite() && p.value() == crit) {
    const Rational edge = 1 - inv(q);
    if (g < edge) {
      d.shape = OptimalSpaceDesc::Shape::LZ;
      d.r = ExtRational::infinity();
      d.s = q;
      d.gamma = g - 1;
      return d;
    }
    if (q > ExtRational(1) && g == edge) {
      d.shape = OptimalSpaceDesc::Shape::LZDoubleLog;
      d.r = ExtRational::infinity();
      d.s = q;
      d.gamma = -inv(q);
      d.delta = -1;
      return d;
    }
  }
  return d;  // Linf: p > n/m, or p = n/m with gamma above the edge
}

std::string tri_name(Tri t) {
  switch (t) {
    case Tri::False: return "false";
    case Tri::True: return "true";
    case Tri::Unknown: return "unknown";
  }
  return "unknown";
}

Tri parse_tri(const std::string& s) {
  for (Tri t : {Tri::False, Tri::True, Tri::Unknown})
    if (tri_name(t) == s) return t;
  throw ParseError("expected true, false or unknown, got '" + s + "'");
}

namespace {

Tri tri_and(Tri a, Tri b) {
  if (a == Tri::False || b == Tri::False) return Tri::False;
  if (a == Tri::True && b == Tri::True) return Tri::True;
  return Tri::Unknown;
}

Tri tri_or(Tri a, Tri b) {
  if (a == Tri::True || b == Tri::True) return Tri::True;
  if (a == Tri::False && b == Tri::False) return Tri::False;
  return Tri::Unknown;
}

Tri tri_not(Tri a) {
  if (a == Tri::Unknown) return a;
  return a == Tri::True ? Tri::False : Tri::True;
}

Provenance weaker(Provenance a, Provenance b) { return std::max(a, b); }

}  // namespace

Verdict decide_general_assembly(int m, int n, const Geometry& geometry, const AssemblyEvidence& ev) {
  Verdict v;
  v.branch = branch_of(m, n);
  Provenance prov = Provenance::Certified;
  auto use = [&](const std::string& id, const Evidence& e) {
    if (e.value != Tri::Unknown) v.trace.push_back({id, e.value == Tri::True});
    prov = weaker(prov, e.value == Tri::Unknown ? Provenance::Unknown : e.source);
    return e.value;
  };
  Tri global = use("globally-ac", ev.globally_ac);
  Tri zero = use("fund-Y-zero", ev.fund_Y_zero);
  Tri result;
  if (global == Tri::False) {
    result = Tri::False;
    prov = ev.globally_ac.source;  // the conjunction fails on this input alone
  } else {
    Tri branch_a, branch_b;
    switch (v.branch) {
      case Branch::MLessN: {
        Tri local = use(zero == Tri::False ? "B1" : zero == Tri::True ? "A1" : "local", ev.local);
        branch_a = local, branch_b = local;
        break;
      }
      case Branch::MEqualN: {
        branch_a = Tri::True;
        branch_b = (zero == Tri::True) ? Tri::True : use("B2", ev.local);
        break;
      }
      case Branch::MGreaterN:
      default:
        branch_a = branch_b = Tri::True;
        break;
    }
    result = tri_and(global, tri_or(tri_and(zero, branch_a), tri_and(tri_not(zero), branch_b)));
  }
  v.decided = result != Tri::Unknown;
  v.compact = result == Tri::True;
  v.provenance = v.decided ? prov : Provenance::Unknown;
  v.notes = geometry.ball ? "ball geometry" : "entire space";
  if (!v.decided) v.notes += "; undecided with the evidence given";
  return v;
}

}  // namespace rsc

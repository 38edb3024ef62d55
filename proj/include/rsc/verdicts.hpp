#pragma once

// Exact decision tables for compactness of radial Sobolev embeddings into
// Lorentz-Zygmund and Orlicz targets. All comparisons are done in extended
// rational arithmetic so that boundary cases are decided exactly.

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "rsc/rational.hpp"
#include "rsc/spaces.hpp"

namespace rsc {

enum class Branch { MLessN, MEqualN, MGreaterN };
std::string branch_name(Branch b);  // "m<n" | "m=n" | "m>n"
Branch branch_of(int m, int n);

enum class Provenance { Certified, NumericSuggested, Unknown };
std::string provenance_name(Provenance p);  // "certified" | "numeric-suggested" | "unknown"
Provenance parse_provenance(const std::string& s);

struct TraceEntry {
  std::string id;
  bool holds = false;
  friend bool operator==(const TraceEntry&, const TraceEntry&) = default;
};

struct Verdict {
  bool compact = false;
  bool decided = true;  // false when unknown evidence left the answer open
  Branch branch = Branch::MLessN;
  std::vector<TraceEntry> trace;
  std::string notes;
  Provenance provenance = Provenance::Certified;

  // Value recorded for id, if it was evaluated.
  std::optional<bool> holds(const std::string& id) const;
};

nlohmann::json to_json(const Verdict& v);

struct Geometry {
  bool ball = false;
  Rational R = 1;
  Rational alpha = 0;
  static Geometry entire() { return {}; }
  static Geometry make_ball(const Rational& R, const Rational& alpha) { return {true, R, alpha}; }
};

// Entire space: both spaces on the half-line with exponents (alpha_0, alpha_inf)
// and (beta_0, beta_inf). Ball: both on (0,1) with one log exponent each.
struct EmbeddingQuery {
  int m = 1;
  int n = 2;
  Geometry geometry;
  LZSpace source = LZSpace::lebesgue(2);
  LZSpace target = LZSpace::lebesgue(2);
  void validate() const;  // throws InvalidQuery
};

struct AcNearInfinity {
  bool holds = false;
  std::vector<TraceEntry> trace;  // C1..C5
};

AcNearInfinity ac_near_infinity_lz(const LZSpace& X, const LZSpace& Y);

// Smallest distance of (X, Y) to a boundary between the C1..C5 regions,
// measured in the exponents 1/p, 1/q and the log exponents. Zero on a boundary.
Rational ac_boundary_distance(const LZSpace& X, const LZSpace& Y);

Verdict decide_entire_lz(const EmbeddingQuery& query);
Verdict decide_ball_lz(const EmbeddingQuery& query);
// Dispatches on the query geometry.
Verdict decide(const EmbeddingQuery& query);

// Young functions A ~ t^{p1} log^{gamma1} near 0 and t^{p2} log^{gamma2} near
// infinity; B likewise with (r1, delta1) and (r2, delta2).
struct OrliczParams {
  Rational p1 = 1, p2 = 1, r1 = 1, r2 = 1;
  Rational gamma1 = 0, gamma2 = 0, delta1 = 0, delta2 = 0;
  void validate() const;  // throws InvalidQuery
};

Verdict decide_entire_orlicz(int m, int n, const OrliczParams& params);

struct OptimalSpaceDesc {
  enum class Shape { LZ, LZDoubleLog, Linf };
  Shape shape = Shape::Linf;
  ExtRational r = ExtRational::infinity();
  ExtRational s = ExtRational::infinity();
  Rational gamma = 0;
  Rational delta = 0;  // double-log exponent, nonzero only for LZDoubleLog
  std::string note;

  LZSpace space() const;  // on (0,1)
  std::string literal() const;
  friend bool operator==(const OptimalSpaceDesc& a, const OptimalSpaceDesc& b) {
    return a.shape == b.shape && a.r == b.r && a.s == b.s && a.gamma == b.gamma && a.delta == b.delta;
  }
};

std::string shape_name(OptimalSpaceDesc::Shape s);
nlohmann::json to_json(const OptimalSpaceDesc& d);

// Optimal r.i. target on a ball with weight |x|^alpha for the source X on (0,1).
OptimalSpaceDesc optimal_target_ball_lz(int m, int n, const Rational& alpha, const LZSpace& X);

enum class Tri { False, True, Unknown };
std::string tri_name(Tri t);
Tri parse_tri(const std::string& s);

struct Evidence {
  Tri value = Tri::Unknown;
  Provenance source = Provenance::Unknown;
};

struct AssemblyEvidence {
  Evidence globally_ac;   // tail condition at infinity
  Evidence fund_Y_zero;   // phi_Y(0+) = 0
  Evidence local;         // A1 when phi_Y(0+) = 0, B1 or B2 otherwise (unused where trivial)
};

Verdict decide_general_assembly(int m, int n, const Geometry& geometry, const AssemblyEvidence& evidence);

}  // namespace rsc

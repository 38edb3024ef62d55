#pragma once

// Lower estimates of the tail supremum
//   sup_{||f||_X <= 1} ||f* chi_(a,inf)||_Y
// and of the local Hardy suprema, by searching over nonincreasing step
// functions. Every reported value is the score of an explicit candidate.

#include <functional>
#include <string>
#include <vector>

#include "rsc/spaces.hpp"
#include "rsc/stepfn.hpp"
#include "rsc/transforms.hpp"

namespace rsc {

enum class FamilyKind { FlatTruncations, TwoLevel, LogGridSteps, Profile, All };

std::string family_name(FamilyKind kind);
FamilyKind parse_family(const std::string& name);

// Larger candidate grids throw ResourceExhausted: the step-function search
// grows quadratically in the grid size.
constexpr int kMaxCandidateGrid = 4096;

struct CandidateFamily {
  FamilyKind kind = FamilyKind::All;
  int grid_size = 96;    // T-grid points, or cells of the geometric grid
  double span = 1e30;    // largest support end relative to a
  int max_sweeps = 20;   // coordinate ascent
  double ascent_tol = 1e-4;
};

struct SupEstimate {
  double estimate = 0;        // score of the best candidate
  double certificate = kInf;  // upper bound, +inf when none was requested or available
  PiecewiseFn best;           // best candidate, normalized to unit X-norm
  std::string best_kind;
};

// The candidate chi_(0,2a)/phi_X(2a) is always scored, so the estimate is at
// least phi_Y(a) / (2 phi_X(a)).
SupEstimate suptail(const LZSpace& X, const LZSpace& Y, double a, const CandidateFamily& family = {},
                    bool with_certificate = false);

struct SupCurvePoint {
  double a = 0;
  double raw = 0;       // estimate at this a alone
  double estimate = 0;  // max of raw estimates over grid points >= a
  double certificate = kInf;
};

// Evaluates suptail on every grid point (in parallel) and enforces the
// monotonicity of the true supremum in a.
std::vector<SupCurvePoint> suptail_curve(const LZSpace& X, const LZSpace& Y, const std::vector<double>& grid,
                                         const CandidateFamily& family = {}, bool with_certificate = false);

enum class HardyForm { A1, B1 };

// A1: sup ||chi_(0,a)(t) integral_{t^kappa}^1 f*(s) s^{-1+m/n} ds||_Y, kappa = n/(n+alpha).
// B1: sup integral_0^a f*(s) s^{-1+m/n} ds.
SupEstimate sup_hardy_local(const LZSpace& X, const LZSpace& Y, double a, const CopsonParams& params,
                            HardyForm form, const CandidateFamily& family = {});

enum class LimitClass { VanishingLimit, PositiveLimit, Inconclusive };
enum class Direction { ToInfinity, ToZero };

std::string limit_class_name(LimitClass c);

struct LimitReport {
  LimitClass cls = LimitClass::Inconclusive;
  // Least-squares slope of log(estimate) against log of the approach
  // variable (a for a -> inf, 1/a for a -> 0).
  double exponent = 0;
  std::string note;
};

LimitReport limit_probe(const std::vector<double>& grid, const std::vector<double>& values, Direction direction);
LimitReport limit_probe(const std::function<double(double)>& evaluate, const std::vector<double>& grid,
                        Direction direction);

// count points from start to stop, geometrically spaced.
std::vector<double> log_grid(double start, double stop, int count);
// Parses "log:<start>:<stop>:<count>". Throws ParseError.
std::vector<double> parse_grid(const std::string& spec);

}  // namespace rsc

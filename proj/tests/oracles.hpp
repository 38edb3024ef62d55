#pragma once

// Independent oracles shared by the unit tests and the acceptance binary.
// Nothing here calls the code under test beyond point evaluation.

#include <algorithm>
#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "rsc/rational.hpp"
#include "rsc/stepfn.hpp"

namespace rsc::testing {

inline Rational rat(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// Domain length seen by samplers: 1 on (0,1), the support end on the half-line.
inline Rational sample_length(const PiecewiseFn& f) {
  if (f.domain() == Domain::UnitInterval) return 1;
  return f.support_end();
}

// Grid samples of f at the midpoints of cells of width h over (0, L), run
// length encoded in increasing x: (value, number of consecutive samples).
inline std::vector<std::pair<Rational, long>> grid_samples(const PiecewiseFn& f, const Rational& h, const Rational& L) {
  // Index of the first midpoint (2i+1)h/2 at or beyond x.
  auto first_at = [&](const Rational& x) {
    Rational k = x / h - Rational(1, 2);
    mpz_class c;
    mpz_cdiv_q(c.get_mpz_t(), k.get_num_mpz_t(), k.get_den_mpz_t());
    return std::max(0L, c.get_si());
  };
  long total = first_at(L);
  std::vector<std::pair<Rational, long>> runs;
  for (const auto& piece : f.pieces()) {
    long from = first_at(piece.lo);
    long to = piece.hi ? std::min(first_at(*piece.hi), total) : total;
    if (to <= from) continue;
    if (!runs.empty() && runs.back().first == piece.value)
      runs.back().second += to - from;
    else
      runs.emplace_back(piece.value, to - from);
  }
  return runs;
}

// Sort oracle: samples f on a grid of at least min_cells midpoints of cells
// of width 1/(64 k) and sorts the samples downwards (run length encoded).
// Every breakpoint used by the samplers is a multiple of 1/64, so each cell
// lies inside one piece and the sorted samples are exactly the heights of f*
// on the same cells.
inline std::vector<std::pair<Rational, long>> sorted_samples(const PiecewiseFn& f, long min_cells,
                                                             Rational* cell_width = nullptr) {
  Rational L = sample_length(f);
  if (cell_width) *cell_width = rat(1, 64);
  if (L == 0) return {};
  long per_64th = 1;
  while (to_double(L) * 64.0 * per_64th < double(min_cells)) per_64th *= 2;
  Rational h = rat(1, 64 * per_64th);
  if (cell_width) *cell_width = h;
  auto runs = grid_samples(f, h, L);
  std::stable_sort(runs.begin(), runs.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
  std::vector<std::pair<Rational, long>> merged;
  for (auto& r : runs) {
    if (!merged.empty() && merged.back().first == r.first)
      merged.back().second += r.second;
    else
      merged.push_back(r);
  }
  return merged;
}

inline bool near_rel(double a, double b, double rel) {
  if (std::isinf(a) || std::isinf(b)) return a == b;
  return std::abs(a - b) <= rel * std::max({std::abs(a), std::abs(b), 1e-300});
}

// Golden-section maximization of a unimodal function on [lo, hi].
inline double golden_max(const std::function<double(double)>& f, double lo, double hi, int iters = 200) {
  const double g = (std::sqrt(5.0) - 1) / 2;
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < iters; ++i) {
    if (f1 < f2) {
      lo = x1, x1 = x2, f1 = f2, x2 = lo + g * (hi - lo), f2 = f(x2);
    } else {
      hi = x2, x2 = x1, f2 = f1, x1 = hi - g * (hi - lo), f1 = f(x1);
    }
  }
  return std::max(f1, f2);
}

// Lebesgue flat-candidate oracle: chi_(0,T) / T^{1/p} scores (T - a)^{1/q} / T^{1/p}.
inline double flat_oracle(double p, double q, double a) {
  auto score = [&](double T) { return std::pow(T - a, 1 / q) / std::pow(T, 1 / p); };
  return golden_max(score, a, 1000 * a);
}

}  // namespace rsc::testing

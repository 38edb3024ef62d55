#include "rsc/sampling.hpp"

#include <algorithm>

#include "rsc/errors.hpp"

namespace rsc {

namespace {

template <class T>
const T& pick(Rng& rng, const std::vector<T>& menu) {
  return menu[std::uniform_int_distribution<size_t>(0, menu.size() - 1)(rng)];
}

}  // namespace

Rational random_rational(Rng& rng, long lo, long hi) {
  long d = pick(rng, std::vector<long>{1, 2, 3, 4, 8});
  long k = std::uniform_int_distribution<long>(lo * d, hi * d)(rng);
  Rational r(k, d);
  r.canonicalize();
  return r;
}

PiecewiseFn random_step(Rng& rng, Domain domain, int max_pieces) {
  int k = std::uniform_int_distribution<int>(1, max_pieces)(rng);
  const long den = 64;
  const long span = domain == Domain::UnitInterval ? den - 1 : 16 * den;
  std::vector<long> cuts;
  while (static_cast<int>(cuts.size()) < k) {
    long c = std::uniform_int_distribution<long>(1, span)(rng);
    if (std::find(cuts.begin(), cuts.end(), c) == cuts.end()) cuts.push_back(c);
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<Rational> breaks, values;
  for (long c : cuts) {
    Rational b(c, den);
    b.canonicalize();
    breaks.push_back(b);
    values.push_back(random_rational(rng, 0, 6));
  }
  Rational tail = domain == Domain::UnitInterval ? random_rational(rng, 0, 6) : Rational(0);
  return PiecewiseFn(domain, breaks, values, tail);
}

PiecewiseFn random_nonincreasing_step(Rng& rng, Domain domain, int max_pieces) {
  return rearrange(random_step(rng, domain, max_pieces)).fn();
}

LZSpace random_lz(Rng& rng, Domain domain, bool with_logs) {
  const std::vector<ExtRational> ps{ExtRational(1),         ExtRational(Rational(3, 2)), ExtRational(2),
                                    ExtRational(3),         ExtRational(4),              ExtRational(6),
                                    ExtRational::infinity()};
  const std::vector<ExtRational> qs{ExtRational(1), ExtRational(2), ExtRational(4), ExtRational::infinity()};
  const std::vector<Rational> logs{Rational(-1), Rational(-1, 2), Rational(0), Rational(1, 2), Rational(1)};
  for (;;) {
    LZParams prm;
    prm.domain = domain;
    prm.p = pick(rng, ps);
    prm.q = pick(rng, qs);
    if (with_logs) {
      prm.A.e0 = pick(rng, logs);
      prm.A.einf = pick(rng, logs);
    }
    if (domain == Domain::UnitInterval) prm.A.einf = prm.A.e0;
    if (is_valid_ri(prm).ok) return LZSpace(prm);
  }
}

std::vector<Interval> random_intervals(Rng& rng, int count) {
  Rational delta = random_rational(rng, 1, 4);
  std::vector<Interval> out;
  Rational at = random_rational(rng, 0, 3);
  for (int j = 0; j < count; ++j) {
    out.push_back({at, at + delta});
    at += delta + random_rational(rng, 0, 2);
  }
  return out;
}

}  // namespace rsc

#include "rsc/suites.hpp"

#include <algorithm>
#include <cmath>

#include "rsc/decay_matrix.hpp"
#include "rsc/errors.hpp"
#include "rsc/parallel.hpp"
#include "rsc/sampling.hpp"
#include "rsc/transforms.hpp"
#include "rsc/verdicts.hpp"
#include "rsc/witness.hpp"

namespace rsc {

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"averaging", "construction", "radial-lemma", "tail-estimate",
                                              "prop64-matrix"};
  return names;
}

SuiteOutcome run_suite(const std::string& name, const SuiteOptions& options) {
  if (name == "averaging") return averaging_suite(options);
  if (name == "construction") return construction_suite(options);
  if (name == "radial-lemma") return radial_lemma_suite(options);
  if (name == "tail-estimate") return tail_estimate_suite(options);
  if (name == "prop64-matrix") return decay_matrix_suite(options);
  throw BadInput("unknown suite: " + name);
}

SuiteOutcome averaging_suite(const SuiteOptions& options) {
  Rng rng(options.seed);
  int core_failures = 0;
  for (int i = 0; i < options.instances; ++i) {
    auto intervals = random_intervals(rng, std::uniform_int_distribution<int>(1, 6)(rng));
    PiecewiseFn h = random_step(rng, Domain::HalfLine);
    PiecewiseFn out = averaging_core(h, intervals);
    if (integral(out) > integral(h) || out.sup_value() > h.sup_value()) ++core_failures;
  }
  // T_{a,b} against max{1/|a|, 1/(b+1)} on L^1 and L^inf.
  double worst = 0;
  const int operator_instances = std::max(1, options.instances / 5);
  for (int i = 0; i < operator_instances; ++i) {
    PiecewiseFn f = random_step(rng, Domain::UnitInterval);
    Rational a = 0;
    while (a == 0) a = random_rational(rng, -2, 2);
    Rational b = std::max(Rational(0), Rational(-a)) + random_rational(rng, 0, 2);
    double bound = std::max(1.0 / std::abs(a.get_d()), 1.0 / (b.get_d() + 1.0));
    PowerProfile T = t_alpha_beta(f, a, b);
    double l1 = integral(f).get_d(), linf = f.sup_value().get_d();
    if (l1 > 0) worst = std::max(worst, T.integral() / (bound * l1) - 1.0);
    if (linf > 0) worst = std::max(worst, T.sup() / (bound * linf) - 1.0);
  }
  SuiteOutcome out{"averaging", core_failures == 0 && worst <= 1e-9, {}};
  out.report = {{"suite", "averaging"},
                {"core_instances", options.instances},
                {"core_failures", core_failures},
                {"operator_instances", operator_instances},
                {"worst_relative_excess", std::max(worst, 0.0)},
                {"passed", out.passed}};
  return out;
}

double max_below_vanishing_threshold(const RadialProfile& u, int samples) {
  double t_cut = u.t_zero, worst = 0;
  if (!(t_cut > 0)) return 0;
  for (int i = 0; i < samples; ++i) {
    double t = t_cut * std::pow(1e-12, 1.0 - static_cast<double>(i) / samples);
    worst = std::max(worst, std::abs(u.at_measure(t)));
  }
  worst = std::max(worst, std::abs(u.at_measure(std::nextafter(t_cut, 0.0))));
  return worst;
}

double v_chain_error(const RadialProfile& u, double step) {
  if (!u.entire || u.is_zero()) return 0;
  const EntireParts& P = *u.entire;
  double hi = *std::max_element(P.beta.begin(), P.beta.end());
  double lo = P.cutoff.lo();
  double worst = 0;
  const int N = 60;
  for (int j = 1; j <= P.m; ++j) {
    double scale = P.v(j - 1, lo);
    for (int i = 1; i < N; ++i) {
      double r = lo + (hi - lo) * i / N;
      bool near_break = false;
      for (double b : P.beta) near_break = near_break || std::abs(r - b) < 1e3 * step;
      double ref = -P.v(j - 1, r);
      if (near_break || std::abs(ref) < 1e-8 * scale) continue;
      double fd = (P.v(j, r + step) - P.v(j, r - step)) / (2 * step);
      worst = std::max(worst, std::abs(fd - ref) / std::abs(ref));
    }
  }
  return worst;
}

namespace {

nlohmann::json cutoff_check(int m, bool& ok) {
  CutoffSpec eta(1.0, 2.0, m);
  double worst_value = 0, worst_ratio = 0;
  for (int i = 0; i <= 2000; ++i) {
    double r = 0.5 + 2.0 * i / 2000;
    double v = eta(r);
    if (v < 0 || v > 1 || (r <= 1 && v != 0) || (r >= 2 && v != 1)) worst_value = 1;
    for (int k = 1; k <= m; ++k) {
      double b = eta.derivative_bounds()[k];
      worst_ratio = std::max(worst_ratio, std::abs(eta.derivative(k, r)) / b);
    }
  }
  ok = ok && worst_value == 0 && worst_ratio <= 1.0;
  return {{"m", m}, {"range_violation", worst_value > 0}, {"max_derivative_over_bound", worst_ratio},
          {"bounds", eta.derivative_bounds()}};
}

}  // namespace

SuiteOutcome construction_suite(const SuiteOptions&) {
  bool ok = true;
  nlohmann::json configs = nlohmann::json::array();
  auto run = [&](ConstructionSetup setup, const std::string& label) {
    auto samples = default_construction_family(setup.kind);
    ConstructionReport rep = verify_construction_bounds(setup, samples);
    nlohmann::json j = to_json(rep);
    j["label"] = label;
    j["m"] = setup.m;
    j["n"] = setup.n;
    j["X"] = setup.X.literal();
    j["Y"] = setup.Y.literal();
    bool pass = rep.stable;
    if (setup.kind == ConstructionKind::Entire) {
      double vanish = 0, chain = 0;
      for (const auto& s : samples) {
        RadialProfile u = build_u_fa(s.f, s.a, setup.m, setup.n);
        vanish = std::max(vanish, max_below_vanishing_threshold(u));
        chain = std::max(chain, v_chain_error(u));
      }
      j["max_value_below_threshold"] = vanish;
      j["v_chain_error"] = chain;
      pass = pass && vanish == 0.0 && chain < 1e-4;
    }
    j["passed"] = pass;
    ok = ok && pass;
    configs.push_back(j);
  };
  ConstructionSetup e1;
  e1.m = 1;
  e1.n = 2;
  e1.X = LZSpace::lebesgue(2);
  e1.Y = LZSpace::parse("L(p=4,q=4,a0=0,ainf=1/2)");
  run(e1, "entire m=1 n=2");
  ConstructionSetup e2;
  e2.m = 2;
  e2.n = 3;
  e2.X = LZSpace::lebesgue(2);
  e2.Y = LZSpace::lebesgue(4);
  run(e2, "entire m=2 n=3");
  ConstructionSetup b1;
  b1.kind = ConstructionKind::Ball;
  b1.m = 1;
  b1.n = 3;
  b1.alpha = 2;
  b1.X = LZSpace::lebesgue(2, Domain::UnitInterval);
  b1.Y = LZSpace::lebesgue(4, Domain::UnitInterval);
  run(b1, "ball m=1 n=3 alpha=2");
  ConstructionSetup b2 = b1;
  b2.m = 2;
  b2.R = Rational(1, 2);
  b2.Y = LZSpace::parse("L(p=4,q=2,a0=1/2)", Domain::UnitInterval);
  run(b2, "ball m=2 n=3 alpha=2 R=1/2");
  nlohmann::json cut = nlohmann::json::array();
  for (int m = 1; m <= 3; ++m) cut.push_back(cutoff_check(m, ok));
  return {"construction", ok, {{"suite", "construction"}, {"configs", configs}, {"cutoffs", cut}, {"passed", ok}}};
}

SuiteOutcome radial_lemma_suite(const SuiteOptions&) {
  bool ok = true;
  nlohmann::json runs = nlohmann::json::array();
  for (int n : {2, 3}) {
    std::vector<RadialProfile> family{radial_cone(n, 1), dilate_radial(radial_cone(n, 1), 2),
                                      dilate_radial(radial_cone(n, 1), 0.5)};
    for (double r0 : {1.0, 2.0, 4.0, 8.0}) family.push_back(radial_tent(n, r0, 0.5));
    for (double p : {1.0, 2.0, 3.0}) {
      RadialLemmaReport rep = verify_radial_lemma(family, p, n);
      ok = ok && rep.bounded;
      runs.push_back(to_json(rep));
    }
  }
  return {"radial-lemma", ok, {{"suite", "radial-lemma"}, {"runs", runs}, {"passed", ok}}};
}

SuiteOutcome tail_estimate_suite(const SuiteOptions& options) {
  bool ok = true;
  nlohmann::json runs = nlohmann::json::array();
  const std::vector<double> grid{1, 2, 4, 8, 16, 32, 64};
  for (int n : {2, 3}) {
    TailReport rep =
        verify_tail_estimate(default_tent_family(n), LZSpace::lebesgue(2), LZSpace::lebesgue(4), grid, options.family);
    // Past the largest support radius the left side must vanish.
    double last = 0;
    for (const auto& r : rep.rows)
      if (r.R == grid.back()) last = std::max(last, r.lhs);
    nlohmann::json j = to_json(rep);
    j["lhs_at_largest_R"] = last;
    ok = ok && rep.within_envelope && last == 0.0;
    runs.push_back(j);
  }
  return {"tail-estimate", ok, {{"suite", "tail-estimate"}, {"runs", runs}, {"passed", ok}}};
}

SuiteOutcome decay_matrix_suite(const SuiteOptions& options) {
  auto cases = tail_decay_matrix();
  std::vector<LimitReport> reports(cases.size());
  std::vector<std::vector<double>> values(cases.size());
  // Each curve is already parallel over the grid.
  for (size_t i = 0; i < cases.size(); ++i) {
    auto curve = suptail_curve(cases[i].X, cases[i].Y, options.decay_grid, options.family);
    for (const auto& p : curve) values[i].push_back(p.estimate);
    reports[i] = limit_probe(options.decay_grid, values[i], Direction::ToInfinity);
  }
  int contradictions = 0, far_true = 0, far_true_vanishing = 0;
  nlohmann::json rows = nlohmann::json::array();
  for (size_t i = 0; i < cases.size(); ++i) {
    const auto& c = cases[i];
    bool vanishing = reports[i].cls == LimitClass::VanishingLimit;
    bool far = c.distance >= Rational(1, 10);
    if (!c.expected && vanishing) ++contradictions;
    if (c.expected && far) {
      ++far_true;
      far_true_vanishing += vanishing ? 1 : 0;
    }
    rows.push_back({{"X", c.source},
                    {"Y", c.target},
                    {"symbolic", c.expected},
                    {"distance", to_string(c.distance)},
                    {"numeric", limit_class_name(reports[i].cls)},
                    {"exponent", reports[i].exponent},
                    {"first", values[i].front()},
                    {"last", values[i].back()}});
  }
  double rate = far_true ? static_cast<double>(far_true_vanishing) / far_true : 1.0;
  bool ok = contradictions == 0 && rate >= 0.9;
  return {"prop64-matrix",
          ok,
          {{"suite", "prop64-matrix"},
           {"cases", rows},
           {"contradictions", contradictions},
           {"far_true", far_true},
           {"far_true_vanishing", far_true_vanishing},
           {"passed", ok}}};
}

}  // namespace rsc

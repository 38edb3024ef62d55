#pragma once

// Verification suites shared by the CLI (`verify --suite`) and the
// acceptance binary. Each returns a JSON report and a pass flag.

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

#include "rsc/extremal.hpp"

namespace rsc {

struct RadialProfile;

struct SuiteOptions {
  uint64_t seed = 1729;
  int instances = 1000;  // random instances for the averaging suite
  CandidateFamily family;  // search used by suptail
  std::vector<double> decay_grid = log_grid(1, 1e12, 13);
};

struct SuiteOutcome {
  std::string suite;
  bool passed = false;
  nlohmann::json report;
};

// "averaging", "construction", "radial-lemma", "tail-estimate", "prop64-matrix".
const std::vector<std::string>& suite_names();
// Throws BadInput for an unknown name.
SuiteOutcome run_suite(const std::string& name, const SuiteOptions& options = {});

SuiteOutcome averaging_suite(const SuiteOptions& options);
SuiteOutcome construction_suite(const SuiteOptions& options);
SuiteOutcome radial_lemma_suite(const SuiteOptions& options);
SuiteOutcome tail_estimate_suite(const SuiteOptions& options);
SuiteOutcome decay_matrix_suite(const SuiteOptions& options);

// Checks used by the construction suite, exposed for the tests.
// Largest |value| of u_{f,a} in the measure coordinate on a grid of (0, a/8).
double max_below_vanishing_threshold(const RadialProfile& u, int samples = 400);
// Largest relative error of central differences of v_j against -v_{j-1}.
double v_chain_error(const RadialProfile& u, double step = 1e-6);

}  // namespace rsc

#pragma once

// Fixed matrix of half-line LZ pairs covering every tail-decay condition and
// its negations. Shared by the acceptance suite and the CLI.

#include <string>
#include <vector>

#include "rsc/rational.hpp"
#include "rsc/spaces.hpp"

namespace rsc {

struct DecayCase {
  std::string source;  // space literals
  std::string target;
  LZSpace X;
  LZSpace Y;
  bool expected;       // symbolic verdict
  Rational distance;   // ac_boundary_distance(X, Y)
};

std::vector<DecayCase> tail_decay_matrix();

}  // namespace rsc

#include "rsc/decay_matrix.hpp"

#include <utility>

#include "rsc/verdicts.hpp"

namespace rsc {

std::vector<DecayCase> tail_decay_matrix() {
  // Log-type decay is slow, so the pairs that should vanish through a log
  // gap keep that gap at 1 or more to be visible on a 12-decade grid.
  static const std::pair<const char*, const char*> pairs[] = {
      {"L2", "L4"},
      {"L2", "Linf"},
      {"L(p=3/2)", "L3"},
      {"L(p=2,q=1)", "L(p=4,q=8)"},
      {"L(p=2,q=inf)", "L(p=3,q=1)"},
      {"L(p=4/3)", "L(p=2,a=-1)"},
      {"L(p=2,a0=0,ainf=1)", "L2"},
      {"L2", "L(p=2,a0=0,ainf=-1)"},
      {"L(p=2,q=1)", "L(p=2,q=2,a0=0,ainf=-1)"},
      {"L(p=3,q=2)", "L(p=3,q=4,a0=0,ainf=-3/2)"},
      {"L(p=2,q=4,a0=0,ainf=1)", "L2"},
      {"L(p=inf,q=inf,a0=-1,ainf=1)", "L(p=inf,q=inf,a0=-1,ainf=0)"},
      {"L(p=inf,q=2,a0=-1,ainf=1)", "Linf"},
      {"L(p=inf,q=1,a0=-2,ainf=-1)", "L(p=inf,q=inf,a0=-1,ainf=-1)"},
      {"L(p=inf,q=1,a0=-2,ainf=-1)", "L(p=inf,q=2,a0=-1,ainf=-1/2)"},
      {"L2", "L2"},
      {"L4", "L2"},
      {"L(p=2,q=inf)", "L(p=2,q=1,a0=0,ainf=-1/2)"},
      {"L(p=2,q=inf)", "L(p=2,q=1,a0=0,ainf=-1)"},
      {"L(p=2,a0=0,ainf=-1)", "L2"},
      {"L3", "L(p=3,q=6)"},
      {"L3", "L(p=3,q=6,a0=0,ainf=1/2)"},
      {"Linf", "Linf"},
      {"L(p=inf,q=inf,a0=-1,ainf=1)", "L(p=inf,q=inf,a0=-1,ainf=1)"},
      {"L(p=inf,q=inf,a0=-1,ainf=-1)", "L(p=inf,q=inf,a0=-1,ainf=0)"},
      {"L2", "L(p=3/2)"},
      {"L(p=2,q=1)", "L(p=2,q=inf,a0=0,ainf=-2)"},
      {"L2", "L(p=3,a0=0,ainf=1/2)"},
      {"L(p=2,q=2,a0=0,ainf=2)", "L(p=2,q=1)"},
      {"L(p=inf,q=1,a0=-2,ainf=-1)", "L(p=inf,q=inf,a0=-1,ainf=0)"},
  };
  std::vector<DecayCase> out;
  for (const auto& [src, dst] : pairs) {
    LZSpace X = LZSpace::parse(src), Y = LZSpace::parse(dst);
    out.push_back({src, dst, X, Y, ac_near_infinity_lz(X, Y).holds, ac_boundary_distance(X, Y)});
  }
  return out;
}

}  // namespace rsc

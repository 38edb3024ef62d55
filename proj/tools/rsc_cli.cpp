// rsc: command-line front end.
//
// Exit codes: 0 success or compact, 3 not compact, 2 invalid input,
// 4 resource cap reached, 5 a verification suite failed, 1 anything else.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include "rsc/decay_matrix.hpp"
#include "rsc/errors.hpp"
#include "rsc/extremal.hpp"
#include "rsc/output.hpp"
#include "rsc/spaces.hpp"
#include "rsc/stepfn.hpp"
#include "rsc/suites.hpp"
#include "rsc/verdicts.hpp"

namespace {

using namespace rsc;
using nlohmann::json;

constexpr int kExitNotCompact = 3;
constexpr int kExitInvalid = 2;
constexpr int kExitResource = 4;
constexpr int kExitInvariant = 5;

struct GlobalOptions {
  std::string format = "json";
  int grid_size = CandidateFamily{}.grid_size;
  double span = CandidateFamily{}.span;
  int max_sweeps = CandidateFamily{}.max_sweeps;
  double ascent_tol = CandidateFamily{}.ascent_tol;
  uint64_t seed = SuiteOptions{}.seed;
  int instances = SuiteOptions{}.instances;

  CandidateFamily family(const std::string& kind) const {
    CandidateFamily f;
    f.kind = parse_family(kind);
    f.grid_size = grid_size;
    f.span = span;
    f.max_sweeps = max_sweeps;
    f.ascent_tol = ascent_tol;
    return f;
  }
};

struct QueryArgs {
  int m = 1;
  int n = 2;
  std::string domain = "entire";
  std::string R = "1";
  std::string alpha = "0";
  std::string X;
  std::string Y;
};

Geometry make_geometry(const QueryArgs& q) {
  if (q.domain == "entire") return Geometry::entire();
  if (q.domain == "ball") return Geometry::make_ball(parse_rational(q.R), parse_rational(q.alpha));
  throw ParseError("--domain must be entire or ball");
}

Domain space_domain(const Geometry& g) { return g.ball ? Domain::UnitInterval : Domain::HalfLine; }

// Accepts inline JSON or @path.
json read_json_arg(const std::string& arg) {
  std::string text = arg;
  if (!arg.empty() && arg[0] == '@') {
    std::ifstream in(arg.substr(1));
    if (!in) throw ParseError("cannot read " + arg.substr(1));
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) return format_number(v.get<double>());
  return v.dump();
}

// key: value lines for the top level; nested values stay JSON.
std::string as_table(const json& j) {
  std::ostringstream os;
  size_t width = 0;
  for (auto it = j.begin(); it != j.end(); ++it) width = std::max(width, it.key().size());
  for (auto it = j.begin(); it != j.end(); ++it) {
    std::string v = it.value().is_structured() ? rounded(it.value()).dump() : scalar_text(it.value());
    os << std::left << std::setw(static_cast<int>(width) + 2) << it.key() + ":" << v << '\n';
  }
  return os.str();
}

void emit(const GlobalOptions& g, const json& j) {
  if (g.format == "json")
    std::cout << dump_json(j) << '\n';
  else if (g.format == "table")
    std::cout << as_table(j);
  else
    throw ParseError("--format csv is only available for suptail and matrix");
}

int verdict_exit(const Verdict& v) { return v.compact ? 0 : kExitNotCompact; }

Evidence parse_evidence(const std::string& text) {
  Evidence e;
  auto colon = text.find(':');
  e.value = parse_tri(text.substr(0, colon));
  e.source = colon == std::string::npos ? Provenance::Certified : parse_provenance(text.substr(colon + 1));
  return e;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rsc: compactness verdicts and tail estimates for radial Sobolev embeddings"};
  app.set_config("--config", "", "key=value file overriding the global options");
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand
  GlobalOptions g;
  app.add_option("--format", g.format, "json | csv | table")->check(CLI::IsMember({"json", "csv", "table"}));
  app.add_option("--grid-size", g.grid_size, "candidate grid size for suptail");
  app.add_option("--span", g.span, "largest candidate support end relative to a");
  app.add_option("--max-sweeps", g.max_sweeps, "coordinate ascent sweeps");
  app.add_option("--ascent-tol", g.ascent_tol, "relative improvement that stops the ascent");
  app.add_option("--seed", g.seed, "seed of the random suites");
  app.add_option("--instances", g.instances, "random instances in the averaging suite");

  QueryArgs q;
  auto* decide_cmd = app.add_subcommand("decide", "compactness verdict for an LZ embedding");
  decide_cmd->add_option("--m", q.m)->required();
  decide_cmd->add_option("--n", q.n)->required();
  decide_cmd->add_option("--domain", q.domain)->check(CLI::IsMember({"entire", "ball"}));
  decide_cmd->add_option("--R", q.R);
  decide_cmd->add_option("--alpha", q.alpha);
  decide_cmd->add_option("--X", q.X, "source space literal")->required();
  decide_cmd->add_option("--Y", q.Y, "target space literal")->required();

  OrliczParams op;
  std::string p1 = "1", p2 = "1", r1 = "1", r2 = "1", g1 = "0", g2 = "0", d1 = "0", d2 = "0";
  auto* orlicz = app.add_subcommand("orlicz", "compactness verdict for Orlicz source and target on R^n");
  orlicz->add_option("--m", q.m)->required();
  orlicz->add_option("--n", q.n)->required();
  orlicz->add_option("--p1", p1);
  orlicz->add_option("--p2", p2);
  orlicz->add_option("--gamma1", g1);
  orlicz->add_option("--gamma2", g2);
  orlicz->add_option("--r1", r1);
  orlicz->add_option("--r2", r2);
  orlicz->add_option("--delta1", d1);
  orlicz->add_option("--delta2", d2);

  auto* optimal = app.add_subcommand("optimal", "optimal r.i. target on a weighted ball");
  optimal->add_option("--m", q.m)->required();
  optimal->add_option("--n", q.n)->required();
  optimal->add_option("--alpha", q.alpha);
  optimal->add_option("--X", q.X)->required();

  std::string globally_ac = "unknown", fund_zero = "unknown", local = "unknown";
  auto* assemble = app.add_subcommand("assemble", "verdict from externally supplied evidence");
  assemble->add_option("--m", q.m)->required();
  assemble->add_option("--n", q.n)->required();
  assemble->add_option("--domain", q.domain)->check(CLI::IsMember({"entire", "ball"}));
  assemble->add_option("--R", q.R);
  assemble->add_option("--alpha", q.alpha);
  assemble->add_option("--globally-ac", globally_ac, "true|false|unknown[:certified|numeric-suggested|unknown]");
  assemble->add_option("--fund-y-zero", fund_zero);
  assemble->add_option("--local", local);

  std::string grid_spec, family_kind = "all";
  bool certificate = false;
  auto* suptail_cmd = app.add_subcommand("suptail", "lower estimates of the tail supremum over an a-grid");
  suptail_cmd->add_option("--X", q.X)->required();
  suptail_cmd->add_option("--Y", q.Y)->required();
  suptail_cmd->add_option("--a-grid", grid_spec, "log:<start>:<stop>:<count>")->required();
  suptail_cmd->add_option("--family", family_kind)->check(
      CLI::IsMember({"flat", "twolevel", "loggrid", "profile", "all"}));
  suptail_cmd->add_flag("--certificate", certificate, "also compute the tail-cut upper bound");

  std::string fn_arg;
  auto* norm = app.add_subcommand("norm", "LZ norm of a step function");
  norm->add_option("--X", q.X)->required();
  norm->add_option("--f", fn_arg, "step function JSON or @file")->required();

  auto* rearrange_cmd = app.add_subcommand("rearrange", "nonincreasing rearrangement of a step function");
  rearrange_cmd->add_option("--f", fn_arg, "step function JSON or @file")->required();

  std::string suite;
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--suite", suite)->required()->check(CLI::IsMember(suite_names()));

  auto* matrix = app.add_subcommand("matrix", "export the tail-decay test matrix with symbolic verdicts");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    if (*decide_cmd) {
      EmbeddingQuery query;
      query.m = q.m;
      query.n = q.n;
      query.geometry = make_geometry(q);
      query.source = LZSpace::parse(q.X, space_domain(query.geometry));
      query.target = LZSpace::parse(q.Y, space_domain(query.geometry));
      Verdict v = rsc::decide(query);
      emit(g, to_json(v));
      return verdict_exit(v);
    }
    if (*orlicz) {
      op.p1 = parse_rational(p1);
      op.p2 = parse_rational(p2);
      op.r1 = parse_rational(r1);
      op.r2 = parse_rational(r2);
      op.gamma1 = parse_rational(g1);
      op.gamma2 = parse_rational(g2);
      op.delta1 = parse_rational(d1);
      op.delta2 = parse_rational(d2);
      Verdict v = decide_entire_orlicz(q.m, q.n, op);
      emit(g, to_json(v));
      return verdict_exit(v);
    }
    if (*optimal) {
      LZSpace X = LZSpace::parse(q.X, Domain::UnitInterval);
      emit(g, to_json(optimal_target_ball_lz(q.m, q.n, parse_rational(q.alpha), X)));
      return 0;
    }
    if (*assemble) {
      AssemblyEvidence ev{parse_evidence(globally_ac), parse_evidence(fund_zero), parse_evidence(local)};
      Verdict v = decide_general_assembly(q.m, q.n, make_geometry(q), ev);
      emit(g, to_json(v));
      return v.decided ? verdict_exit(v) : 0;
    }
    if (*suptail_cmd) {
      LZSpace X = LZSpace::parse(q.X), Y = LZSpace::parse(q.Y);
      auto curve = suptail_curve(X, Y, parse_grid(grid_spec), g.family(family_kind), certificate);
      if (g.format == "csv") {
        std::cout << curve_csv(curve);
      } else if (g.format == "table") {
        std::cout << std::left << std::setw(20) << "a" << std::setw(20) << "estimate" << "certificate\n";
        for (const auto& p : curve)
          std::cout << std::setw(20) << format_number(p.a) << std::setw(20) << format_number(p.estimate)
                    << format_number(p.certificate) << '\n';
      } else {
        emit(g, {{"X", X.literal()}, {"Y", Y.literal()}, {"family", family_kind}, {"points", curve_json(curve)}});
      }
      return 0;
    }
    if (*norm) {
      PiecewiseFn f = piecewise_from_json(read_json_arg(fn_arg));
      LZSpace X = LZSpace::parse(q.X, f.domain());
      double v = lz_norm(f, X);
      emit(g, {{"space", X.literal()}, {"norm", v}, {"finite", std::isfinite(v)}});
      return 0;
    }
    if (*rearrange_cmd) {
      PiecewiseFn f = piecewise_from_json(read_json_arg(fn_arg));
      emit(g, to_json(rearrange(f).fn()));
      return 0;
    }
    if (*verify) {
      SuiteOptions so;
      so.seed = g.seed;
      so.instances = g.instances;
      so.family = g.family("all");
      SuiteOutcome out = run_suite(suite, so);
      emit(g, out.report);
      return out.passed ? 0 : kExitInvariant;
    }
    if (*matrix) {
      auto cases = tail_decay_matrix();
      if (g.format == "csv") {
        std::cout << "X,Y,symbolic,distance\n";
        for (const auto& c : cases)
          std::cout << '"' << c.source << "\",\"" << c.target << "\"," << (c.expected ? "true" : "false") << ','
                    << to_string(c.distance) << '\n';
        return 0;
      }
      json rows = json::array();
      for (const auto& c : cases)
        rows.push_back(
            {{"X", c.source}, {"Y", c.target}, {"symbolic", c.expected}, {"distance", to_string(c.distance)}});
      emit(g, {{"cases", rows}});
      return 0;
    }
  } catch (const ResourceExhausted& e) {
    std::cerr << "resource cap reached: " << e.what() << '\n';
    return kExitResource;
  } catch (const Error& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

#include "subgauss/cli.hpp"

#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "subgauss/core_eval.hpp"
#include "subgauss/gamma_solver.hpp"
#include "subgauss/inflections.hpp"
#include "subgauss/output.hpp"
#include "subgauss/regions.hpp"
#include "subgauss/verify.hpp"

namespace subgauss {
namespace {

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Params {
  std::optional<double> p;
  std::optional<double> p1;
  std::optional<double> p2;
};

void add_param_options(CLI::App& cmd, Params& prm) {
  auto* op = cmd.add_option("--p", prm.p, "parameter of a single generalised Bernoulli variable");
  auto* o1 = cmd.add_option("--p1", prm.p1, "first parameter of the pair");
  auto* o2 = cmd.add_option("--p2", prm.p2, "second parameter of the pair");
  op->excludes(o1)->excludes(o2);
  o1->needs(o2);
  o2->needs(o1);
}

void require_params(const Params& prm) {
  if (!prm.p && !prm.p1) throw UsageError("either --p or --p1/--p2 is required");
}

int cmd_eval(const Params& prm, double t, int order, bool json, std::ostream& out) {
  require_params(prm);
  if (!std::isfinite(t)) throw UsageError("--t must be finite");
  if (order < 0 || order > 3) throw UsageError("--order must be in 0..3");
  OutputRecord rec;
  if (prm.p) {
    const ProbParam p(*prm.p);
    rec.add("kind", "scalar").add("p", p.value()).add("t", t).add("degenerate", p.degenerate());
    rec.add("log_mgf", log_mgf_scalar(p, t)).add("g", g_scalar(p, t, 0)).add("g1", g_scalar(p, t, 1));
    for (int k = 0; k <= order; ++k) rec.add(k == 0 ? "f" : fmt::format("f{}", k), f_scalar(p, t, k));
    rec.add("t_star", t_star_scalar(p).t);
  } else {
    const ParamPair pr(*prm.p1, *prm.p2);
    rec.add("kind", "pair").add("p1", pr.p1.value()).add("p2", pr.p2.value()).add("t", t);
    rec.add("degenerate", pr.degenerate());
    rec.add("log_mgf", log_mgf_pair(pr, t)).add("g", g_pair(pr, t, 0)).add("g1", g_pair(pr, t, 1));
    for (int k = 0; k <= order; ++k) rec.add(k == 0 ? "f" : fmt::format("f{}", k), f_pair(pr, t, k));
    rec.add("t_star", t_star_pair(pr).t);
  }
  out << (json ? rec.to_json() : rec.to_text());
  return kOk;
}

int cmd_bound(const Params& prm, bool json, std::ostream& out) {
  require_params(prm);
  OutputRecord rec;
  if (prm.p) {
    const ProbParam p(*prm.p);
    const BoundConstant c = ks_const_scalar(p);
    rec.add("kind", "scalar").add("p", p.value()).add("t_star", t_star_scalar(p).t).add("constant", c.value);
    rec.add("degenerate", c.degenerate).add("limit_case", c.limit);
  } else {
    const ParamPair pr(*prm.p1, *prm.p2);
    const BoundConstant c = ks_const_pair(pr);
    rec.add("kind", "pair").add("p1", pr.p1.value()).add("p2", pr.p2.value());
    rec.add("t_star", t_star_pair(pr).t).add("constant", c.value);
    rec.add("degenerate", c.degenerate).add("limit_case", c.limit);
  }
  out << (json ? rec.to_json() : rec.to_text());
  return kOk;
}

int cmd_classify(double p1, double p2, const SolverConfig& cfg, std::ostream& out) {
  const ParamPair pr(p1, p2);
  const RegionReport r = classify(pr, cfg);
  OutputRecord rec;
  rec.add("p1", pr.p1.value()).add("p2", pr.p2.value());
  rec.add("in_A", std::string(to_string(r.in_A)));
  rec.add("in_B", std::string(to_string(r.in_B)));
  rec.add("in_C", std::string(to_string(r.in_C)));
  rec.add("in_D", std::string(to_string(r.in_D)));
  rec.add("canonical_p1", r.canonical.pair.p1.value()).add("canonical_p2", r.canonical.pair.p2.value());
  rec.add("flipped", r.canonical.flipped).add("swapped", r.canonical.swapped);
  rec.add("cond_A", r.cond_A).add("b_expression", r.b_expression).add("disc_D", r.disc_D);
  if (r.gamma_used) {
    rec.add("gamma", r.gamma_used->gamma).add("t_hat", r.gamma_used->t_hat);
    rec.add("gamma_residual_f", r.gamma_used->residual_f).add("gamma_residual_fprime", r.gamma_used->residual_fprime);
    rec.add("gamma_polished", r.gamma_used->polished);
  }
  out << rec.to_json();
  return kOk;
}

BoundaryCurve trace_curve(const std::string& curve, int n, const SolverConfig& cfg) {
  const double top_abc = kPPlus - 1e-4;
  const double top_d = 2.0 - std::sqrt(2.0) - 1e-4;
  if (curve == "alpha") return alpha_trace(linspace(0.01, top_abc, n));
  if (curve == "beta") return beta_trace(linspace(0.01, top_abc, n));
  if (curve == "gamma") return gamma_trace(linspace(0.01, top_abc, n), cfg);
  if (curve == "d-lower") return d_trace(linspace(0.01, top_d, n), false);
  return d_trace(linspace(0.01, top_d, n), true);
}

int cmd_trace(const std::string& curve, int n, const std::string& path, const SolverConfig& cfg, std::ostream& out,
              std::ostream& err) {
  if (n < 2) throw UsageError("--n must be at least 2");
  const BoundaryCurve c = trace_curve(curve, n, cfg);
  if (path.empty()) {
    write_curve_csv(out, c);
  } else {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw UsageError(fmt::format("cannot open {} for writing", path));
    write_curve_csv(f, c);
    if (!f) {
      err << fmt::format("error: writing {} failed\n", path);
      return kFail;
    }
  }
  const std::size_t solved = c.solved_count();
  err << fmt::format("{}: {}/{} points solved\n", curve, solved, c.points.size());
  return 10 * solved >= 9 * c.points.size() ? kOk : kFail;
}

void print_report(const std::string& suite, const ConsistencyReport& rep, std::ostream& out) {
  for (const auto& c : rep.checks) {
    std::string line = fmt::format("[{}] {}: {} ({}) max_error={}", suite, to_string(c.status), c.name, c.location,
                                   format_number(c.max_error));
    if (!c.asserted) line += " [reported only]";
    out << line << '\n';
    for (const auto& [k, v] : c.witnesses) out << fmt::format("    {} = {}\n", k, format_number(v));
  }
}

int cmd_verify(const std::string& suite, int grid, const SolverConfig& cfg, std::ostream& out) {
  if (grid < 2) throw UsageError("--grid must be at least 2");
  ConsistencyReport all;
  all.seed = cfg.seed;
  auto run = [&](const std::string& name, const ConsistencyReport& rep) {
    print_report(name, rep, out);
    all.append(rep);
  };
  if (suite == "core" || suite == "all") run("core", core_suite(cfg));
  if (suite == "regions" || suite == "all") run("regions", regions_suite(grid, cfg));
  if (suite == "gamma" || suite == "all") run("gamma", gamma_suite(grid, cfg));
  if (suite == "paper" || suite == "all") run("paper", paper_consistency(cfg));
  const bool ok = all.passed();
  out << fmt::format("suite {} seed {}: {}\n", suite, cfg.seed, ok ? "PASS" : "FAIL");
  return ok ? kOk : kFail;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sharp sub-Gaussian constants of Bernoulli sums"};
  app.name("subgauss");
  app.require_subcommand(1);

  Params eval_p;
  double eval_t = 0.0;
  int eval_order = 3;
  bool eval_json = false;
  auto* eval = app.add_subcommand("eval", "evaluate g, g', f and derivatives at t");
  add_param_options(*eval, eval_p);
  eval->add_option("--t", eval_t, "abscissa")->required();
  eval->add_option("--order", eval_order, "highest derivative of f to print (0..3)");
  eval->add_flag("--json", eval_json, "JSON output");

  Params bound_p;
  bool bound_json = false;
  auto* bound = app.add_subcommand("bound", "t* and the sharp sub-Gaussian constant");
  add_param_options(*bound, bound_p);
  bound->add_flag("--json", bound_json, "JSON output");

  double cls_p1 = 0.0;
  double cls_p2 = 0.0;
  SolverConfig cls_cfg;
  auto* cls = app.add_subcommand("classify", "membership in the regions A, B, C, D");
  cls->add_option("--p1", cls_p1)->required();
  cls->add_option("--p2", cls_p2)->required();
  cls->add_option("--band", cls_cfg.band, "indeterminate band around sign tests");
  cls->add_option("--gamma-tol", cls_cfg.band_p, "indeterminate band around gamma in p2");

  std::string trace_curve_name;
  int trace_n = 256;
  std::string trace_out;
  auto* trace = app.add_subcommand("trace", "sample a region boundary as CSV");
  trace->add_option("--curve", trace_curve_name)
      ->required()
      ->check(CLI::IsMember({"alpha", "beta", "gamma", "d-lower", "d-upper"}));
  trace->add_option("--n", trace_n, "number of points");
  trace->add_option("--out", trace_out, "output file (stdout if omitted)");

  std::string suite = "all";
  int grid = 50;
  SolverConfig ver_cfg;
  auto* ver = app.add_subcommand("verify", "run invariant suites");
  ver->add_option("--suite", suite)->check(CLI::IsMember({"core", "regions", "gamma", "paper", "all"}));
  ver->add_option("--grid", grid, "canonical grid size");
  ver->add_option("--seed", ver_cfg.seed, "random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (eval->parsed()) return cmd_eval(eval_p, eval_t, eval_order, eval_json, out);
    if (bound->parsed()) return cmd_bound(bound_p, bound_json, out);
    if (cls->parsed()) {
      cls_cfg.validate();
      return cmd_classify(cls_p1, cls_p2, cls_cfg, out);
    }
    if (trace->parsed()) return cmd_trace(trace_curve_name, trace_n, trace_out, SolverConfig{}, out, err);
    if (ver->parsed()) return cmd_verify(suite, grid, ver_cfg, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFail;
  }
  return kUsage;
}

}  // namespace subgauss

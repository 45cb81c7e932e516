#include "foms/harness.hpp"

#include "foms/accelerated.hpp"
#include "foms/conditional_gradient.hpp"
#include "foms/dual_averaging.hpp"
#include "foms/prox_gradient.hpp"
#include "foms/rates.hpp"
#include "foms/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <thread>

namespace foms {

using nlohmann::json;

const std::vector<std::string>& known_solvers() {
  static const std::vector<std::string> solvers = {
      "bpgm", "md",   "da",  "abpgm", "universal", "gcg-standard", "gcg-ls", "gcg-adaptive",
      "gcg-backtracking", "awcg", "pwcg", "scg", "adpmm", "cp", "cg-abpgm", "restart"};
  return solvers;
}

namespace {

std::string solver_list() {
  std::string s;
  for (const auto& name : known_solvers()) s += (s.empty() ? "" : ", ") + name;
  return s;
}

DistanceGenerator pick_geometry(const std::string& solver, const FeasibleSet& X) {
  if ((solver == "md" || solver == "da") && X.kind == SetKind::simplex)
    return DistanceGenerator::entropy_simplex(X.dimension);
  return DistanceGenerator::euclidean();
}

GCGResult run_gcg_kind(const GeneratedInstance& inst, CGStep kind, int steps) {
  GeneralizedLinearOracle glo =
      GeneralizedLinearOracle::over(inst.problem.X, inst.problem.r,
                                    inst.problem.r.kind == RegularizerKind::l1 ? inst.spec.lambda
                                                                               : 0.0);
  CGStepRule rule;
  rule.kind = kind;
  return gcg_run(inst.problem, glo, rule, inst.problem.start, steps);
}

}  // namespace

SolverTrace run_solver(const std::string& solver, const GeneratedInstance& inst,
                       const SolveOptions& opts) {
  const CompositeProblem& problem = inst.problem;
  const DistanceGenerator h = pick_geometry(solver, problem.X);
  SolverTrace trace;

  if (solver == "bpgm") {
    trace = bpgm_run(problem, h, StepPolicy::constant_smooth(), problem.start, opts.steps).trace;
  } else if (solver == "md") {
    trace = mirror_descent_run(problem, h, problem.start, opts.steps, opts.gamma0).trace;
  } else if (solver == "da") {
    trace = da_run(problem, h, DASchedule::constant_beta_sqrt(1.0), opts.steps).trace;
  } else if (solver == "abpgm") {
    require(problem.f.lipschitz_grad.has_value(), "abpgm needs L_f metadata");
    trace = abpgm_run(problem, h, *problem.f.lipschitz_grad, problem.start, opts.steps).trace;
  } else if (solver == "universal") {
    UniversalConfig cfg;
    cfg.eps = opts.eps;
    cfg.L0 = opts.L0;
    trace = universal_run(problem, h, cfg, problem.start, opts.steps).trace;
  } else if (solver == "gcg-standard") {
    trace = run_gcg_kind(inst, CGStep::standard, opts.steps).trace;
  } else if (solver == "gcg-ls") {
    trace = run_gcg_kind(inst, CGStep::exact_line_search, opts.steps).trace;
  } else if (solver == "gcg-adaptive") {
    trace = run_gcg_kind(inst, CGStep::adaptive, opts.steps).trace;
  } else if (solver == "gcg-backtracking") {
    trace = run_gcg_kind(inst, CGStep::backtracking, opts.steps).trace;
  } else if (solver == "awcg" || solver == "pwcg") {
    const LinearOracle lo = LinearOracle::over(problem.X);
    const AwayVariant variant = solver == "awcg" ? AwayVariant::away : AwayVariant::pairwise;
    AtomState atoms;
    if (problem.X.kind == SetKind::simplex) {
      // uniform start as a convex combination of all vertices
      for (Index i = 0; i < problem.X.dimension; ++i) {
        Vec e = Vec::Zero(problem.X.dimension);
        e[i] = 1.0;
        atoms.atoms.push_back(e);
        atoms.weights.push_back(1.0 / static_cast<double>(problem.X.dimension));
      }
    } else {
      atoms = AtomState::single(lo.answer(problem.f.gradient(problem.start)));
    }
    trace = awcg_run(problem, lo, atoms, opts.steps, variant).trace;
  } else if (solver == "scg") {
    require(problem.f.lipschitz_grad.has_value() && problem.X.bounded(),
            "scg needs L_f and a bounded domain");
    SCGParams params;
    params.lipschitz = *problem.f.lipschitz_grad;
    params.omega_sq = *problem.X.diameter_sq;
    trace = scg_run(problem, LinearOracle::over(problem.X), params, problem.start, opts.steps)
                .trace;
  } else if (solver == "adpmm" || solver == "cp") {
    require(inst.split.has_value(), "splitting solvers need a g(Ax) + r(x) instance");
    const SplitProblem& sp = *inst.split;
    const double tau = 0.5 / (opts.c * sp.op_norm * sp.op_norm);
    const Vec x0 = Vec::Zero(sp.A.cols()), z0 = Vec::Zero(sp.A.rows()),
              y0 = Vec::Zero(sp.A.rows());
    if (solver == "adpmm") {
      trace = adpmm_run(sp, ADMMConfig::linearized(opts.c, tau, sp), x0, z0, y0, opts.steps).trace;
    } else {
      CPConfig cfg;
      cfg.tau = tau;
      cfg.c = opts.c;
      cfg.theta = opts.theta;
      trace = cp_run(sp, cfg, x0, y0, Vec(y0 + opts.c * (sp.A * x0 - z0)), opts.steps).trace;
    }
  } else if (solver == "cg-abpgm") {
    require(problem.X.bounded() && problem.f.lipschitz_grad.has_value(),
            "cg-abpgm needs L_f and a bounded domain");
    const GeneralizedLinearOracle glo = GeneralizedLinearOracle::over(problem.X, problem.r,
                                                                      inst.spec.lambda);
    const double D_X = *problem.X.diameter_sq / 2.0;
    trace = cg_inexact_abpgm_run(problem, glo, D_X, problem.start, opts.steps).trace;
  } else if (solver == "restart") {
    require(inst.meta.mu > 0.0 && problem.reference.has_value(),
            "restart needs an error-bound constant and a reference optimum");
    RestartConfig cfg;
    cfg.mu = inst.meta.mu;
    cfg.R0 = (problem.start - problem.reference->x_star).norm() * (1.0 + 1e-9);
    cfg.Omega = 1.0;
    trace = restart_run(problem, h, cfg, problem.start, opts.eps).trace;
  } else {
    throw std::invalid_argument("unknown solver '" + solver + "'; known solvers: " +
                                solver_list());
  }

  trace.meta["solver"] = solver;
  trace.meta["problem"] = inst.spec.tag();
  trace.meta["seed"] = std::to_string(inst.spec.seed);
  trace.meta["generator"] = Prng::kName;
  if (inst.problem.reference) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", inst.problem.reference->psi_min);
    trace.meta["psi_min"] = buf;
  }
  return trace;
}

namespace {

int env_thread_cap() {
  if (const char* env = std::getenv("FOMS_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void write_or_print(const json& j, const std::string& path) {
  if (path.empty()) {
    std::cout << j.dump(2) << std::endl;
  } else {
    std::ofstream out(path);
    out << j.dump(2) << "\n";
  }
}

json outcome_to_json(const VerifyOutcome& v) {
  json j;
  j["spec"] = v.spec_tag;
  j["solver"] = v.solver;
  j["bound"] = v.bound;
  j["violations"] = v.violations;
  if (std::isnan(v.slope))
    j["slope"] = nullptr;
  else
    j["slope"] = v.slope;
  j["pass"] = v.pass;
  j["seconds"] = v.seconds;
  j["details"] = v.details;
  return j;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"first-order convex optimization benchmark harness"};
  app.set_config("--config", "", "plain key = value configuration file");
  app.require_subcommand(1);

  InstanceSpec spec;
  SolveOptions opts;
  std::string solver = "bpgm", solvers_csv = "bpgm,abpgm";
  std::string out_path, trace_path;
  long kmin = 10, kmax = 1000;
  std::string bound;
  std::uint64_t verify_seed = 0;

  auto add_instance_flags = [&](CLI::App* cmd) {
    cmd->add_option("--problem", spec.problem, "instance kind");
    cmd->add_option("--n", spec.n, "primal dimension");
    cmd->add_option("--m", spec.m, "row dimension");
    cmd->add_option("--lambda", spec.lambda, "regularization weight");
    cmd->add_option("--seed", spec.seed, "64-bit instance seed");
    cmd->add_option("--steps", opts.steps, "iteration budget");
    cmd->add_option("--gamma0", opts.gamma0, "mirror-descent step scale");
    cmd->add_option("--eps", opts.eps, "target accuracy (universal/restart)");
    cmd->add_option("--L0", opts.L0, "initial smoothness estimate (universal)");
    cmd->add_option("--c", opts.c, "splitting penalty");
    cmd->add_option("--theta", opts.theta, "Chambolle-Pock extrapolation");
  };

  CLI::App* solve = app.add_subcommand("solve", "run one solver on one instance");
  add_instance_flags(solve);
  solve->add_option("--solver", solver, "solver tag");
  solve->add_option("--out", out_path, "trace csv path");

  CLI::App* compare = app.add_subcommand("compare", "run several solvers on one instance");
  add_instance_flags(compare);
  compare->add_option("--solvers", solvers_csv, "comma-separated solver tags");
  compare->add_option("--out", out_path, "joined json report path");

  CLI::App* rates = app.add_subcommand("rates", "fit a stored trace");
  rates->add_option("--trace", trace_path, "trace csv path")->required();
  rates->add_option("--kmin", kmin, "window start");
  rates->add_option("--kmax", kmax, "window end");
  rates->add_option("--out", out_path, "json report path");

  CLI::App* verify = app.add_subcommand("verify", "check one cited bound");
  verify->add_option("--bound", bound, "bound tag")->required();
  verify->add_option("--seed", verify_seed, "seed offset");
  verify->add_option("--out", out_path, "json report path");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      std::cout << app.help() << std::endl;
      return 0;
    }
    std::cerr << e.what() << "\n";
    return 1;
  }

  try {
    if (solve->parsed()) {
      const GeneratedInstance inst = generate_problem(spec);
      const SolverTrace trace = run_solver(solver, inst, opts);
      if (!out_path.empty())
        trace.save_csv(out_path);
      else
        std::cout << trace.to_csv();
      std::cerr << "solver=" << solver << " problem=" << spec.tag()
                << " generator=" << Prng::kName << " rows=" << trace.size() << "\n";
      return 0;
    }

    if (compare->parsed()) {
      const GeneratedInstance inst = generate_problem(spec);
      std::vector<std::string> names;
      std::string cur;
      for (char ch : solvers_csv + ",") {
        if (ch == ',') {
          if (!cur.empty()) names.push_back(cur);
          cur.clear();
        } else {
          cur += ch;
        }
      }
      std::vector<SolverTrace> traces(names.size());
      std::vector<std::string> errors(names.size());
      const int cap = env_thread_cap();
      std::size_t next = 0;
      while (next < names.size()) {
        const std::size_t batch = std::min<std::size_t>(cap, names.size() - next);
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < batch; ++t) {
          const std::size_t idx = next + t;
          pool.emplace_back([&, idx] {
            try {
              traces[idx] = run_solver(names[idx], inst, opts);
            } catch (const std::exception& e) {
              errors[idx] = e.what();
            }
          });
        }
        for (auto& th : pool) th.join();
        next += batch;
      }

      json report;
      report["spec"] = spec.tag();
      report["generator"] = Prng::kName;
      report["seed"] = spec.seed;
      if (inst.problem.reference) report["psi_min"] = inst.problem.reference->psi_min;
      report["solvers"] = json::array();
      for (std::size_t i = 0; i < names.size(); ++i) {
        json entry;
        entry["solver"] = names[i];
        if (!errors[i].empty()) {
          entry["error"] = errors[i];
        } else {
          const TraceRow& last = traces[i].back();
          entry["k"] = last.k;
          entry["objective"] = last.objective;
          if (!std::isnan(last.gap)) entry["gap"] = last.gap;
          entry["grad_calls"] = last.grad_calls;
          entry["prox_calls"] = last.prox_calls;
          entry["lo_calls"] = last.lo_calls;
          entry["wall_ns"] = last.wall_ns;
        }
        report["solvers"].push_back(entry);
      }
      write_or_print(report, out_path);
      return 0;
    }

    if (rates->parsed()) {
      const SolverTrace trace = SolverTrace::load_csv(trace_path);
      const RateReport fit = fit_rate(trace, {kmin, kmax});
      json j;
      j["spec"] = trace.meta.count("problem") ? trace.meta.at("problem") : "";
      j["solver"] = trace.meta.count("solver") ? trace.meta.at("solver") : "";
      j["bound"] = nullptr;
      j["violations"] = 0;
      j["slope"] = fit.slope;
      j["window"] = {fit.window.first, fit.window.second};
      j["points"] = fit.points;
      write_or_print(j, out_path);
      return 0;
    }

    if (verify->parsed()) {
      const VerifyOutcome outcome = verify_bound(bound, verify_seed);
      write_or_print(outcome_to_json(outcome), out_path);
      std::cerr << (outcome.pass ? "PASS " : "FAIL ") << outcome.bound << ": " << outcome.details
                << "\n";
      return outcome.pass ? 0 : 2;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace foms

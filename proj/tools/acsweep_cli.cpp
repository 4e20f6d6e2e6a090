// Command-line frontend: run simulations, convergence studies, and per-step
// benchmarks for the periodic Allen-Cahn sweep schemes.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "acsweep/diagnostics.hpp"
#include "acsweep/experiments.hpp"
#include "acsweep/potential.hpp"
#include "acsweep/scheme.hpp"
#include "acsweep/snapshot.hpp"
#include "acsweep/version.hpp"

using namespace acsweep;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitMonitor = 2;
constexpr int kExitOrderGate = 3;

struct RunArgs {
  std::string scheme = "ess1";
  std::string potential = "poly";
  int dim = 2;
  int M = 128;
  double L = 1.0;
  double eps = 0.01;
  double tau = 0.0;
  double t_end = 1.0;
  std::string kappa = "auto";
  std::string ic = "sinesine";
  std::string solver = "newton";
  int snapshot_every = 0;
  int diag_every = 1;
  bool allow_unstable = false;
  std::string out;
};

double parse_kappa(const std::string& s, const Potential& p) {
  if (s == "auto") return p.kappa_default;
  return std::stod(s);
}

Field make_ic(const std::string& token, const Grid& grid, double eps) {
  if (token == "sinesine") return ic_sinesine(grid);
  if (token == "circles") return ic_eight_circles(grid, eps);
  if (token.rfind("random:", 0) == 0) {
    const std::string args = token.substr(7);
    const auto comma = args.find(',');
    if (comma == std::string::npos)
      throw CLI::ValidationError("--ic", "expected random:seed,amp");
    const auto seed = std::stoull(args.substr(0, comma));
    const double amp = std::stod(args.substr(comma + 1));
    return ic_random(grid, amp, seed);
  }
  if (token.rfind("file:", 0) == 0) {
    Field f = load_snapshot(token.substr(5));
    if (!(f.grid == grid))
      throw CLI::ValidationError("--ic", "snapshot grid does not match --dim/--M/--L");
    return f;
  }
  throw CLI::ValidationError("--ic", "unknown initial condition '" + token + "'");
}

json manifest_json(const RunArgs& a, const Potential& p, const SchemeConfig& cfg,
                   const Grid& grid) {
  json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["command"] = "run";
  j["scheme"] = a.scheme;
  j["potential"] = {{"token", a.potential},
                    {"beta", p.beta},
                    {"kappa_default", p.kappa_default}};
  j["grid"] = {{"dim", grid.dim}, {"M", grid.points}, {"L", grid.length}, {"h", grid.spacing}};
  j["eps"] = a.eps;
  j["tau"] = a.tau;
  j["t_end"] = a.t_end;
  j["kappa"] = cfg.resolved_kappa(p);
  j["nonlinear_solver"] = a.solver;
  j["newton"] = {{"tol", cfg.newton.tol}, {"max_iter", cfg.newton.max_iter}};
  j["ic"] = a.ic;
  j["snapshot_every"] = a.snapshot_every;
  j["diag_every"] = a.diag_every;
  j["allow_unstable"] = a.allow_unstable;
  j["max_stable_tau"] =
      max_stable_tau(cfg.scheme, grid, p, cfg.resolved_kappa(p), cfg.epsilon);
  return j;
}

int do_run(const RunArgs& a) {
  const Potential p = Potential::parse(a.potential);
  const SchemeId scheme = parse_scheme(a.scheme);
  if (a.solver == "cardano" && p.kind != PotentialKind::POLY) {
    std::cerr << "error: the cardano solver requires the double-well potential\n";
    return kExitUsage;
  }
  if (a.ic == "circles" && std::abs(a.L - 2.0 * std::acos(-1.0)) > 1e-12) {
    std::cerr << "error: the eight-circles start requires --L 6.283185307179586 (2*pi)\n";
    return kExitUsage;
  }
  const Grid grid(a.dim, a.M, a.L);

  SchemeConfig cfg;
  cfg.scheme = scheme;
  cfg.tau = a.tau;
  cfg.epsilon = a.eps;
  cfg.kappa = parse_kappa(a.kappa, p);
  cfg.nonlinear_solver = a.solver == "cardano" ? NonlinearSolver::CARDANO
                                               : NonlinearSolver::NEWTON;
  cfg.enforce_thresholds = !a.allow_unstable;

  fs::create_directories(a.out);
  {
    std::ofstream mf(fs::path(a.out) / "manifest.json");
    mf << manifest_json(a, p, cfg, grid).dump(2) << '\n';
  }

  SimulateOptions opts;
  opts.t_end = a.t_end;
  opts.snapshot_every = a.snapshot_every;
  opts.diag_every = a.diag_every;
  opts.strict = true;
  if (a.snapshot_every > 0) {
    opts.snapshot_sink = [&](const Field& f, double time, std::int64_t step) {
      char name[32];
      std::snprintf(name, sizeof name, "snap_%08lld", static_cast<long long>(step));
      SnapshotMeta meta;
      meta.dim = grid.dim;
      meta.M = grid.points;
      meta.L = grid.length;
      meta.time = time;
      meta.scheme = a.scheme;
      meta.potential = a.potential;
      save_snapshot((fs::path(a.out) / name).string(), f, meta);
    };
  }

  const Field u0 = make_ic(a.ic, grid, a.eps);
  std::ofstream diag(fs::path(a.out) / "diagnostics.csv");
  write_diagnostics_header(diag);
  try {
    Trajectory traj = simulate(u0, cfg, p, opts);
    for (const StepReport& r : traj.reports) write_diagnostics_row(diag, r);
  } catch (const MonitorViolation& mv) {
    write_diagnostics_row(diag, mv.report);
    std::cerr << "monitor violation: " << mv.what() << '\n';
    return kExitMonitor;
  }
  return kExitOk;
}

int do_rerun(const std::string& manifest_path, const std::string& out) {
  std::ifstream in(manifest_path);
  if (!in) {
    std::cerr << "error: cannot open manifest " << manifest_path << '\n';
    return kExitUsage;
  }
  json j;
  in >> j;
  RunArgs a;
  a.scheme = j.at("scheme").get<std::string>();
  a.potential = j.at("potential").at("token").get<std::string>();
  a.dim = j.at("grid").at("dim").get<int>();
  a.M = j.at("grid").at("M").get<int>();
  a.L = j.at("grid").at("L").get<double>();
  a.eps = j.at("eps").get<double>();
  a.tau = j.at("tau").get<double>();
  a.t_end = j.at("t_end").get<double>();
  a.kappa = std::to_string(j.at("kappa").get<double>());
  {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", j.at("kappa").get<double>());
    a.kappa = buf;
  }
  a.ic = j.at("ic").get<std::string>();
  a.solver = j.at("nonlinear_solver").get<std::string>();
  a.snapshot_every = j.at("snapshot_every").get<int>();
  a.diag_every = j.at("diag_every").get<int>();
  a.allow_unstable = j.at("allow_unstable").get<bool>();
  a.out = out;
  return do_run(a);
}

std::vector<double> tau_ladder(int kmin, int kmax) {
  std::vector<double> taus;
  for (int k = kmin; k <= kmax; ++k) taus.push_back(std::pow(2.0, -k));
  return taus;
}

void emit_table(const RefinementResult& res, const std::string& control,
                const std::string& out) {
  write_refinement_csv(std::cout, res, control);
  for (double s : res.skipped)
    std::cerr << "# skipped unstable cell: " << control << " = " << s << '\n';
  if (!out.empty()) {
    fs::create_directories(out);
    std::ofstream f(fs::path(out) / (control == "tau" ? "converge_time.csv"
                                                      : "converge_space.csv"));
    write_refinement_csv(f, res, control);
  }
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string(kToolName) + " " + kToolVersion +
               " - componentwise sweep solvers for the periodic Allen-Cahn equation"};
  app.require_subcommand(1);

  // ---- run ----
  RunArgs ra;
  CLI::App* run = app.add_subcommand("run", "integrate and write diagnostics/snapshots");
  run->add_option("--scheme", ra.scheme, "ess1 | ess1-adjoint | ss2 | ss2-adjoint | ssi1");
  run->add_option("--potential", ra.potential, "poly | log | log:theta,theta_c");
  run->add_option("--dim", ra.dim, "grid dimension (1 or 2)")->check(CLI::Range(1, 2));
  run->add_option("--M", ra.M, "points per axis")->required();
  run->add_option("--L", ra.L, "domain length per axis")->required();
  run->add_option("--eps", ra.eps, "diffuse-interface parameter")->required();
  run->add_option("--tau", ra.tau, "time step")->required();
  run->add_option("--t-end", ra.t_end, "final time")->required();
  run->add_option("--kappa", ra.kappa, "stabilization: auto | <real>");
  run->add_option("--ic", ra.ic, "sinesine | circles | random:seed,amp | file:base");
  run->add_option("--nonlinear-solver", ra.solver, "newton | cardano")
      ->check(CLI::IsMember({"newton", "cardano"}));
  run->add_option("--snapshot-every", ra.snapshot_every, "snapshot stride (0 = off)");
  run->add_option("--diag-every", ra.diag_every, "diagnostics stride");
  run->add_flag("--allow-unstable", ra.allow_unstable, "skip threshold enforcement");
  run->add_option("--out", ra.out, "output directory")->required();

  // ---- rerun ----
  std::string manifest_path, rerun_out;
  CLI::App* rerun = app.add_subcommand("rerun", "repeat a run from its manifest");
  rerun->add_option("manifest", manifest_path, "path to manifest.json")->required();
  rerun->add_option("--out", rerun_out, "output directory")->required();

  // ---- converge ----
  std::string cv_mode = "time", cv_scheme = "ess1", cv_potential = "poly", cv_out, cv_cache;
  int cv_M = 128, cv_kmin = 9, cv_kmax = 13, cv_refk = 17, cv_Mref = 512;
  double cv_L = 1.0, cv_eps = 0.01, cv_tend = 0.25, cv_tau = std::pow(2.0, -14);
  double cv_order_tol = 0.25;
  bool cv_allow_unstable = false;
  std::vector<int> cv_Ms{16, 32, 64, 128};
  CLI::App* conv = app.add_subcommand("converge", "empirical order studies");
  conv->add_option("--mode", cv_mode, "time | space")->check(CLI::IsMember({"time", "space"}));
  conv->add_option("--scheme", cv_scheme);
  conv->add_option("--potential", cv_potential);
  conv->add_option("--M", cv_M, "grid size for the time study");
  conv->add_option("--L", cv_L);
  conv->add_option("--eps", cv_eps);
  conv->add_option("--t-end", cv_tend);
  conv->add_option("--kmin", cv_kmin, "smallest k of the tau = 2^-k ladder");
  conv->add_option("--kmax", cv_kmax, "largest k of the tau = 2^-k ladder");
  conv->add_option("--ref-k", cv_refk, "reference runs at tau = 2^-ref-k");
  conv->add_option("--Ms", cv_Ms, "grid ladder for the space study")->delimiter(',');
  conv->add_option("--Mref", cv_Mref, "reference grid for the space study");
  conv->add_option("--tau", cv_tau, "fixed time step for the space study");
  conv->add_option("--order-tol", cv_order_tol,
                   "gate: |mean order - nominal| must not exceed this");
  conv->add_option("--cache-dir", cv_cache, "reference cache directory");
  conv->add_flag("--allow-unstable", cv_allow_unstable);
  conv->add_option("--out", cv_out, "also write the table here");

  // ---- bench ----
  std::vector<std::string> bn_schemes{"ess1", "ess1-adjoint", "ss2", "ss2-adjoint", "ssi1"};
  std::vector<int> bn_sizes{128, 256, 512, 1024};
  int bn_steps = 5;
  std::string bn_potential = "poly", bn_out, bn_solver = "newton";
  double bn_eps = 0.01, bn_L = 1.0;
  CLI::App* bench = app.add_subcommand("bench", "per-step wall-time benchmark");
  bench->add_option("--schemes", bn_schemes)->delimiter(',');
  bench->add_option("--sizes", bn_sizes)->delimiter(',');
  bench->add_option("--steps", bn_steps, "timed steps per cell (>= 5)");
  bench->add_option("--potential", bn_potential);
  bench->add_option("--eps", bn_eps);
  bench->add_option("--L", bn_L);
  bench->add_option("--nonlinear-solver", bn_solver, "newton | cardano")
      ->check(CLI::IsMember({"newton", "cardano"}));
  bench->add_option("--out", bn_out, "also write the table here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return do_run(ra);
    if (*rerun) return do_rerun(manifest_path, rerun_out);

    if (*conv) {
      const Potential p = Potential::parse(cv_potential);
      const SchemeId scheme = parse_scheme(cv_scheme);
      StudyOptions opts;
      opts.allow_unstable = cv_allow_unstable;
      opts.cache_dir = cv_cache;
      RefinementResult res;
      std::string control;
      if (cv_mode == "time") {
        const Grid grid(2, cv_M, cv_L);
        const Field ref = build_reference(p, grid, cv_eps, std::pow(2.0, -cv_refk), cv_tend,
                                          ic_sinesine, opts);
        res = temporal_refinement(scheme, p, grid, cv_eps, tau_ladder(cv_kmin, cv_kmax),
                                  cv_tend, ref, ic_sinesine, opts);
        control = "tau";
      } else {
        res = spatial_refinement(scheme, p, cv_L, cv_eps, cv_tend, cv_tau, cv_Ms, cv_Mref,
                                 ic_sinesine, opts);
        control = "h";
      }
      emit_table(res, control, cv_out);
      const double nominal = scheme_nominal_order(scheme);
      if (res.orders.empty() || std::abs(res.mean_order() - nominal) > cv_order_tol) {
        std::cerr << "order gate failed: mean " << res.mean_order() << " vs nominal "
                  << nominal << " (tol " << cv_order_tol << ")\n";
        return kExitOrderGate;
      }
      return kExitOk;
    }

    if (*bench) {
      const Potential p = Potential::parse(bn_potential);
      if (bn_solver == "cardano" && p.kind != PotentialKind::POLY) {
        std::cerr << "error: the cardano solver requires the double-well potential\n";
        return kExitUsage;
      }
      std::vector<SchemeId> schemes;
      for (const auto& s : bn_schemes) schemes.push_back(parse_scheme(s));
      BenchResult res = bench_per_step(schemes, bn_sizes, p, bn_steps, 2, bn_eps, bn_L,
                                       bn_solver == "cardano" ? NonlinearSolver::CARDANO
                                                              : NonlinearSolver::NEWTON);
      write_bench_csv(std::cout, res);
      if (!bn_out.empty()) {
        fs::create_directories(bn_out);
        std::ofstream f(fs::path(bn_out) / "bench.csv");
        write_bench_csv(f, res);
      }
      return kExitOk;
    }
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

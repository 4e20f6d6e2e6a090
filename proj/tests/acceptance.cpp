// Acceptance suite: end-to-end checks of the solver library at pinned
// parameters and tolerances. Prints one PASS/FAIL line per criterion and
// exits nonzero if any fail. Individual criteria can be selected with
// --only N (repeatable).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "acsweep/dense_oracle.hpp"
#include "acsweep/experiments.hpp"
#include "acsweep/scheme.hpp"
#include "acsweep/spectral.hpp"
#include "acsweep/sweep_kernel.hpp"

using namespace acsweep;

namespace {

constexpr double kPi = std::numbers::pi;

double max_abs_diff(const Field& a, const Field& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.data.size(); ++k)
    m = std::max(m, std::abs(a.data[k] - b.data[k]));
  return m;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

const std::vector<SchemeId> kSweepSchemes{SchemeId::ESS1, SchemeId::ESS1_ADJOINT, SchemeId::SS2,
                                          SchemeId::SS2_ADJOINT};

// shared state: the eight-circles trajectories feed criteria 3, 4 and the
// solver-iteration statistic of criterion 7
struct CirclesRun {
  SchemeId scheme;
  PotentialKind potential;
  Trajectory traj;
  double beta;
};
std::vector<CirclesRun> g_circle_runs;
int g_circles_poly_newton_max = 0;

void run_circles_suite() {
  if (!g_circle_runs.empty()) return;
  const Grid grid(2, 256, 2.0 * kPi);
  for (const Potential& p : {Potential::poly(), Potential::log(0.8, 1.6)})
    for (SchemeId s : kSweepSchemes) {
      SchemeConfig cfg;
      cfg.scheme = s;
      cfg.tau = 0.01;
      cfg.epsilon = 0.05;
      SimulateOptions opts;
      opts.t_end = 10.0;
      Trajectory traj = simulate(ic_eight_circles(grid, cfg.epsilon), cfg, p, opts);
      if (p.kind == PotentialKind::POLY)
        for (const StepReport& r : traj.reports)
          g_circles_poly_newton_max = std::max(g_circles_poly_newton_max,
                                               r.solver_iterations_max);
      g_circle_runs.push_back({s, p.kind, std::move(traj), p.beta});
    }
}

// ---- criterion 1: temporal order -------------------------------------------

std::string criterion_temporal_order() {
  const Grid grid(2, 128, 1.0);
  const double eps = 0.01, t_end = 0.25;
  const std::vector<double> taus{std::pow(2.0, -9), std::pow(2.0, -10), std::pow(2.0, -11),
                                 std::pow(2.0, -12), std::pow(2.0, -13)};
  std::ostringstream detail;
  std::string fail;
  for (const Potential& p : {Potential::poly(), Potential::log(0.8, 1.6)}) {
    StudyOptions opts;
    const Field ref = build_reference(p, grid, eps, std::pow(2.0, -17), t_end, ic_sinesine, opts);
    for (SchemeId s : kSweepSchemes) {
      RefinementResult res = temporal_refinement(s, p, grid, eps, taus, t_end, ref,
                                                 ic_sinesine, opts);
      if (!res.skipped.empty()) {
        fail += scheme_token(s) + "/" + p.token() + ": ladder cells skipped; ";
        continue;
      }
      const double mean = res.mean_order();
      const double lo = scheme_nominal_order(s) == 2 ? 1.8 : 0.85;
      const double hi = scheme_nominal_order(s) == 2 ? 2.2 : 1.15;
      detail << scheme_token(s) << "/" << (p.kind == PotentialKind::POLY ? "poly" : "log")
             << "=" << fmt(mean) << " ";
      if (!(mean >= lo && mean <= hi))
        fail += scheme_token(s) + "/" + p.token() + " mean order " + fmt(mean) +
                " outside [" + fmt(lo) + "," + fmt(hi) + "]; ";
      // errors must keep shrinking through the asymptotic cells
      for (std::size_t k = res.orders.size() >= 2 ? res.orders.size() - 2 : 0;
           k < res.orders.size(); ++k)
        if (!(res.orders[k] > 0.0))
          fail += scheme_token(s) + "/" + p.token() + " non-decreasing asymptotic cell; ";
    }
  }
  if (!fail.empty()) return fail + "(" + detail.str() + ")";
  return "OK " + detail.str();
}

// ---- criterion 2: spatial order ---------------------------------------------

std::string criterion_spatial_order() {
  const Potential p = Potential::poly();
  StudyOptions opts;
  RefinementResult res = spatial_refinement(SchemeId::SS2, p, 1.0, 0.01, 0.25,
                                            std::pow(2.0, -14), {16, 32, 64, 128}, 512,
                                            ic_sinesine, opts);
  const double mean = res.mean_order();
  std::ostringstream detail;
  detail << "mean=" << fmt(mean) << " errors=";
  for (double e : res.errors) detail << fmt(e) << " ";
  if (!(mean >= 1.8 && mean <= 2.2))
    return "mean spatial order " + fmt(mean) + " outside [1.8,2.2] (" + detail.str() + ")";
  return "OK " + detail.str();
}

// ---- criteria 3 and 4: bound and dissipation on the eight-circles runs ------

std::string criterion_dmp() {
  run_circles_suite();
  double worst = -1.0;
  long long reports = 0;
  int violations = 0;
  for (const CirclesRun& run : g_circle_runs) {
    for (const StepReport& r : run.traj.reports) {
      ++reports;
      worst = std::max(worst, r.sup_norm - run.beta);
      if (!r.dmp_ok || r.sup_norm > run.beta + 1e-12) ++violations;
    }
  }
  std::ostringstream detail;
  detail << reports << " reports over 8 runs, max sup-beta=" << fmt(worst);
  if (violations > 0)
    return std::to_string(violations) + " bound violations (" + detail.str() + ")";
  return "OK " + detail.str();
}

std::string criterion_dedl() {
  run_circles_suite();
  int violations = 0;
  double worst_rel = -1e300;
  for (const CirclesRun& run : g_circle_runs) {
    const auto& reps = run.traj.reports;
    for (std::size_t k = 0; k < reps.size(); ++k) {
      const double prev = k == 0 ? reps[k].energy - reps[k].energy_delta : reps[k - 1].energy;
      const double slack = 1e-10 * std::max(1.0, std::abs(prev));
      worst_rel = std::max(worst_rel, reps[k].energy - prev);
      if (reps[k].energy > prev + slack || !reps[k].energy_decreasing) ++violations;
    }
  }
  // randomized short runs
  int random_violations = 0;
  int run_count = 0;
  const Grid grid(2, 32, 1.0);
  for (std::uint64_t seed = 0; seed < 25; ++seed)
    for (const Potential& p : {Potential::poly(), Potential::log(0.8, 1.6)})
      for (SchemeId s : kSweepSchemes) {
        SchemeConfig cfg;
        cfg.scheme = s;
        cfg.epsilon = 0.1;
        cfg.tau = 0.5 * max_stable_tau(s, grid, p, p.kappa_default, cfg.epsilon);
        SimulateOptions opts;
        opts.t_end = 20 * cfg.tau;
        Trajectory traj = simulate(ic_random(grid, 0.9 * p.beta, 7000 + seed), cfg, p, opts);
        ++run_count;
        for (const StepReport& r : traj.reports)
          if (!r.energy_decreasing || !r.dmp_ok) ++random_violations;
      }
  std::ostringstream detail;
  detail << "8 circle runs (max energy delta " << fmt(worst_rel) << ") + " << run_count
         << " randomized runs";
  if (violations + random_violations > 0)
    return std::to_string(violations) + "+" + std::to_string(random_violations) +
           " dissipation violations (" + detail.str() + ")";
  return "OK " + detail.str();
}

// ---- criterion 5: oracle equivalence ----------------------------------------

std::string criterion_oracle() {
  double worst_fwd = 0.0, worst_bwd = 0.0;
  for (const Potential& p : {Potential::poly(), Potential::log(0.8, 1.6)})
    for (int dim : {1, 2})
      for (int M : {4, 6, 8}) {
        const Grid g(dim, M, 1.0);
        SchemeConfig cfg;
        cfg.epsilon = 0.1;
        for (std::uint64_t seed = 0; seed < 25; ++seed) {
          Field u = ic_random(g, 0.9 * p.beta, 31 * M + seed);
          cfg.scheme = SchemeId::ESS1;
          cfg.tau = std::min(0.5 * max_stable_tau(cfg.scheme, g, p, p.kappa_default, cfg.epsilon),
                             1e-2);
          worst_fwd = std::max(worst_fwd,
                               max_abs_diff(step_ess1(u, cfg, p),
                                            dense_triangular_oracle(u, cfg, p, OraclePart::ESS1)));
          cfg.scheme = SchemeId::ESS1_ADJOINT;
          cfg.tau = std::min(0.5 * max_stable_tau(cfg.scheme, g, p, p.kappa_default, cfg.epsilon),
                             1e-2);
          worst_bwd = std::max(
              worst_bwd, max_abs_diff(step_ess1_adjoint(u, cfg, p),
                                      dense_triangular_oracle(u, cfg, p,
                                                              OraclePart::ESS1_ADJOINT)));
        }
      }

  // linear reduction: pure diffusion, kappa = 0, d = 1
  double worst_lin = 0.0;
  {
    const int M = 16;
    const Grid g(1, M, 1.0);
    const double h2 = g.spacing * g.spacing;
    const double tau = 0.4 * h2;
    Field u = ic_random(g, 1.0, 99);
    std::vector<double> literal = u.data;
    Field swept = u;
    for (int step = 0; step < 10; ++step) {
      std::vector<double> old = literal;
      for (int i = 0; i < M; ++i) {
        const double right = (i == M - 1) ? literal[0] : old[i + 1];
        const double left = (i == 0) ? old[M - 1] : literal[i - 1];
        literal[i] =
            ((1.0 - tau / h2) * old[i] + (tau / h2) * (right + left)) / (1.0 + tau / h2);
      }
      detail::ess1_sweep(swept.data.data(), 1, M, tau, 1.0 / h2, 0.0, ZeroNonlinearity{});
      for (int i = 0; i < M; ++i)
        worst_lin = std::max(worst_lin, std::abs(swept(i) - literal[i]));
    }
  }

  std::ostringstream detail;
  detail << "fwd=" << fmt(worst_fwd) << " bwd=" << fmt(worst_bwd) << " linear=" << fmt(worst_lin);
  if (worst_fwd > 1e-10 || worst_bwd > 1e-10)
    return "sweep vs dense oracle diff above 1e-10 (" + detail.str() + ")";
  if (worst_lin > 1e-13) return "linear reduction above 1e-13 (" + detail.str() + ")";
  return "OK " + detail.str();
}

// ---- criterion 6: adjoint and reversal identities ----------------------------

std::string criterion_identities() {
  double worst_adj = 0.0, worst_rev = 0.0;
  const Grid g(2, 8, 1.0);
  for (const Potential& p : {Potential::poly(), Potential::log(0.8, 1.6)})
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      SchemeConfig cfg;
      cfg.epsilon = 0.1;
      cfg.scheme = SchemeId::ESS1_ADJOINT;
      cfg.tau = 0.25 * max_stable_tau(cfg.scheme, g, p, p.kappa_default, cfg.epsilon);
      Field u = ic_random(g, 0.5 * p.beta, 4000 + seed);
      SchemeConfig back = cfg;
      back.tau = -cfg.tau;
      back.enforce_thresholds = false;
      worst_adj = std::max(worst_adj,
                           max_abs_diff(step_ess1(step_ess1_adjoint(u, cfg, p), back, p), u));

      cfg.scheme = SchemeId::SS2;
      cfg.tau = 0.25 * max_stable_tau(cfg.scheme, g, p, p.kappa_default, cfg.epsilon);
      back = cfg;
      back.tau = -cfg.tau;
      back.enforce_thresholds = false;
      worst_rev = std::max(worst_rev, max_abs_diff(step_ss2(step_ss2(u, cfg, p), back, p), u));
    }
  std::ostringstream detail;
  detail << "adjoint=" << fmt(worst_adj) << " reversal=" << fmt(worst_rev);
  if (worst_adj > 1e-9) return "adjoint identity above 1e-9 (" + detail.str() + ")";
  if (worst_rev > 1e-8) return "reversal identity above 1e-8 (" + detail.str() + ")";
  return "OK " + detail.str();
}

// ---- criterion 7: scalar-solver cross-check ----------------------------------

std::string criterion_scalar_solvers() {
  run_circles_suite();
  std::mt19937_64 rng(31337);
  auto uni = [&](double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1p-53);
  };
  NewtonConfig ncfg;
  double worst_gap = 0.0, worst_res = 0.0;
  int worst_iters = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    const double p = std::pow(10.0, uni(-2.0, 5.0));
    const double q = uni(-10.0, 10.0);
    const double via_cardano = cardano_real_root(p, q);
    const double bound = 1.0 + std::abs(q) + std::sqrt(p);
    SolveStats st;
    const double via_newton =
        newton_scalar([&](double x) { return (x * x + p) * x + q; },
                      [&](double x) { return 3.0 * x * x + p; }, 0.0, -bound, bound, ncfg, &st);
    worst_gap = std::max(worst_gap, std::abs(via_cardano - via_newton));
    worst_res = std::max(worst_res, st.final_residual);
    worst_iters = std::max(worst_iters, st.iterations);
  }

  // full backward-sweep steps: newton vs cardano on the double-well reduction
  const Potential p = Potential::poly();
  const Grid g(2, 64, 1.0);
  SchemeConfig cfg;
  cfg.scheme = SchemeId::ESS1_ADJOINT;
  cfg.epsilon = 0.05;
  cfg.tau = 0.5 * max_stable_tau(cfg.scheme, g, p, p.kappa_default, cfg.epsilon);
  double worst_step_gap = 0.0;
  int scheme_iter_max = 0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Field u = ic_random(g, 0.9, 600 + seed);
    StepStats stats;
    cfg.nonlinear_solver = NonlinearSolver::NEWTON;
    Field via_newton = step_ess1_adjoint(u, cfg, p, &stats);
    scheme_iter_max = std::max(scheme_iter_max, stats.newton_iterations_max);
    cfg.nonlinear_solver = NonlinearSolver::CARDANO;
    worst_step_gap = std::max(worst_step_gap,
                              max_abs_diff(via_newton, step_ess1_adjoint(u, cfg, p)));
  }

  std::ostringstream detail;
  detail << "cubic gap=" << fmt(worst_gap) << " res=" << fmt(worst_res)
         << " iters<=" << worst_iters << "; step gap=" << fmt(worst_step_gap)
         << " scheme iters<=" << scheme_iter_max << " (circles run: "
         << g_circles_poly_newton_max << ")";
  if (worst_gap > 1e-9) return "newton/cardano gap above 1e-9 (" + detail.str() + ")";
  if (worst_res > 1e-12) return "newton residual above 1e-12 (" + detail.str() + ")";
  if (worst_iters > 50) return "newton iterations above 50 (" + detail.str() + ")";
  if (worst_step_gap > 1e-9) return "full-step gap above 1e-9 (" + detail.str() + ")";
  if (scheme_iter_max > 8 || g_circles_poly_newton_max > 8)
    return "scheme newton iterations above the typical bound 8 (" + detail.str() + ")";
  return "OK " + detail.str();
}

// ---- criterion 8: per-step complexity scaling --------------------------------

std::string criterion_complexity() {
  const Potential p = Potential::poly();
  const std::vector<int> sizes{128, 256, 512, 1024};
  std::vector<SchemeId> schemes = kSweepSchemes;
  schemes.push_back(SchemeId::SSI1_BASELINE);
  BenchResult res = bench_per_step(schemes, sizes, p, 7, 2, 0.01, 1.0);

  std::ostringstream detail;
  std::string fail;
  for (SchemeId s : kSweepSchemes) {
    const double e = res.fitted_exponent.at(s);
    detail << scheme_token(s) << "=" << fmt(e) << " ";
    if (!(e >= 0.9 && e <= 1.2))
      fail += scheme_token(s) + " exponent " + fmt(e) + " outside [0.9,1.2]; ";
  }
  detail << "ssi1=" << fmt(res.fitted_exponent.at(SchemeId::SSI1_BASELINE)) << " (recorded)";
  // informative cell: per-step time at M=1024 vs the baseline
  const double ssi1_at_max = res.per_step_ns.at(SchemeId::SSI1_BASELINE).back();
  for (SchemeId s : kSweepSchemes) {
    const double t = res.per_step_ns.at(s).back();
    if (t > ssi1_at_max)
      detail << "; note: " << scheme_token(s) << " at M=1024 took " << fmt(t)
             << " ns vs ssi1 " << fmt(ssi1_at_max) << " ns";
  }
  // newton vs cardano on the backward sweep: relative speed, recorded
  BenchResult cardano = bench_per_step({SchemeId::ESS1_ADJOINT}, sizes, p, 7, 2, 0.01, 1.0,
                                       NonlinearSolver::CARDANO);
  const double rel = cardano.per_step_ns.at(SchemeId::ESS1_ADJOINT).back() /
                     res.per_step_ns.at(SchemeId::ESS1_ADJOINT).back();
  detail << "; cardano/newton time ratio at M=1024: " << fmt(rel)
         << " (cardano exponent " << fmt(cardano.fitted_exponent.at(SchemeId::ESS1_ADJOINT))
         << ")";
  if (!fail.empty()) return fail + "(" + detail.str() + ")";
  return "OK " + detail.str();
}

// ---- criterion 9: fixed-point exactness ---------------------------------------

std::string criterion_fixed_points() {
  double worst = 0.0;
  const Grid g(2, 32, 1.0);
  std::vector<SchemeId> schemes = kSweepSchemes;
  schemes.push_back(SchemeId::SSI1_BASELINE);
  for (const Potential& p : {Potential::poly(), Potential::log(0.8, 1.6)})
    for (SchemeId s : schemes)
      for (double level : {0.0, 1.0, -1.0}) {
        SchemeConfig cfg;
        cfg.scheme = s;
        cfg.epsilon = 0.1;
        const double bound = max_stable_tau(s, g, p, p.kappa_default, cfg.epsilon);
        cfg.tau = std::isfinite(bound) ? 0.5 * bound : 1e-2;
        std::unique_ptr<SpectralPlan> plan;
        if (s == SchemeId::SSI1_BASELINE) plan = std::make_unique<SpectralPlan>(g);
        const Field u0(g, level * p.beta);
        Field u = u0;
        for (int k = 0; k < 100; ++k) u = step_any(u, cfg, p, plan.get());
        worst = std::max(worst, max_abs_diff(u, u0));
      }
  if (worst > 1e-12)
    return "fixed-point drift " + fmt(worst) + " above 1e-12";
  return "OK max drift " + fmt(worst);
}

} // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i)
    if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) only.insert(std::atoi(argv[++i]));

  struct Criterion {
    int id;
    const char* name;
    std::function<std::string()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "temporal order", criterion_temporal_order},
      {2, "spatial order", criterion_spatial_order},
      {3, "discrete maximum bound", criterion_dmp},
      {4, "discrete energy dissipation", criterion_dedl},
      {5, "sweep vs dense oracle", criterion_oracle},
      {6, "adjoint and reversal identities", criterion_identities},
      {7, "newton vs cardano", criterion_scalar_solvers},
      {8, "per-step complexity scaling", criterion_complexity},
      {9, "fixed-point exactness", criterion_fixed_points},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    if (!only.empty() && !only.count(c.id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    std::string result;
    try {
      result = c.run();
    } catch (const std::exception& e) {
      result = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool pass = result.rfind("OK", 0) == 0;
    if (!pass) ++failures;
    std::printf("criterion %d (%s): %s - %s [%.1fs]\n", c.id, c.name,
                pass ? "PASS" : "FAIL", result.c_str(), secs);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}

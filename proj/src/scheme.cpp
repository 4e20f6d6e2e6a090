#include "acsweep/scheme.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>

#include "acsweep/spectral.hpp"
#include "acsweep/sweep_kernel.hpp"

namespace acsweep {

SchemeId parse_scheme(const std::string& token) {
  if (token == "ess1") return SchemeId::ESS1;
  if (token == "ess1-adjoint") return SchemeId::ESS1_ADJOINT;
  if (token == "ss2") return SchemeId::SS2;
  if (token == "ss2-adjoint") return SchemeId::SS2_ADJOINT;
  if (token == "ssi1") return SchemeId::SSI1_BASELINE;
  throw std::invalid_argument("unknown scheme token '" + token + "'");
}

std::string scheme_token(SchemeId s) {
  switch (s) {
    case SchemeId::ESS1: return "ess1";
    case SchemeId::ESS1_ADJOINT: return "ess1-adjoint";
    case SchemeId::SS2: return "ss2";
    case SchemeId::SS2_ADJOINT: return "ss2-adjoint";
    case SchemeId::SSI1_BASELINE: return "ssi1";
  }
  throw std::logic_error("unknown scheme id");
}

int scheme_nominal_order(SchemeId s) {
  return (s == SchemeId::SS2 || s == SchemeId::SS2_ADJOINT) ? 2 : 1;
}

double max_stable_tau(SchemeId scheme, const Grid& grid, const Potential& p, double kappa,
                      double epsilon) {
  const double fp_max = compute_kappa(p);
  if (kappa < fp_max * (1.0 - 1e-12))
    throw std::invalid_argument("stabilization kappa below max |f'| on [-beta, beta]");
  const double h2 = grid.spacing * grid.spacing;
  const double d_eps2 = grid.dim * epsilon * epsilon;
  switch (scheme) {
    case SchemeId::ESS1:
      return h2 / d_eps2;
    case SchemeId::ESS1_ADJOINT:
      return std::min(h2 / (kappa * h2 + d_eps2), 1.0 / (kappa + fp_max));
    case SchemeId::SS2:
    case SchemeId::SS2_ADJOINT:
      return 2.0 * std::min(h2 / (kappa * h2 + d_eps2), 1.0 / (kappa + fp_max));
    case SchemeId::SSI1_BASELINE:
      return std::numeric_limits<double>::infinity();
  }
  throw std::logic_error("unknown scheme id");
}

namespace {

void check_preconditions(const Field& u, const SchemeConfig& cfg, const Potential& p,
                         SchemeId effective_scheme, double effective_tau) {
  if (u.grid.points < 2) throw std::invalid_argument("schemes require at least 2 points per axis");
  if (!cfg.enforce_thresholds) return;
  if (!(effective_tau > 0.0)) throw std::invalid_argument("time step must be positive");
  const double kappa = cfg.resolved_kappa(p);
  const double bound = max_stable_tau(effective_scheme, u.grid, p, kappa, cfg.epsilon);
  if (effective_tau > bound * (1.0 + 1e-12))
    throw std::invalid_argument("time step " + std::to_string(effective_tau) +
                                " exceeds the " + scheme_token(effective_scheme) +
                                " threshold " + std::to_string(bound));
  if (sup_norm(u) > p.beta + kDmpTol)
    throw std::invalid_argument("initial state exceeds the bound beta");
}

double r_factor(const Field& u, const SchemeConfig& cfg) {
  return cfg.epsilon * cfg.epsilon / (u.grid.spacing * u.grid.spacing);
}

void merge_stats(StepStats* stats, const detail::SweepStats& s) {
  if (!stats) return;
  stats->newton_iterations_max = std::max(stats->newton_iterations_max, s.max_iterations);
  stats->newton_iterations_total += s.total_iterations;
  stats->clamped = stats->clamped || s.clamped;
}

} // namespace

Field step_ess1(const Field& u, const SchemeConfig& cfg, const Potential& p) {
  check_preconditions(u, cfg, p, SchemeId::ESS1, cfg.tau);
  Field out = u;
  with_nonlinearity(p, [&](auto nl) {
    detail::ess1_sweep(out.data.data(), u.grid.dim, u.grid.points, cfg.tau, r_factor(u, cfg),
                       cfg.resolved_kappa(p), nl);
  });
  return out;
}

Field step_ess1_adjoint(const Field& u, const SchemeConfig& cfg, const Potential& p,
                        StepStats* stats) {
  check_preconditions(u, cfg, p, SchemeId::ESS1_ADJOINT, cfg.tau);
  if (cfg.nonlinear_solver == NonlinearSolver::CARDANO && p.kind != PotentialKind::POLY)
    throw std::invalid_argument("cardano solver is only valid for the double-well potential");
  Field out = u;
  with_nonlinearity(p, [&](auto nl) {
    const auto s = detail::ess1_adjoint_sweep(out.data.data(), u.grid.dim, u.grid.points, cfg.tau,
                                              r_factor(u, cfg), cfg.resolved_kappa(p), nl,
                                              cfg.nonlinear_solver, cfg.newton, p.beta);
    merge_stats(stats, s);
  });
  return out;
}

static Field ss2_generic(const Field& u, const SchemeConfig& cfg, const Potential& p,
                         StepStats* stats, Field* intermediate, bool adjoint_first) {
  check_preconditions(u, cfg, p, adjoint_first ? SchemeId::SS2_ADJOINT : SchemeId::SS2, cfg.tau);
  SchemeConfig half = cfg;
  half.tau = 0.5 * cfg.tau;
  half.enforce_thresholds = false; // already checked against the composition threshold
  Field mid = adjoint_first ? step_ess1_adjoint(u, half, p, stats) : step_ess1(u, half, p);
  if (intermediate) *intermediate = mid;
  return adjoint_first ? step_ess1(mid, half, p) : step_ess1_adjoint(mid, half, p, stats);
}

Field step_ss2(const Field& u, const SchemeConfig& cfg, const Potential& p, StepStats* stats,
               Field* intermediate) {
  return ss2_generic(u, cfg, p, stats, intermediate, /*adjoint_first=*/false);
}

Field step_ss2_adjoint(const Field& u, const SchemeConfig& cfg, const Potential& p,
                       StepStats* stats, Field* intermediate) {
  return ss2_generic(u, cfg, p, stats, intermediate, /*adjoint_first=*/true);
}

Field step_any(const Field& u, const SchemeConfig& cfg, const Potential& p, SpectralPlan* plan,
               StepStats* stats) {
  switch (cfg.scheme) {
    case SchemeId::ESS1: return step_ess1(u, cfg, p);
    case SchemeId::ESS1_ADJOINT: return step_ess1_adjoint(u, cfg, p, stats);
    case SchemeId::SS2: return step_ss2(u, cfg, p, stats);
    case SchemeId::SS2_ADJOINT: return step_ss2_adjoint(u, cfg, p, stats);
    case SchemeId::SSI1_BASELINE:
      if (!plan) throw std::invalid_argument("ssi1 step requires a spectral plan");
      return step_ssi1(u, cfg, p, *plan);
  }
  throw std::logic_error("unknown scheme id");
}

Trajectory simulate(const Field& u0, const SchemeConfig& cfg, const Potential& p,
                    const SimulateOptions& opts) {
  if (!(opts.t_end > 0.0)) throw std::invalid_argument("simulate: t_end must be positive");
  if (!(cfg.tau > 0.0)) throw std::invalid_argument("simulate: tau must be positive");
  if (sup_norm(u0) > p.beta + kDmpTol)
    throw std::invalid_argument("simulate: |u0| exceeds the bound beta");

  const std::int64_t n_steps = std::llround(opts.t_end / cfg.tau);
  const int diag_every = std::max(1, opts.diag_every);
  // SSI1's bound/dissipation flags are observational only; never abort on them.
  const bool strict = opts.strict && cfg.scheme != SchemeId::SSI1_BASELINE;

  std::unique_ptr<SpectralPlan> plan;
  if (cfg.scheme == SchemeId::SSI1_BASELINE) plan = std::make_unique<SpectralPlan>(u0.grid);

  Trajectory traj;
  traj.times.reserve(static_cast<std::size_t>(n_steps));
  traj.reports.reserve(static_cast<std::size_t>(n_steps / diag_every + 1));

  auto emit_snapshot = [&](const Field& f, double t, std::int64_t step) {
    if (opts.snapshot_sink) opts.snapshot_sink(f, t, step);
    if (opts.keep_snapshots) traj.snapshots.emplace_back(t, f);
  };
  if (opts.snapshot_every > 0) emit_snapshot(u0, 0.0, 0);

  Field u = u0;
  // With a diagnostics stride, energy_delta is taken against the last
  // reported energy.
  double prev_energy = discrete_energy(u0, p, cfg.epsilon);
  for (std::int64_t k = 1; k <= n_steps; ++k) {
    StepStats stats;
    const auto t0 = std::chrono::steady_clock::now();
    Field next = step_any(u, cfg, p, plan.get(), &stats);
    const auto t1 = std::chrono::steady_clock::now();
    const double t = static_cast<double>(k) * cfg.tau;
    traj.times.push_back(t);

    if (k % diag_every == 0 || k == n_steps) {
      StepContext ctx;
      ctx.step_index = k;
      ctx.time = t;
      ctx.epsilon = cfg.epsilon;
      ctx.wall_time_ns =
          std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count();
      ctx.solver_iterations_max = stats.newton_iterations_max;
      ctx.strict = strict;
      ctx.prev_energy = prev_energy;
      StepReport rep = monitor(u, next, p, ctx);
      prev_energy = rep.energy;
      traj.reports.push_back(rep);
    }
    if (opts.snapshot_every > 0 && (k % opts.snapshot_every == 0 || k == n_steps))
      emit_snapshot(next, t, k);
    u = std::move(next);
  }
  return traj;
}

} // namespace acsweep

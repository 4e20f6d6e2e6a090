#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "acsweep/diagnostics.hpp"
#include "acsweep/grid.hpp"
#include "acsweep/potential.hpp"
#include "acsweep/scalar_solver.hpp"

namespace acsweep {

enum class SchemeId { ESS1, ESS1_ADJOINT, SS2, SS2_ADJOINT, SSI1_BASELINE };

SchemeId parse_scheme(const std::string& token); // ess1 | ess1-adjoint | ss2 | ss2-adjoint | ssi1
std::string scheme_token(SchemeId s);
int scheme_nominal_order(SchemeId s);

struct SchemeConfig {
  SchemeId scheme = SchemeId::ESS1;
  double tau = 1e-3;
  double epsilon = 0.01;
  std::optional<double> kappa; // default: compute_kappa(potential)
  NewtonConfig newton;
  NonlinearSolver nonlinear_solver = NonlinearSolver::NEWTON;
  bool enforce_thresholds = true;

  double resolved_kappa(const Potential& p) const { return kappa ? *kappa : p.kappa_default; }
};

// Largest time step for which the scheme's bound/dissipation guarantees hold
// on this grid (+inf for the unconditional SSI1 baseline). The 2D bounds
// carry 2*eps^2 terms; the general form is dim*eps^2.
double max_stable_tau(SchemeId scheme, const Grid& grid, const Potential& p, double kappa,
                      double epsilon);

struct StepStats {
  int newton_iterations_max = 0;
  long long newton_iterations_total = 0;
  bool clamped = false;
};

// One scheme step u^n -> u^{n+1}. Negative tau is accepted when
// enforce_thresholds is off (used by the reversal identities).
Field step_ess1(const Field& u, const SchemeConfig& cfg, const Potential& p);
Field step_ess1_adjoint(const Field& u, const SchemeConfig& cfg, const Potential& p,
                        StepStats* stats = nullptr);
Field step_ss2(const Field& u, const SchemeConfig& cfg, const Potential& p,
               StepStats* stats = nullptr, Field* intermediate = nullptr);
Field step_ss2_adjoint(const Field& u, const SchemeConfig& cfg, const Potential& p,
                       StepStats* stats = nullptr, Field* intermediate = nullptr);

class SpectralPlan;

// Dispatch on cfg.scheme; the plan is required only for SSI1_BASELINE.
Field step_any(const Field& u, const SchemeConfig& cfg, const Potential& p,
               SpectralPlan* plan = nullptr, StepStats* stats = nullptr);

struct Trajectory {
  std::vector<double> times;
  std::vector<StepReport> reports;
  std::vector<std::pair<double, Field>> snapshots;
};

struct SimulateOptions {
  double t_end = 1.0;
  int snapshot_every = 0; // 0: no snapshots
  int diag_every = 1;     // energy/report stride
  bool strict = false;    // abort on violated monitor flags (sweep schemes only)
  bool keep_snapshots = false;
  std::function<void(const Field&, double time, std::int64_t step)> snapshot_sink;
};

// Marches round(t_end/tau) steps with per-step monitoring.
Trajectory simulate(const Field& u0, const SchemeConfig& cfg, const Potential& p,
                    const SimulateOptions& opts);

} // namespace acsweep

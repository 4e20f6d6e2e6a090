#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <stdexcept>
#include <vector>

#include "acsweep/grid.hpp"
#include "acsweep/potential.hpp"

namespace acsweep {

inline constexpr double kDmpTol = 1e-12;       // absolute slack on sup norm vs beta
inline constexpr double kEnergyRelTol = 1e-10; // relative slack on energy increase

// Discrete free energy E_h(v) = (eps^2/2) ||grad_h v||^2 + <F(v), 1>.
double discrete_energy(const Field& u, const Potential& p, double epsilon);

// ||v||_kappa^2 = (eps^2/2) ||grad_h v||^2 + kappa ||v||^2.
double kappa_norm(const Field& v, double epsilon, double kappa);

// Per-step diagnostics. `energy` is the post-step energy; energy_delta is
// post minus pre; the energy_decreasing flag uses the pre-step energy as the
// relative scale.
struct StepReport {
  std::int64_t step_index = 0;
  double time = 0.0;
  double energy = 0.0;
  double sup_norm = 0.0;
  double energy_delta = 0.0;
  bool dmp_ok = true;
  bool energy_decreasing = true;
  int solver_iterations_max = 0;
  std::int64_t wall_time_ns = 0;
};

struct MonitorViolation : std::runtime_error {
  StepReport report;
  MonitorViolation(const std::string& what, const StepReport& r)
      : std::runtime_error(what), report(r) {}
};

struct StepContext {
  std::int64_t step_index = 0;
  double time = 0.0;
  double epsilon = 0.0;
  std::int64_t wall_time_ns = 0;
  int solver_iterations_max = 0;
  bool strict = false;
  // pre-step energy if the caller already has it, else it is recomputed
  double prev_energy = std::numeric_limits<double>::quiet_NaN();
};

// Populates a StepReport from two consecutive states; raises MonitorViolation
// on a failed flag in strict mode.
StepReport monitor(const Field& prev, const Field& next, const Potential& p,
                   const StepContext& ctx);

// Comma-separated table, header:
// step,t,energy,sup_norm,energy_delta,dmp_ok,energy_decreasing,newton_iters_max,wall_ns
void write_diagnostics_header(std::ostream& os);
void write_diagnostics_row(std::ostream& os, const StepReport& r);

} // namespace acsweep

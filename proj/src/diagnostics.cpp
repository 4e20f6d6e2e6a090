#include "acsweep/diagnostics.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace acsweep {

double discrete_energy(const Field& u, const Potential& p, double epsilon) {
  double bulk = 0.0;
  with_nonlinearity(p, [&](auto nl) {
    for (double x : u.data) bulk += nl.F(x);
  });
  double hd = u.grid.spacing;
  if (u.grid.dim == 2) hd *= u.grid.spacing;
  return 0.5 * epsilon * epsilon * gradient_norm_sq(u) + hd * bulk;
}

double kappa_norm(const Field& v, double epsilon, double kappa) {
  const double nv = l2_norm(v);
  return std::sqrt(0.5 * epsilon * epsilon * gradient_norm_sq(v) + kappa * nv * nv);
}

StepReport monitor(const Field& prev, const Field& next, const Potential& p,
                   const StepContext& ctx) {
  StepReport r;
  r.step_index = ctx.step_index;
  r.time = ctx.time;
  r.wall_time_ns = ctx.wall_time_ns;
  r.solver_iterations_max = ctx.solver_iterations_max;

  const double e_prev = std::isnan(ctx.prev_energy) ? discrete_energy(prev, p, ctx.epsilon)
                                                    : ctx.prev_energy;
  r.energy = discrete_energy(next, p, ctx.epsilon);
  r.energy_delta = r.energy - e_prev;
  r.sup_norm = sup_norm(next);

  r.dmp_ok = std::isfinite(r.sup_norm) && r.sup_norm <= p.beta + kDmpTol;
  r.energy_decreasing = std::isfinite(r.energy) &&
                        r.energy_delta <= kEnergyRelTol * std::max(1.0, std::abs(e_prev));

  if (ctx.strict) {
    if (!r.dmp_ok)
      throw MonitorViolation("maximum bound violated at step " + std::to_string(r.step_index) +
                                 " (sup " + std::to_string(r.sup_norm) + " > beta " +
                                 std::to_string(p.beta) + ")",
                             r);
    if (!r.energy_decreasing)
      throw MonitorViolation("energy increase at step " + std::to_string(r.step_index) +
                                 " (delta " + std::to_string(r.energy_delta) + ")",
                             r);
  }
  return r;
}

static void append_double(std::ostream& os, double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  os << buf;
}

void write_diagnostics_header(std::ostream& os) {
  os << "step,t,energy,sup_norm,energy_delta,dmp_ok,energy_decreasing,newton_iters_max,wall_ns\n";
}

void write_diagnostics_row(std::ostream& os, const StepReport& r) {
  os << r.step_index << ',';
  append_double(os, r.time);
  os << ',';
  append_double(os, r.energy);
  os << ',';
  append_double(os, r.sup_norm);
  os << ',';
  append_double(os, r.energy_delta);
  os << ',' << (r.dmp_ok ? 1 : 0) << ',' << (r.energy_decreasing ? 1 : 0) << ','
     << r.solver_iterations_max << ',' << r.wall_time_ns << '\n';
}

} // namespace acsweep

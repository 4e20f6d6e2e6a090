#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "acsweep/grid.hpp"
#include "acsweep/potential.hpp"
#include "acsweep/scheme.hpp"

namespace acsweep {

// u0(x, y) = 0.1 sin(2 pi x) sin(2 pi y), sampled at the nodes (2D only).
Field ic_sinesine(const Grid& grid);

// Eight-circles start on (0, 2pi)^2: u0 = -0.2 + 0.2 sum_i g(dist_i - r_i)
// with the bump g(s) = 2 exp(-eps^2/s^2) for s < 0, else 0.
Field ic_eight_circles(const Grid& grid, double epsilon);

// Deterministic uniform field in [-amplitude, amplitude]; the generator maps
// mt19937_64 output bits directly so fields are reproducible across standard
// libraries.
Field ic_random(const Grid& grid, double amplitude, std::uint64_t seed);

using InitialCondition = std::function<Field(const Grid&)>;

// Pairwise log2(e_k / e_{k+1}), assuming halved control values.
std::vector<double> estimate_order(const std::vector<double>& errors);

struct RefinementResult {
  std::vector<double> control_values; // tau or h, executed cells
  std::vector<double> errors;         // discrete L2 at final time
  std::vector<double> orders;         // one fewer entry than errors
  std::vector<double> skipped;        // control values excluded as unstable
  double mean_order() const;
};

struct StudyOptions {
  std::optional<double> kappa;
  NonlinearSolver solver = NonlinearSolver::NEWTON;
  bool allow_unstable = false;
  bool parallel = true;             // run independent cells concurrently
  std::string cache_dir;            // reference cache location ("" = no cache)
};

// March u0 to t_end with diagnostics off; plain driver for study cells.
Field integrate(const Field& u0, const SchemeConfig& cfg, const Potential& p, double t_end);

// Reference solution for refinement studies (SS2 at a small step), cached in
// the snapshot format when opts.cache_dir is set; a cache hit is bit-exact.
Field build_reference(const Potential& p, const Grid& grid, double epsilon, double tau_ref,
                      double t_end, const InitialCondition& ic, const StudyOptions& opts = {});

RefinementResult temporal_refinement(SchemeId scheme, const Potential& p, const Grid& grid,
                                     double epsilon, const std::vector<double>& taus,
                                     double t_end, const Field& reference,
                                     const InitialCondition& ic, const StudyOptions& opts = {});

// Errors against a fine-grid reference restricted to shared nodes; Ms must
// nest into the reference grid (power-of-two ratios).
RefinementResult spatial_refinement(SchemeId scheme, const Potential& p, double L,
                                    double epsilon, double t_end, double tau_fixed,
                                    const std::vector<int>& Ms, int M_ref,
                                    const InitialCondition& ic, const StudyOptions& opts = {});

// Restriction of a fine-grid field to a coarser nested grid (shared nodes).
Field restrict_to_coarse(const Field& fine, const Grid& coarse);

struct BenchResult {
  std::vector<int> sizes;                            // M per cell
  std::map<SchemeId, std::vector<double>> per_step_ns; // median wall time per step
  std::map<SchemeId, double> fitted_exponent;          // slope of log t vs log M^dim
};

// Median per-step wall times with diagnostics disabled; each cell runs 2
// warmup steps, then steps_per_cell timed steps (>= 5). The solver choice
// applies to the implicit sweeps (newton vs cardano timing comparisons).
BenchResult bench_per_step(const std::vector<SchemeId>& schemes, const std::vector<int>& Ms,
                           const Potential& p, int steps_per_cell, int dim = 2,
                           double epsilon = 0.01, double L = 1.0,
                           NonlinearSolver solver = NonlinearSolver::NEWTON);

void write_refinement_csv(std::ostream& os, const RefinementResult& r,
                          const std::string& control_name);
void write_bench_csv(std::ostream& os, const BenchResult& r);

} // namespace acsweep

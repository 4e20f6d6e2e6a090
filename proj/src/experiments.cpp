#include "acsweep/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <future>
#include <limits>
#include <memory>
#include <numbers>
#include <ostream>
#include <random>
#include <stdexcept>

#include "acsweep/snapshot.hpp"
#include "acsweep/spectral.hpp"

namespace acsweep {

namespace {
constexpr double kPi = std::numbers::pi;
} // namespace

Field ic_sinesine(const Grid& grid) {
  if (grid.dim != 2) throw std::invalid_argument("ic_sinesine requires a 2D grid");
  Field f(grid);
  const int M = grid.points;
  for (int i = 0; i < M; ++i) {
    const double si = std::sin(2.0 * kPi * grid.node(i));
    for (int j = 0; j < M; ++j)
      f(i, j) = 0.1 * si * std::sin(2.0 * kPi * grid.node(j));
  }
  return f;
}

Field ic_eight_circles(const Grid& grid, double epsilon) {
  if (grid.dim != 2) throw std::invalid_argument("ic_eight_circles requires a 2D grid");
  if (std::abs(grid.length - 2.0 * kPi) > 1e-12)
    throw std::invalid_argument("ic_eight_circles requires domain length 2*pi");
  struct Circle { double x, y, r; };
  static const Circle circles[8] = {
      {kPi / 2, kPi / 2, kPi / 5},     {kPi / 4, 3 * kPi / 4, kPi / 10},
      {kPi / 2, 5 * kPi / 4, kPi / 10}, {kPi, kPi / 4, kPi / 8},
      {49 * kPi / 40, kPi / 4, kPi / 8}, {kPi, kPi, kPi / 4},
      {3 * kPi / 2, 3 * kPi / 2, kPi / 4}, {5.0, 3.0, 2 * kPi / 15}};
  const double eps2 = epsilon * epsilon;
  auto bump = [&](double s) { return s < 0.0 ? 2.0 * std::exp(-eps2 / (s * s)) : 0.0; };
  Field f(grid);
  const int M = grid.points;
  for (int i = 0; i < M; ++i) {
    const double x = grid.node(i);
    for (int j = 0; j < M; ++j) {
      const double y = grid.node(j);
      double v = -0.2;
      for (const Circle& c : circles) {
        const double dist = std::hypot(x - c.x, y - c.y);
        v += 0.2 * bump(dist - c.r);
      }
      f(i, j) = v;
    }
  }
  return f;
}

Field ic_random(const Grid& grid, double amplitude, std::uint64_t seed) {
  Field f(grid);
  std::mt19937_64 rng(seed);
  for (double& x : f.data) {
    const double u = static_cast<double>(rng() >> 11) * 0x1p-53; // [0, 1)
    x = amplitude * (2.0 * u - 1.0);
  }
  return f;
}

std::vector<double> estimate_order(const std::vector<double>& errors) {
  if (errors.size() < 2) throw std::invalid_argument("estimate_order needs at least 2 errors");
  std::vector<double> orders;
  orders.reserve(errors.size() - 1);
  for (std::size_t k = 0; k + 1 < errors.size(); ++k) {
    if (!(errors[k] > 0.0) || !(errors[k + 1] > 0.0))
      throw std::invalid_argument("estimate_order requires positive errors");
    orders.push_back(std::log2(errors[k] / errors[k + 1]));
  }
  return orders;
}

double RefinementResult::mean_order() const {
  if (orders.empty()) return 0.0;
  double s = 0.0;
  for (double o : orders) s += o;
  return s / static_cast<double>(orders.size());
}

Field integrate(const Field& u0, const SchemeConfig& cfg, const Potential& p, double t_end) {
  const std::int64_t n_steps = std::llround(t_end / cfg.tau);
  std::unique_ptr<SpectralPlan> plan;
  if (cfg.scheme == SchemeId::SSI1_BASELINE) plan = std::make_unique<SpectralPlan>(u0.grid);
  Field u = u0;
  for (std::int64_t k = 0; k < n_steps; ++k) u = step_any(u, cfg, p, plan.get());
  return u;
}

namespace {

std::string sanitize_for_filename(std::string s) {
  for (char& c : s)
    if (c == ':' || c == ',') c = '_';
  return s;
}

std::string reference_cache_base(const Potential& p, const Grid& g, double epsilon,
                                 double tau_ref, double t_end, const std::string& dir) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "ref_%s_d%d_M%d_L%.17g_eps%.17g_tau%.17g_T%.17g",
                sanitize_for_filename(p.token()).c_str(), g.dim, g.points, g.length, epsilon,
                tau_ref, t_end);
  return (std::filesystem::path(dir) / buf).string();
}

SchemeConfig study_config(SchemeId scheme, const Potential&, double epsilon, double tau,
                          const StudyOptions& opts) {
  SchemeConfig cfg;
  cfg.scheme = scheme;
  cfg.tau = tau;
  cfg.epsilon = epsilon;
  cfg.kappa = opts.kappa;
  cfg.nonlinear_solver = opts.solver;
  cfg.enforce_thresholds = !opts.allow_unstable;
  return cfg;
}

} // namespace

Field build_reference(const Potential& p, const Grid& grid, double epsilon, double tau_ref,
                      double t_end, const InitialCondition& ic, const StudyOptions& opts) {
  std::string base;
  if (!opts.cache_dir.empty()) {
    std::filesystem::create_directories(opts.cache_dir);
    base = reference_cache_base(p, grid, epsilon, tau_ref, t_end, opts.cache_dir);
    if (snapshot_exists(base)) {
      SnapshotMeta meta;
      Field f = load_snapshot(base, &meta);
      if (f.grid == grid) return f;
    }
  }
  SchemeConfig cfg = study_config(SchemeId::SS2, p, epsilon, tau_ref, opts);
  Field ref = integrate(ic(grid), cfg, p, t_end);
  if (!base.empty()) {
    SnapshotMeta meta;
    meta.dim = grid.dim;
    meta.M = grid.points;
    meta.L = grid.length;
    meta.time = t_end;
    meta.scheme = scheme_token(SchemeId::SS2);
    meta.potential = p.token();
    save_snapshot(base, ref, meta);
  }
  return ref;
}

namespace {

// Runs one study cell per entry of `jobs`, optionally concurrently. Cells are
// pure; exceptions propagate from get().
template <class Job>
std::vector<double> run_cells(const std::vector<Job>& jobs, bool parallel) {
  std::vector<double> out(jobs.size());
  if (parallel && jobs.size() > 1) {
    std::vector<std::future<double>> futs;
    futs.reserve(jobs.size());
    for (const Job& j : jobs) futs.push_back(std::async(std::launch::async, j));
    for (std::size_t k = 0; k < futs.size(); ++k) out[k] = futs[k].get();
  } else {
    for (std::size_t k = 0; k < jobs.size(); ++k) out[k] = jobs[k]();
  }
  return out;
}

} // namespace

RefinementResult temporal_refinement(SchemeId scheme, const Potential& p, const Grid& grid,
                                     double epsilon, const std::vector<double>& taus,
                                     double t_end, const Field& reference,
                                     const InitialCondition& ic, const StudyOptions& opts) {
  if (!(reference.grid == grid))
    throw std::invalid_argument("temporal_refinement: reference grid mismatch");
  const double kappa = opts.kappa.value_or(p.kappa_default);
  const double bound = max_stable_tau(scheme, grid, p, kappa, epsilon);

  RefinementResult res;
  std::vector<std::function<double()>> jobs;
  for (double tau : taus) {
    if (!opts.allow_unstable && tau > bound * (1.0 + 1e-12)) {
      res.skipped.push_back(tau);
      continue;
    }
    res.control_values.push_back(tau);
    jobs.push_back([=, &p, &reference, &ic]() {
      SchemeConfig cfg = study_config(scheme, p, epsilon, tau, opts);
      const Field u = integrate(ic(grid), cfg, p, t_end);
      return l2_norm(u - reference);
    });
  }
  res.errors = run_cells(jobs, opts.parallel);
  if (res.errors.size() >= 2 &&
      std::all_of(res.errors.begin(), res.errors.end(), [](double e) { return e > 0.0; }))
    res.orders = estimate_order(res.errors);
  return res;
}

Field restrict_to_coarse(const Field& fine, const Grid& coarse) {
  const int Mf = fine.grid.points, Mc = coarse.points;
  if (Mf % Mc != 0 || fine.grid.dim != coarse.dim ||
      std::abs(fine.grid.length - coarse.length) > 1e-12)
    throw std::invalid_argument("restrict_to_coarse: grids do not nest");
  const int stride = Mf / Mc;
  Field out(coarse);
  if (coarse.dim == 1) {
    for (int i = 0; i < Mc; ++i) out(i) = fine(i * stride);
    return out;
  }
  for (int i = 0; i < Mc; ++i)
    for (int j = 0; j < Mc; ++j) out(i, j) = fine(i * stride, j * stride);
  return out;
}

RefinementResult spatial_refinement(SchemeId scheme, const Potential& p, double L,
                                    double epsilon, double t_end, double tau_fixed,
                                    const std::vector<int>& Ms, int M_ref,
                                    const InitialCondition& ic, const StudyOptions& opts) {
  for (int M : Ms) {
    if (M_ref % M != 0)
      throw std::invalid_argument("spatial_refinement: M=" + std::to_string(M) +
                                  " does not nest into the reference grid");
  }
  const Grid ref_grid(2, M_ref, L);
  const double kappa = opts.kappa.value_or(p.kappa_default);
  // finest grid is the most restrictive
  const double bound = max_stable_tau(scheme, ref_grid, p, kappa, epsilon);
  if (!opts.allow_unstable && tau_fixed > bound * (1.0 + 1e-12))
    throw std::invalid_argument("spatial_refinement: tau exceeds the finest-grid threshold");

  SchemeConfig ref_cfg = study_config(scheme, p, epsilon, tau_fixed, opts);
  const Field reference = integrate(ic(ref_grid), ref_cfg, p, t_end);

  RefinementResult res;
  std::vector<std::function<double()>> jobs;
  for (int M : Ms) {
    res.control_values.push_back(L / M);
    jobs.push_back([=, &p, &reference]() {
      const Grid g(2, M, L);
      SchemeConfig cfg = study_config(scheme, p, epsilon, tau_fixed, opts);
      const Field u = integrate(ic(g), cfg, p, t_end);
      return l2_norm(u - restrict_to_coarse(reference, g));
    });
  }
  res.errors = run_cells(jobs, opts.parallel);
  if (res.errors.size() >= 2 &&
      std::all_of(res.errors.begin(), res.errors.end(), [](double e) { return e > 0.0; }))
    res.orders = estimate_order(res.errors);
  return res;
}

BenchResult bench_per_step(const std::vector<SchemeId>& schemes, const std::vector<int>& Ms,
                           const Potential& p, int steps_per_cell, int dim, double epsilon,
                           double L, NonlinearSolver solver) {
  if (steps_per_cell < 5) throw std::invalid_argument("bench_per_step: need >= 5 steps per cell");
  BenchResult res;
  res.sizes = Ms;
  for (SchemeId scheme : schemes) {
    std::vector<double> medians;
    for (int M : Ms) {
      const Grid grid(dim, M, L);
      SchemeConfig cfg;
      cfg.scheme = scheme;
      cfg.epsilon = epsilon;
      cfg.nonlinear_solver = solver;
      const double bound = max_stable_tau(scheme, grid, p, p.kappa_default, epsilon);
      cfg.tau = std::isfinite(bound) ? 0.5 * bound : 1e-2;
      if (solver == NonlinearSolver::CARDANO)
        cfg.tau = std::min(cfg.tau, 0.5 / (1.0 + p.kappa_default));
      std::unique_ptr<SpectralPlan> plan;
      if (scheme == SchemeId::SSI1_BASELINE) plan = std::make_unique<SpectralPlan>(grid);

      Field u = ic_random(grid, 0.5 * p.beta, 12345);
      for (int w = 0; w < 2; ++w) u = step_any(u, cfg, p, plan.get());
      std::vector<double> times_ns;
      times_ns.reserve(static_cast<std::size_t>(steps_per_cell));
      for (int s = 0; s < steps_per_cell; ++s) {
        const auto t0 = std::chrono::steady_clock::now();
        u = step_any(u, cfg, p, plan.get());
        const auto t1 = std::chrono::steady_clock::now();
        times_ns.push_back(static_cast<double>(
            std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count()));
      }
      std::nth_element(times_ns.begin(), times_ns.begin() + times_ns.size() / 2, times_ns.end());
      medians.push_back(times_ns[times_ns.size() / 2]);
    }
    // least-squares slope of log(time) vs log(M^dim)
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int n = static_cast<int>(Ms.size());
    for (int k = 0; k < n; ++k) {
      const double x = std::log(std::pow(static_cast<double>(Ms[k]), dim));
      const double y = std::log(medians[static_cast<std::size_t>(k)]);
      sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    const double denom = n * sxx - sx * sx;
    res.fitted_exponent[scheme] = denom != 0.0 ? (n * sxy - sx * sy) / denom
                                               : std::numeric_limits<double>::quiet_NaN();
    res.per_step_ns[scheme] = std::move(medians);
  }
  return res;
}

namespace {
void append_double(std::ostream& os, double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  os << buf;
}
} // namespace

void write_refinement_csv(std::ostream& os, const RefinementResult& r,
                          const std::string& control_name) {
  os << control_name << ",error,order\n";
  for (std::size_t k = 0; k < r.control_values.size(); ++k) {
    append_double(os, r.control_values[k]);
    os << ',';
    append_double(os, r.errors[k]);
    os << ',';
    if (k == 0 || k - 1 >= r.orders.size())
      os << "nan";
    else
      append_double(os, r.orders[k - 1]);
    os << '\n';
  }
}

void write_bench_csv(std::ostream& os, const BenchResult& r) {
  os << "M,scheme,ns_per_step\n";
  for (const auto& [scheme, times] : r.per_step_ns)
    for (std::size_t k = 0; k < times.size(); ++k) {
      os << r.sizes[k] << ',' << scheme_token(scheme) << ',';
      append_double(os, times[k]);
      os << '\n';
    }
  for (const auto& [scheme, expo] : r.fitted_exponent) {
    os << "# fitted_exponent," << scheme_token(scheme) << ',';
    append_double(os, expo);
    os << '\n';
  }
}

} // namespace acsweep

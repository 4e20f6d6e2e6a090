#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace acsweep {

enum class InitialGuess { PREVIOUS_VALUE, ZERO };
enum class NonlinearSolver { NEWTON, CARDANO };

struct NewtonConfig {
  double tol = 1e-12;
  int max_iter = 50;
  InitialGuess initial_guess = InitialGuess::PREVIOUS_VALUE;
};

struct SolveStats {
  int iterations = 0;
  double final_residual = 0.0;
  bool clamped = false;
};

struct SolverError : std::runtime_error {
  double last_residual;
  SolverError(const std::string& what, double residual)
      : std::runtime_error(what), last_residual(residual) {}
};

// Damped-free Newton iteration with interval clamping. Iterates leaving
// [lo, hi] are pulled back to the boundary; the scheme theory guarantees a
// unique in-interval root, so clamping cannot lose it. Residual test is
// absolute, checked before the first iteration.
template <class R, class DR>
double newton_scalar(R&& residual, DR&& derivative, double xi0, double lo, double hi,
                     const NewtonConfig& cfg, SolveStats* stats = nullptr) {
  double x = std::min(std::max(xi0, lo), hi);
  bool clamped = false;
  double r = residual(x);
  int it = 0;
  while (std::abs(r) > cfg.tol) {
    if (it >= cfg.max_iter || !std::isfinite(r))
      throw SolverError("newton_scalar: no convergence after " + std::to_string(it) +
                            " iterations (residual " + std::to_string(r) + ")",
                        r);
    const double d = derivative(x);
    if (d == 0.0 || !std::isfinite(d))
      throw SolverError("newton_scalar: vanishing derivative", r);
    x -= r / d;
    if (x < lo) { x = lo; clamped = true; }
    if (x > hi) { x = hi; clamped = true; }
    r = residual(x);
    ++it;
  }
  if (stats) {
    stats->iterations = it;
    stats->final_residual = std::abs(r);
    stats->clamped = clamped;
  }
  return x;
}

// Real root of the depressed cubic xi^3 + p*xi + q = 0 in the positive
// discriminant regime (guaranteed for p > 0, where the root is unique).
double cardano_real_root(double p, double q);

} // namespace acsweep

#pragma once

#include <cstddef>

#include "acsweep/scalar_solver.hpp"

namespace acsweep::detail {

struct SweepStats {
  int max_iterations = 0;
  long long total_iterations = 0;
  bool clamped = false;
};

// Forward (increasing lexicographic) stabilized Saul'yev sweep, in place.
// The sweep order guarantees that every position read at the old time level
// has not been overwritten yet, wraps included, so one buffer carries both
// levels. r = eps^2/h^2; diagonal factors are 1 + tau*(kappa +- dim*r) and
// each of the 2*dim neighbors carries tau*r.
template <class Nl>
void ess1_sweep(double* u, int dim, int M, double tau, double r, double kappa, Nl nl) {
  const double c_old = 1.0 + tau * (kappa - dim * r);
  const double c_nb = tau * r;
  const double inv_den = 1.0 / (1.0 + tau * (kappa + dim * r));
  if (dim == 1) {
    for (int i = 0; i < M; ++i) {
      const double nb = u[i == 0 ? M - 1 : i - 1] + u[i == M - 1 ? 0 : i + 1];
      u[i] = (c_old * u[i] + tau * nl.f(u[i]) + c_nb * nb) * inv_den;
    }
    return;
  }
  for (int i = 0; i < M; ++i) {
    double* row = u + static_cast<std::size_t>(i) * M;
    const double* row_up = u + static_cast<std::size_t>(i == 0 ? M - 1 : i - 1) * M;
    const double* row_dn = u + static_cast<std::size_t>(i == M - 1 ? 0 : i + 1) * M;
    {
      const double nb = row_up[0] + row_dn[0] + row[M - 1] + row[1];
      row[0] = (c_old * row[0] + tau * nl.f(row[0]) + c_nb * nb) * inv_den;
    }
    for (int j = 1; j < M - 1; ++j) {
      const double nb = row_up[j] + row_dn[j] + row[j - 1] + row[j + 1];
      row[j] = (c_old * row[j] + tau * nl.f(row[j]) + c_nb * nb) * inv_den;
    }
    {
      const double nb = row_up[M - 1] + row_dn[M - 1] + row[M - 2] + row[0];
      row[M - 1] = (c_old * row[M - 1] + tau * nl.f(row[M - 1]) + c_nb * nb) * inv_den;
    }
  }
}

// Backward (decreasing lexicographic) adjoint sweep, in place. At each point
// the scalar equation
//   (-1 + tau*(kappa - dim*r)) xi + tau f(xi) + eta = 0
// is solved for xi = u^{n+1}_ij, where eta gathers the old value with factor
// 1 - tau*(kappa + dim*r) and the 2*dim mixed-level neighbors with tau*r.
// Already-updated neighbors (ahead in decreasing order, wraps included) enter
// at the new level; the rest at the old level.
template <class Nl>
SweepStats ess1_adjoint_sweep(double* u, int dim, int M, double tau, double r, double kappa,
                              Nl nl, NonlinearSolver solver, const NewtonConfig& ncfg,
                              double beta) {
  SweepStats stats;
  const double a = -1.0 + tau * (kappa - dim * r);
  const double c_old = 1.0 - tau * (kappa + dim * r);
  const double c_nb = tau * r;
  const double inv_tau = 1.0 / tau;
  const double p_cubic = inv_tau - kappa + dim * r - 1.0; // POLY reduction xi^3 + p xi + q = 0
  if (solver == NonlinearSolver::CARDANO && !(p_cubic > 0.0))
    throw std::invalid_argument(
        "cardano solve requires tau <= 1/(1+kappa) (unique-real-root regime)");

  auto solve_point = [&](double eta, double xi0) -> double {
    if (solver == NonlinearSolver::CARDANO) return cardano_real_root(p_cubic, -eta * inv_tau);
    SolveStats st;
    const double root = newton_scalar(
        [&](double x) { return a * x + tau * nl.f(x) + eta; },
        [&](double x) { return a + tau * nl.fp(x); }, xi0, -beta, beta, ncfg, &st);
    if (st.iterations > stats.max_iterations) stats.max_iterations = st.iterations;
    stats.total_iterations += st.iterations;
    stats.clamped = stats.clamped || st.clamped;
    return root;
  };
  auto guess = [&](double prev) { return ncfg.initial_guess == InitialGuess::ZERO ? 0.0 : prev; };

  if (dim == 1) {
    for (int i = M - 1; i >= 0; --i) {
      const double nb = u[i == 0 ? M - 1 : i - 1] + u[i == M - 1 ? 0 : i + 1];
      u[i] = solve_point(c_old * u[i] + c_nb * nb, guess(u[i]));
    }
    return stats;
  }
  for (int i = M - 1; i >= 0; --i) {
    double* row = u + static_cast<std::size_t>(i) * M;
    const double* row_up = u + static_cast<std::size_t>(i == 0 ? M - 1 : i - 1) * M;
    const double* row_dn = u + static_cast<std::size_t>(i == M - 1 ? 0 : i + 1) * M;
    {
      const double nb = row_up[M - 1] + row_dn[M - 1] + row[M - 2] + row[0];
      row[M - 1] = solve_point(c_old * row[M - 1] + c_nb * nb, guess(row[M - 1]));
    }
    for (int j = M - 2; j >= 1; --j) {
      const double nb = row_up[j] + row_dn[j] + row[j - 1] + row[j + 1];
      row[j] = solve_point(c_old * row[j] + c_nb * nb, guess(row[j]));
    }
    {
      const double nb = row_up[0] + row_dn[0] + row[M - 1] + row[1];
      row[0] = solve_point(c_old * row[0] + c_nb * nb, guess(row[0]));
    }
  }
  return stats;
}

} // namespace acsweep::detail

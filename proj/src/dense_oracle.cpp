#include "acsweep/dense_oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace acsweep {

namespace {

// 1D split matrices as displayed: D_a has -1 on the diagonal, +1 on the
// superdiagonal and +1 at (0, M-1); D_b has -1 on the diagonal, +1 on the
// subdiagonal and +1 at (M-1, 0). Entries accumulate so M=2 degeneracies
// stay consistent with D_a + D_b = D_h.
std::vector<double> split_1d(int M, double inv_h2, SplitPart part) {
  std::vector<double> D(static_cast<std::size_t>(M) * M, 0.0);
  auto at = [&](int r, int c) -> double& { return D[static_cast<std::size_t>(r) * M + c]; };
  for (int i = 0; i < M; ++i) at(i, i) -= inv_h2;
  if (part == SplitPart::A) {
    for (int i = 0; i + 1 < M; ++i) at(i, i + 1) += inv_h2;
    at(0, M - 1) += inv_h2;
  } else {
    for (int i = 1; i < M; ++i) at(i, i - 1) += inv_h2;
    at(M - 1, 0) += inv_h2;
  }
  return D;
}

} // namespace

std::vector<double> dense_split_matrix(const Grid& grid, SplitPart part) {
  const int M = grid.points;
  const double inv_h2 = 1.0 / (grid.spacing * grid.spacing);
  const std::vector<double> D = split_1d(M, inv_h2, part);
  if (grid.dim == 1) return D;
  // vec(D u + u D^T) = (D (x) I + I (x) D) vec(u) for row-major vec
  const std::int64_t N = grid.size();
  std::vector<double> A(static_cast<std::size_t>(N) * N, 0.0);
  auto at = [&](std::int64_t r, std::int64_t c) -> double& {
    return A[static_cast<std::size_t>(r) * N + c];
  };
  for (int i = 0; i < M; ++i)
    for (int k = 0; k < M; ++k) {
      const double dik = D[static_cast<std::size_t>(i) * M + k];
      if (dik == 0.0) continue;
      for (int j = 0; j < M; ++j) at(std::int64_t(i) * M + j, std::int64_t(k) * M + j) += dik;
    }
  for (int i = 0; i < M; ++i)
    for (int j = 0; j < M; ++j)
      for (int l = 0; l < M; ++l) {
        const double djl = D[static_cast<std::size_t>(j) * M + l];
        if (djl != 0.0) at(std::int64_t(i) * M + j, std::int64_t(i) * M + l) += djl;
      }
  return A;
}

Field dense_triangular_oracle(const Field& u, const SchemeConfig& cfg, const Potential& p,
                              OraclePart part) {
  const std::int64_t N = u.grid.size();
  if (N > 4096) throw std::invalid_argument("dense_triangular_oracle: grid too large");
  const double eps2 = cfg.epsilon * cfg.epsilon;
  const double kappa = cfg.resolved_kappa(p);
  const double inv_tau = 1.0 / cfg.tau;

  Field out(u.grid);
  if (part == OraclePart::ESS1) {
    // ((1/tau + kappa) I - eps^2 A_b) u+ = u/tau + eps^2 A_a u + f(u) + kappa u
    const std::vector<double> Aa = dense_split_matrix(u.grid, SplitPart::A);
    const std::vector<double> Ab = dense_split_matrix(u.grid, SplitPart::B);
    std::vector<double> rhs(static_cast<std::size_t>(N));
    for (std::int64_t g = 0; g < N; ++g) {
      double s = (inv_tau + kappa) * u.data[g] + f_eval(p, u.data[g]);
      for (std::int64_t c = 0; c < N; ++c)
        s += eps2 * Aa[static_cast<std::size_t>(g) * N + c] * u.data[c];
      rhs[g] = s;
    }
    for (std::int64_t g = 0; g < N; ++g) {
      double s = rhs[g];
      for (std::int64_t c = 0; c < g; ++c)
        s += eps2 * Ab[static_cast<std::size_t>(g) * N + c] * out.data[c];
      out.data[g] = s / (inv_tau + kappa - eps2 * Ab[static_cast<std::size_t>(g) * N + g]);
    }
    return out;
  }

  // (1/tau - kappa) x - eps^2 A_a x - f(x) = u/tau + eps^2 A_b u - kappa u,
  // solved point-by-point in decreasing order; A_a is upper triangular so
  // off-diagonal reads hit already-solved entries. Bisection on [-beta, beta].
  const std::vector<double> Aa = dense_split_matrix(u.grid, SplitPart::A);
  const std::vector<double> Ab = dense_split_matrix(u.grid, SplitPart::B);
  std::vector<double> rhs(static_cast<std::size_t>(N));
  for (std::int64_t g = 0; g < N; ++g) {
    double s = (inv_tau - kappa) * u.data[g];
    for (std::int64_t c = 0; c < N; ++c)
      s += eps2 * Ab[static_cast<std::size_t>(g) * N + c] * u.data[c];
    rhs[g] = s;
  }
  for (std::int64_t g = N - 1; g >= 0; --g) {
    double w = rhs[g];
    for (std::int64_t c = g + 1; c < N; ++c)
      w += eps2 * Aa[static_cast<std::size_t>(g) * N + c] * out.data[c];
    const double diag = inv_tau - kappa - eps2 * Aa[static_cast<std::size_t>(g) * N + g];
    auto phi = [&](double xi) { return diag * xi - f_eval(p, xi) - w; };
    double lo = -p.beta, hi = p.beta;
    double flo = phi(lo), fhi = phi(hi);
    if (flo == 0.0) { out.data[g] = lo; continue; }
    if (fhi == 0.0) { out.data[g] = hi; continue; }
    if (flo * fhi > 0.0)
      throw std::runtime_error("dense_triangular_oracle: no sign change in [-beta, beta]");
    // refine to full double precision
    while (true) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      const double fm = phi(mid);
      if (fm == 0.0) { lo = hi = mid; break; }
      if ((fm > 0.0) == (fhi > 0.0)) { hi = mid; fhi = fm; }
      else { lo = mid; flo = fm; }
    }
    out.data[g] = 0.5 * (lo + hi);
  }
  return out;
}

} // namespace acsweep

#include "acsweep/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace acsweep {

namespace {
// FFTW plan creation is not thread-safe.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
} // namespace

struct SpectralPlan::Impl {
  Grid grid;
  std::vector<double> eigenvalues; // full M^dim grid
  int n_complex = 0;               // r2c layout size
  double* real_buf = nullptr;
  fftw_complex* cplx_buf = nullptr;
  fftw_plan fwd = nullptr;
  fftw_plan inv = nullptr;

  explicit Impl(const Grid& g) : grid(g) {
    const int M = g.points;
    const std::int64_t n = g.size();
    eigenvalues.resize(static_cast<std::size_t>(n));
    const double h2 = g.spacing * g.spacing;
    auto axis_eig = [&](int k) {
      return (2.0 * std::cos(2.0 * std::numbers::pi * k / M) - 2.0) / h2;
    };
    if (g.dim == 1) {
      for (int k = 0; k < M; ++k) eigenvalues[k] = axis_eig(k);
      n_complex = M / 2 + 1;
    } else {
      for (int k1 = 0; k1 < M; ++k1)
        for (int k2 = 0; k2 < M; ++k2)
          eigenvalues[static_cast<std::size_t>(k1) * M + k2] = axis_eig(k1) + axis_eig(k2);
      n_complex = M * (M / 2 + 1);
    }
    real_buf = fftw_alloc_real(static_cast<std::size_t>(n));
    cplx_buf = fftw_alloc_complex(static_cast<std::size_t>(n_complex));
    std::lock_guard<std::mutex> lock(planner_mutex());
    if (g.dim == 1) {
      fwd = fftw_plan_dft_r2c_1d(M, real_buf, cplx_buf, FFTW_ESTIMATE);
      inv = fftw_plan_dft_c2r_1d(M, cplx_buf, real_buf, FFTW_ESTIMATE);
    } else {
      fwd = fftw_plan_dft_r2c_2d(M, M, real_buf, cplx_buf, FFTW_ESTIMATE);
      inv = fftw_plan_dft_c2r_2d(M, M, cplx_buf, real_buf, FFTW_ESTIMATE);
    }
    if (!fwd || !inv) throw std::runtime_error("fftw plan creation failed");
  }
  ~Impl() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    if (fwd) fftw_destroy_plan(fwd);
    if (inv) fftw_destroy_plan(inv);
    fftw_free(real_buf);
    fftw_free(cplx_buf);
  }

  // multiply mode (k1,k2) by factor(lambda) in r2c layout, then inverse
  template <class Factor>
  void apply_diagonal(Factor&& factor) {
    const int M = grid.points;
    const int half = M / 2 + 1;
    if (grid.dim == 1) {
      for (int k = 0; k < half; ++k) {
        const double fac = factor(eigenvalues[k]);
        cplx_buf[k][0] *= fac;
        cplx_buf[k][1] *= fac;
      }
      return;
    }
    for (int k1 = 0; k1 < M; ++k1)
      for (int k2 = 0; k2 < half; ++k2) {
        const double fac = factor(eigenvalues[static_cast<std::size_t>(k1) * M + k2]);
        auto& c = cplx_buf[static_cast<std::size_t>(k1) * half + k2];
        c[0] *= fac;
        c[1] *= fac;
      }
  }
};

SpectralPlan::SpectralPlan(const Grid& grid) : impl_(std::make_unique<Impl>(grid)) {}
SpectralPlan::~SpectralPlan() = default;
SpectralPlan::SpectralPlan(SpectralPlan&&) noexcept = default;
SpectralPlan& SpectralPlan::operator=(SpectralPlan&&) noexcept = default;

const Grid& SpectralPlan::grid() const { return impl_->grid; }
const std::vector<double>& SpectralPlan::eigenvalues() const { return impl_->eigenvalues; }

Field SpectralPlan::roundtrip(const Field& f) {
  auto& im = *impl_;
  if (!(f.grid == im.grid)) throw std::invalid_argument("field grid does not match the plan");
  const double scale = 1.0 / static_cast<double>(im.grid.size());
  std::copy(f.data.begin(), f.data.end(), im.real_buf);
  fftw_execute(im.fwd);
  fftw_execute(im.inv);
  Field out(f.grid);
  for (std::size_t k = 0; k < out.data.size(); ++k) out.data[k] = im.real_buf[k] * scale;
  return out;
}

Field step_ssi1(const Field& u, const SchemeConfig& cfg, const Potential& p, SpectralPlan& plan) {
  auto& im = plan.impl();
  if (!(u.grid == im.grid)) throw std::invalid_argument("field grid does not match the plan");
  const double kappa = cfg.resolved_kappa(p);
  const double inv_tau = 1.0 / cfg.tau;
  const double eps2 = cfg.epsilon * cfg.epsilon;
  const double scale = 1.0 / static_cast<double>(im.grid.size());

  // (1/tau + kappa) u^n + f(u^n), transformed and divided by the implicit factor
  with_nonlinearity(p, [&](auto nl) {
    for (std::size_t k = 0; k < u.data.size(); ++k)
      im.real_buf[k] = (inv_tau + kappa) * u.data[k] + nl.f(u.data[k]);
  });
  fftw_execute(im.fwd);
  im.apply_diagonal([&](double lambda) { return scale / (inv_tau + kappa - eps2 * lambda); });
  fftw_execute(im.inv);

  Field out(u.grid);
  std::copy(im.real_buf, im.real_buf + out.data.size(), out.data.begin());
  return out;
}

} // namespace acsweep

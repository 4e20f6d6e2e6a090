#pragma once

#include <memory>
#include <vector>

#include "acsweep/grid.hpp"
#include "acsweep/potential.hpp"
#include "acsweep/scheme.hpp"

namespace acsweep {

// Diagonalization plan for the periodic central-difference Laplacian:
// eigenvalues lambda_k = (2 cos(2 pi k / M) - 2)/h^2 per axis, summed across
// axes. Holds the transform workspace; use from one thread at a time.
class SpectralPlan {
 public:
  explicit SpectralPlan(const Grid& grid);
  ~SpectralPlan();
  SpectralPlan(SpectralPlan&&) noexcept;
  SpectralPlan& operator=(SpectralPlan&&) noexcept;
  SpectralPlan(const SpectralPlan&) = delete;
  SpectralPlan& operator=(const SpectralPlan&) = delete;

  const Grid& grid() const;
  const std::vector<double>& eigenvalues() const; // full M^dim grid, row-major

  // forward + inverse transform of f (rounding only); exposes the transform
  // contract for testing
  Field roundtrip(const Field& f);

  struct Impl;
  Impl& impl() { return *impl_; }

 private:
  std::unique_ptr<Impl> impl_;
};

// One step of the stabilized semi-implicit baseline
//   (u^{n+1} - u^n)/tau = eps^2 lap_h u^{n+1} + f(u^n) - kappa (u^{n+1} - u^n),
// solved in transform space:
//   u-hat^{n+1} = ((1/tau + kappa) u-hat^n + f-hat) / (1/tau + kappa - eps^2 lambda).
Field step_ssi1(const Field& u, const SchemeConfig& cfg, const Potential& p, SpectralPlan& plan);

} // namespace acsweep

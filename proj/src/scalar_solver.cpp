#include "acsweep/scalar_solver.hpp"

#include <cmath>

namespace acsweep {

double cardano_real_root(double p, double q) {
  const double disc = 0.25 * q * q + p * p * p / 27.0;
  if (!(disc > 0.0))
    throw std::invalid_argument("cardano_real_root: non-positive discriminant (three-real-root regime)");
  const double s = std::sqrt(disc);
  // Evaluate the larger-magnitude cube root first and recover the other via
  // A*B = -p/3; the direct sum of both cbrt terms cancels badly when p^3/27
  // dominates q^2/4. std::cbrt is sign-correct for negative arguments.
  const double a = q >= 0.0 ? std::cbrt(-0.5 * q - s) : std::cbrt(-0.5 * q + s);
  double x = a - p / (3.0 * a);
  // One Newton correction when the closed form leaves residual above the
  // contract (|x| tiny relative to the cbrt terms).
  const double r = (x * x + p) * x + q;
  if (std::abs(r) > 0.5e-10 * std::max(1.0, std::abs(q))) {
    const double d = 3.0 * x * x + p;
    if (d != 0.0) x -= r / d;
  }
  return x;
}

} // namespace acsweep

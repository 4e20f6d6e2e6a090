#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace acsweep {

enum class PotentialKind { POLY, LOG };

// Nonlinearity of the double-well potential F(u) = (u^2-1)^2/4, f = -F'.
struct PolyNonlinearity {
  double f(double x) const { return x - x * x * x; }
  double fp(double x) const { return 1.0 - 3.0 * x * x; }
  double F(double x) const {
    const double s = x * x - 1.0;
    return 0.25 * s * s;
  }
};

// Nonlinearity of the Flory-Huggins potential. Only defined on |u| < 1; the
// maximum bound principle keeps iterates at |u| <= beta < 1, so hitting the
// guard means a scheme bug and must be loud.
struct LogNonlinearity {
  double theta;
  double theta_c;

  void check_domain(double x) const {
    if (!(std::abs(x) < 1.0))
      throw std::domain_error("logarithmic potential evaluated at |u| >= 1 (u=" +
                              std::to_string(x) + ")");
  }
  double f(double x) const {
    check_domain(x);
    return 0.5 * theta * std::log((1.0 - x) / (1.0 + x)) + theta_c * x;
  }
  double fp(double x) const {
    check_domain(x);
    return theta_c - theta / (1.0 - x * x);
  }
  double F(double x) const {
    check_domain(x);
    return 0.5 * theta * ((1.0 + x) * std::log(1.0 + x) + (1.0 - x) * std::log(1.0 - x)) -
           0.5 * theta_c * x * x;
  }
};

// Zero nonlinearity; reduces the schemes to the pure diffusion case.
struct ZeroNonlinearity {
  double f(double) const { return 0.0; }
  double fp(double) const { return 0.0; }
  double F(double) const { return 0.0; }
};

// Bulk potential descriptor with cached DMP bound beta and default
// stabilization kappa = max |f'| on [-beta, beta].
struct Potential {
  PotentialKind kind = PotentialKind::POLY;
  double theta = 0.0;   // LOG only
  double theta_c = 0.0; // LOG only
  double beta = 1.0;
  double kappa_default = 2.0;

  static Potential poly();
  static Potential log(double theta = 0.8, double theta_c = 1.6);
  static Potential parse(const std::string& token); // "poly" | "log" | "log:theta,theta_c"

  std::string token() const;
};

double f_eval(const Potential& p, double xi);
double F_eval(const Potential& p, double xi);
double f_prime(const Potential& p, double xi);

// DMP bound: 1 for POLY, the positive root of f(xi)=0 for LOG.
double compute_beta(const Potential& p);
// max |f'| over [-beta, beta].
double compute_kappa(const Potential& p);

// Dispatch to the concrete nonlinearity so callers can inline f/f' in hot loops.
template <class Fn>
decltype(auto) with_nonlinearity(const Potential& p, Fn&& fn) {
  switch (p.kind) {
    case PotentialKind::POLY:
      return fn(PolyNonlinearity{});
    case PotentialKind::LOG:
      return fn(LogNonlinearity{p.theta, p.theta_c});
  }
  throw std::logic_error("unknown potential kind");
}

} // namespace acsweep

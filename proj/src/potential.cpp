#include "acsweep/potential.hpp"

#include <cmath>
#include <limits>

namespace acsweep {

namespace {

// Positive root of f(xi)=0 for the logarithmic nonlinearity. The root lies in
// (sqrt(1 - theta/(2*theta_c - theta)), 1); bisection brackets it, Newton
// polishes to |f(root)| <= 1e-12.
double log_beta(double theta, double theta_c) {
  const LogNonlinearity nl{theta, theta_c};
  double lo = std::sqrt(1.0 - theta / (2.0 * theta_c - theta));
  double hi = 1.0 - std::numeric_limits<double>::epsilon();
  double flo = nl.f(lo);
  if (!(flo > 0.0) || !(nl.f(hi) < 0.0))
    throw std::logic_error("logarithmic potential: root bracket failed");
  while (hi - lo > 1e-14) {
    const double mid = 0.5 * (lo + hi);
    if (nl.f(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  double x = 0.5 * (lo + hi);
  for (int k = 0; k < 8; ++k) {
    const double r = nl.f(x);
    if (std::abs(r) <= 1e-13) break;
    x -= r / nl.fp(x);
  }
  // land on the first double with f(x) <= 0 so the sign condition
  // f(beta) <= 0 <= f(-beta) holds exactly
  while (nl.f(x) > 0.0) x = std::nextafter(x, 1.0);
  return x;
}

} // namespace

Potential Potential::poly() {
  Potential p;
  p.kind = PotentialKind::POLY;
  p.beta = 1.0;
  p.kappa_default = 2.0;
  return p;
}

Potential Potential::log(double theta, double theta_c) {
  if (!(theta > 0.0) || !(theta < theta_c))
    throw std::invalid_argument("logarithmic potential requires 0 < theta < theta_c");
  Potential p;
  p.kind = PotentialKind::LOG;
  p.theta = theta;
  p.theta_c = theta_c;
  p.beta = log_beta(theta, theta_c);
  p.kappa_default = compute_kappa(p);
  return p;
}

Potential Potential::parse(const std::string& token) {
  if (token == "poly") return poly();
  if (token == "log") return log();
  if (token.rfind("log:", 0) == 0) {
    const std::string args = token.substr(4);
    const auto comma = args.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("expected log:theta,theta_c, got '" + token + "'");
    return log(std::stod(args.substr(0, comma)), std::stod(args.substr(comma + 1)));
  }
  throw std::invalid_argument("unknown potential token '" + token + "'");
}

std::string Potential::token() const {
  if (kind == PotentialKind::POLY) return "poly";
  return "log:" + std::to_string(theta) + "," + std::to_string(theta_c);
}

double f_eval(const Potential& p, double xi) {
  return with_nonlinearity(p, [&](auto nl) { return nl.f(xi); });
}

double F_eval(const Potential& p, double xi) {
  return with_nonlinearity(p, [&](auto nl) { return nl.F(xi); });
}

double f_prime(const Potential& p, double xi) {
  return with_nonlinearity(p, [&](auto nl) { return nl.fp(xi); });
}

double compute_beta(const Potential& p) {
  if (p.kind == PotentialKind::POLY) return 1.0;
  return log_beta(p.theta, p.theta_c);
}

double compute_kappa(const Potential& p) {
  if (p.kind == PotentialKind::POLY) return 2.0;
  // f' is monotone in xi^2, so the extrema sit at the center and endpoints.
  const double beta = p.beta > 0.0 ? p.beta : compute_beta(p);
  const LogNonlinearity nl{p.theta, p.theta_c};
  return std::max(std::abs(nl.fp(0.0)), std::abs(nl.fp(beta)));
}

} // namespace acsweep

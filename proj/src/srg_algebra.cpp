#include "qwalk/srg_algebra.hpp"

#include <cmath>

namespace qwalk {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r))
    throw std::overflow_error("power coefficient overflows int64");
  return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r))
    throw std::overflow_error("power coefficient overflows int64");
  return r;
}

} // namespace

PowerCoefficients power_coefficients(const SrgParams &params, int power) {
  if (power < 1)
    throw std::invalid_argument("power must be >= 1");
  const std::int64_t k = params.k, lam = params.lambda, mu = params.mu;
  PowerCoefficients c{1, 0, 0, 1};
  // A * (aI + bJ + gA) = aA + bkJ + g((k-mu)I + mu J + (lam-mu)A)
  while (c.power < power) {
    PowerCoefficients next;
    next.power = c.power + 1;
    next.alpha = checked_mul(c.gamma, k - mu);
    next.beta = checked_add(checked_mul(c.beta, k), checked_mul(c.gamma, mu));
    next.gamma = checked_add(c.alpha, checked_mul(c.gamma, lam - mu));
    c = next;
  }
  return c;
}

SrgSpectrum srg_spectrum(const SrgParams &p) {
  const double b = p.lambda - p.mu;
  const double disc = b * b + 4.0 * (p.k - p.mu);
  if (disc <= 0)
    throw std::domain_error("SRG parameters give a degenerate restricted spectrum");
  const double root = std::sqrt(disc);
  SrgSpectrum s;
  s.theta_k = p.k;
  s.theta_r = (b + root) / 2.0;
  s.theta_s = (b - root) / 2.0;

  // f + g = n - 1 and k + f r + g s = 0
  const double f = 0.5 * ((p.n - 1) - (2.0 * p.k + (p.n - 1) * b) / root);
  const double g = 0.5 * ((p.n - 1) + (2.0 * p.k + (p.n - 1) * b) / root);
  const double fr = std::round(f), gr = std::round(g);
  if (std::abs(f - fr) > 1e-9 || std::abs(g - gr) > 1e-9 || fr < 0 || gr < 0)
    throw std::domain_error("non-integral eigenvalue multiplicities for " + to_string(p));
  s.mult_r = static_cast<int>(fr);
  s.mult_s = static_cast<int>(gr);
  return s;
}

PropagatorCoefficients propagator_coefficients(const SrgParams &params, double t) {
  const double b = params.lambda - params.mu;
  const double disc = b * b + 4.0 * (params.k - params.mu);
  if (!(disc > 0))
    throw DegenerateSpectrumError("theta_r == theta_s; use dense exponentiation");
  const double root = std::sqrt(disc);
  const double r = (b + root) / 2.0;
  const double s = (b - root) / 2.0;
  using C = std::complex<double>;
  const C er = std::polar(1.0, r * t);
  const C es = std::polar(1.0, s * t);
  const C ek = std::polar(1.0, params.k * t);

  PropagatorCoefficients c;
  c.t = t;
  c.gamma = (er - es) / (r - s);
  c.alpha = er - c.gamma * r;
  c.beta = (ek - c.alpha - c.gamma * static_cast<double>(params.k)) / static_cast<double>(params.n);
  return c;
}

} // namespace qwalk

#ifndef QWALK_SRG_ALGEBRA_HPP
#define QWALK_SRG_ALGEBRA_HPP

#include "qwalk/graph.hpp"

#include <Eigen/Core>

#include <complex>
#include <cstdint>
#include <stdexcept>

namespace qwalk {

/// A^n = alpha I + beta J + gamma A for an SRG adjacency matrix A.
struct PowerCoefficients {
  int power = 1;
  std::int64_t alpha = 0;
  std::int64_t beta = 0;
  std::int64_t gamma = 1;
};

/// Exact coefficients of A^n in the {I, J, A} basis. Throws std::overflow_error
/// if a coefficient leaves the int64 range.
PowerCoefficients power_coefficients(const SrgParams &params, int power);

/// Spectrum of an SRG: k with multiplicity 1, and the restricted eigenvalues
/// theta_r > theta_s.
struct SrgSpectrum {
  double theta_k = 0;
  double theta_r = 0;
  double theta_s = 0;
  int mult_k = 1;
  int mult_r = 0;
  int mult_s = 0;
};

/// Throws std::domain_error when the multiplicities are not non-negative
/// integers (an infeasible parameter tuple).
SrgSpectrum srg_spectrum(const SrgParams &params);

/// exp(iAt) = alpha I + beta J + gamma A, with coefficients fixed by the
/// family parameters and t.
struct PropagatorCoefficients {
  double t = 0;
  std::complex<double> alpha;
  std::complex<double> beta;
  std::complex<double> gamma;

  template <typename Scalar = std::complex<double>>
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> reconstruct(const Graph &g) const {
    using M = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    const auto n = g.n();
    return Scalar(alpha) * M::Identity(n, n) + M::Constant(n, n, Scalar(beta)) +
           Scalar(gamma) * g.adjacency_as<Scalar>();
  }
};

class DegenerateSpectrumError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Solves the 3x3 spectral system for (alpha, beta, gamma). Throws
/// DegenerateSpectrumError when theta_r == theta_s.
PropagatorCoefficients propagator_coefficients(const SrgParams &params, double t);

} // namespace qwalk

#endif // QWALK_SRG_ALGEBRA_HPP

#pragma once

#include <complex>

#include "gaussprec/phase_space.hpp"

namespace gaussprec {

/// Markovian Gaussian bath acting identically and independently on every mode.
struct BathParams {
  double gamma = 1.0;                 // overall damping rate, > 0
  double n_env = 0.0;                 // effective photon number N_e >= 0
  std::complex<double> m_env = 0.0;   // bath squeezing M_e

  bool operator==(const BathParams&) const = default;
};

/// Throws std::invalid_argument unless gamma > 0, N_e >= 0 and
/// |M_e|^2 <= N_e (N_e + 1) (+1e-12).
void validate(const BathParams& bath);

/// Direct sum of the per-mode asymptotic covariance
/// [[1 + 2N + 2Re M, 2Im M], [2Im M, 1 + 2N - 2Re M]].
Matrix diffusion_matrix(const BathParams& bath, int modes);

/// Factor e^{-gamma t / 2} by which first moments (and their parameter
/// derivatives) decay.
double mean_decay(const BathParams& bath, double t);

/// Closed-form moment dynamics:
/// sigma(t) = e^{-gamma t} sigma + (1 - e^{-gamma t}) sigma_inf,
/// d(t) = e^{-gamma t / 2} d.
GaussianState evolve(const GaussianState& state, const BathParams& bath, double t);

}  // namespace gaussprec

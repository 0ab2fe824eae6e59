#include "gaussprec/thermal_channel.hpp"

#include <cmath>
#include <stdexcept>

namespace gaussprec {

void validate(const BathParams& bath) {
  if (!(bath.gamma > 0.0) || !std::isfinite(bath.gamma)) {
    throw std::invalid_argument("bath damping rate gamma must be finite and > 0");
  }
  if (!(bath.n_env >= 0.0) || !std::isfinite(bath.n_env)) {
    throw std::invalid_argument("bath photon number N_e must be finite and >= 0");
  }
  if (!std::isfinite(bath.m_env.real()) || !std::isfinite(bath.m_env.imag())) {
    throw std::invalid_argument("bath squeezing M_e must be finite");
  }
  if (std::norm(bath.m_env) > bath.n_env * (bath.n_env + 1.0) + 1e-12) {
    throw std::invalid_argument("bath violates |M_e|^2 <= N_e (N_e + 1)");
  }
}

Matrix diffusion_matrix(const BathParams& bath, int modes) {
  validate(bath);
  if (modes < 1) throw std::invalid_argument("mode count must be >= 1");
  const double diag = 1.0 + 2.0 * bath.n_env;
  const double re = 2.0 * bath.m_env.real();
  const double im = 2.0 * bath.m_env.imag();
  Matrix s = Matrix::Zero(2 * modes, 2 * modes);
  for (int k = 0; k < modes; ++k) {
    s(2 * k, 2 * k) = diag + re;
    s(2 * k, 2 * k + 1) = im;
    s(2 * k + 1, 2 * k) = im;
    s(2 * k + 1, 2 * k + 1) = diag - re;
  }
  return s;
}

double mean_decay(const BathParams& bath, double t) {
  validate(bath);
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw std::invalid_argument("evolution time must be finite and >= 0");
  }
  return std::exp(-0.5 * bath.gamma * t);
}

GaussianState evolve(const GaussianState& state, const BathParams& bath, double t) {
  const double half = mean_decay(bath, t);
  const double decay = std::exp(-bath.gamma * t);
  // -expm1 keeps (1 - e^{-gamma t}) accurate for small gamma t.
  const double fill = -std::expm1(-bath.gamma * t);
  return GaussianState(half * state.mean(),
                       decay * state.covariance() +
                           fill * diffusion_matrix(bath, state.modes()));
}

}  // namespace gaussprec

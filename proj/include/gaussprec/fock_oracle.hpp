#pragma once

// Brute-force two-mode density matrices in a truncated Fock basis. Used only
// to check the phase-space pipeline.

#include <Eigen/Dense>
#include <vector>

#include "gaussprec/probes.hpp"
#include "gaussprec/thermal_channel.hpp"

namespace gaussprec {

using CMatrix = Eigen::MatrixXcd;

/// Two-mode state, basis index n1 * (cutoff + 1) + n2.
struct FockState {
  int cutoff = 0;
  CMatrix rho;

  int dim() const { return (cutoff + 1) * (cutoff + 1); }
  double trace() const { return rho.trace().real(); }
};

/// Minimum retained probability for a truncated probe.
inline constexpr double kTraceTolerance = 1e-6;

struct LindbladConfig {
  double gamma = 1.0;
  double n_env = 0.0;
  double t = 0.0;
  int steps = 0;

  /// Fixed-step RK4 with gamma * dt <= 0.01, refined further when the
  /// fastest decay rate at this cutoff needs it. Requires M_e = 0.
  static LindbladConfig for_time(const BathParams& bath, double t, int cutoff);
};

/// n^k / (n + 1)^{k + 1} for k = 0..cutoff.
std::vector<double> thermal_weights(double nbar, int cutoff);

/// Throws CutoffError when the truncated trace is below 1 - kTraceTolerance.
FockState fock_probe(const ProbeSpec& spec, int cutoff);

FockState lindblad_evolve(const FockState& state, const LindbladConfig& cfg);

/// Displaces mode 0 so that its (q, p) mean moves by (theta1, theta2) * sqrt(2),
/// i.e. coherent amplitude (theta1 + i theta2) / sqrt(2). This matches the
/// normalization of the phase-space information matrices.
FockState displace_mode0(const FockState& state, double theta1, double theta2);

struct FockMoments {
  Eigen::Vector4d mean;
  Eigen::Matrix4d covariance;
};

/// Quadrature moments with q = a + a^dag, p = i (a^dag - a).
FockMoments fock_moments(const FockState& state);

struct NumericQfim {
  Eigen::Matrix2d F_S;
  Eigen::Matrix2cd F_R;
  Eigen::Matrix2d U;
};

/// Central differences of displace -> evolve with step h, then spectral SLD,
/// RLD and U. Throws DegeneracyError when the derivatives leave the support of
/// the evolved state (pure states).
NumericQfim qfim_numeric(const ProbeSpec& spec, const BathParams& bath, double t, int cutoff,
                         double h = 1e-3);

struct NumericBounds {
  double b_s = 0.0;
  double b_r = 0.0;
  double r = 0.0;
};

NumericBounds numeric_bounds(const NumericQfim& q);

}  // namespace gaussprec

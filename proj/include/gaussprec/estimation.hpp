#pragma once

// Fisher information, quantumness and the bound set for two-parameter
// displacement estimation with Gaussian probes.

#include <Eigen/Dense>
#include <optional>

#include "gaussprec/measurement.hpp"
#include "gaussprec/phase_space.hpp"
#include "gaussprec/probes.hpp"
#include "gaussprec/thermal_channel.hpp"

namespace gaussprec {

/// Evolved state together with D = [dd/dtheta1, dd/dtheta2] (2m x 2).
struct DisplacementModel {
  GaussianState state;
  Matrix D;
};

/// Checks D is 2m x 2, finite and not identically zero.
DisplacementModel make_model(GaussianState state, Matrix D);

/// The scheme studied throughout: theta is added to mode 0's (q, p) before
/// the bath acts, so D = e^{-gamma t / 2} [e_q0, e_p0].
DisplacementModel displacement_model(const ProbeSpec& probe, const BathParams& bath, double t);

struct QfimReal {
  Eigen::Matrix2d F;
};

struct QfimComplex {
  Eigen::Matrix2cd F;
  bool degenerate = false;  // sigma + i Omega was rank deficient
};

/// F = 2 D^T sigma^{-1} D.
QfimReal sld_qfim(const DisplacementModel& model);

/// F = 2 D^T (sigma + i Omega)^+ D, pseudo-inverse with relative cut 1e-10.
QfimComplex rld_qfim(const DisplacementModel& model);

/// Inverse RLD matrix computed without inverting F^(R): the Schur complement
/// of sigma + i Omega onto the span of D. Finite for pure states.
Eigen::Matrix2cd rld_inverse(const DisplacementModel& model);

/// U = 2 D^T sigma^{-1} Omega sigma^{-1} D.
Eigen::Matrix2d mean_field_commutation(const DisplacementModel& model);

/// Tr F^{-1}.
double b_s(const QfimReal& F);
/// Tr Re F^{-1} + sum of singular values of Im F^{-1}.
double b_r(const QfimComplex& F);
double b_r_from_inverse(const Eigen::Matrix2cd& F_inverse);

/// Largest eigenvalue modulus of i F^{-1} U. Values within 1e-9 of 1 are
/// clamped; values above 1 + 1e-6 raise ConsistencyError.
double quantumness(const QfimReal& F, const Eigen::Matrix2d& U);

struct BoundSet {
  double b_s = 0.0;
  double b_r = 0.0;
  double r = 0.0;
  double b_h_max = 0.0;
  std::optional<double> b_hd;

  bool operator==(const BoundSet&) const = default;
};

/// Full moment pipeline. B_R always comes from rld_inverse, so pure probes
/// at t = 0 are handled. With a seed, B_HD is the closed form evaluated at
/// the seed's mode-0 angle (requires M_e = 0 and nbar = N_e).
BoundSet bound_set(const ProbeSpec& probe, const BathParams& bath, double t,
                   const std::optional<MeasurementSeed>& seed = std::nullopt);

}  // namespace gaussprec

#pragma once

// General-dyne (Gaussian) measurements described by a seed covariance.

#include <optional>
#include <vector>

#include "gaussprec/phase_space.hpp"

namespace gaussprec {

struct DisplacementModel;
struct QfimReal;

/// Detection inefficiency equivalent to the bath acting for time t:
/// sigma_Gm -> e^{gamma t} sigma_Gm + (e^{gamma t} - 1) I.
struct Inefficiency {
  double gamma = 1.0;
  double t = 0.0;
};

/// Per mode k the seed is R(phi_k) diag(e^{-2 s_k}, e^{2 s_k}) R(phi_k)^T,
/// R(phi) = [[cos, sin], [-sin, cos]]. s = 0 is heterodyne; large s is
/// homodyne of the quadrature selected by phi (phi = 0 measures q).
/// An optional mixing transform (e.g. a beam splitter) acts on the state
/// before detection.
struct MeasurementSeed {
  std::vector<double> s;
  std::vector<double> phi;
  std::optional<Inefficiency> inefficiency;
  std::optional<SymplecticMatrix> mixing;

  int modes() const { return static_cast<int>(s.size()); }

  /// Throws std::invalid_argument on size mismatch, s < 0 or bad numbers.
  void validate() const;

  /// Seed covariance including the inefficiency map. Overflows for large s;
  /// generaldyne_cfim does not use it.
  Matrix covariance() const;

  static MeasurementSeed heterodyne(int modes);
  /// s = 20 on every mode.
  static MeasurementSeed homodyne(std::vector<double> phi, double s = 20.0);
};

/// Classical Fisher information I = 2 D'^T (sigma' + sigma_m)^{-1} D', where
/// primes denote the mixing transform. The e^{2s} directions enter through a
/// Woodbury update so s = 20 stays accurate.
QfimReal generaldyne_cfim(const DisplacementModel& model, const MeasurementSeed& seed);

}  // namespace gaussprec

#pragma once

// Gaussian states of m bosonic modes in the hbar = 2 convention:
// quadratures R = (q1, p1, ..., qm, pm), [R_j, R_k] = 2i Omega_jk and the
// vacuum covariance matrix is the identity.

#include <Eigen/Dense>
#include <vector>

namespace gaussprec {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Direct sum of m copies of omega = [[0, 1], [-1, 0]].
Matrix symplectic_form(int modes);

/// A real 2m x 2m matrix with S Omega S^T = Omega (checked to 1e-10).
class SymplecticMatrix {
 public:
  explicit SymplecticMatrix(Matrix s);

  static SymplecticMatrix identity(int modes);

  /// Places a transform acting on `local.modes()` consecutive modes starting
  /// at `first_mode` inside an identity on `total_modes` modes.
  static SymplecticMatrix embed(const SymplecticMatrix& local, int first_mode,
                                int total_modes);

  const Matrix& matrix() const { return s_; }
  int modes() const { return static_cast<int>(s_.rows() / 2); }

  SymplecticMatrix operator*(const SymplecticMatrix& rhs) const;

 private:
  Matrix s_;
};

/// First and second moments of a Gaussian state.
///
/// The covariance is symmetrized on construction; an asymmetry above 1e-9
/// (relative to the largest entry) is rejected as invalid. Physicality
/// (sigma + i Omega >= 0) is not enforced here so that intermediate objects
/// can be built; use check_uncertainty() for that.
class GaussianState {
 public:
  GaussianState(Vector mean, Matrix covariance);

  int modes() const { return static_cast<int>(mean_.size() / 2); }
  const Vector& mean() const { return mean_; }
  const Matrix& covariance() const { return cov_; }

 private:
  Vector mean_;
  Matrix cov_;
};

GaussianState vacuum(int modes);

/// Single-mode thermal state with the given mean photon number.
GaussianState thermal(double mean_photons);

/// Two-mode squeezer S2(r e^{i phi}) in block form
/// [[cosh r I, sinh r R_phi], [sinh r R_phi, cosh r I]],
/// R_phi = [[cos phi, sin phi], [sin phi, -cos phi]].
SymplecticMatrix two_mode_squeezer(double r, double phi);

/// Beam splitter of transmissivity tau in [0, 1].
SymplecticMatrix beam_splitter(double tau);

/// Single-mode phase rotation by phi.
SymplecticMatrix phase_rotation(double phi);

/// d -> S d, sigma -> S sigma S^T.
GaussianState apply_symplectic(const GaussianState& state,
                               const SymplecticMatrix& s);

/// Adds (theta1, theta2) to the (q, p) mean of `mode` (zero-based).
GaussianState displace(const GaussianState& state, int mode, double theta1,
                       double theta2);

/// One symplectic eigenvalue per mode, ascending.
std::vector<double> symplectic_eigenvalues(const GaussianState& state);
std::vector<double> symplectic_eigenvalues(const Matrix& covariance);

/// 1 / sqrt(det sigma).
double purity(const GaussianState& state);

/// (sigma_qq + sigma_pp + d_q^2 + d_p^2) / 4 - 1/2 for `mode` (zero-based).
double mean_photon_number(const GaussianState& state, int mode);

/// True iff the smallest symplectic eigenvalue is >= 1 - 1e-10.
bool check_uncertainty(const GaussianState& state);
bool check_uncertainty(const Matrix& covariance);

}  // namespace gaussprec

#include "gaussprec/phase_space.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace gaussprec {

namespace {

constexpr double kSymplecticTol = 1e-10;
constexpr double kSymmetryTol = 1e-9;
constexpr double kUncertaintyTol = 1e-10;
constexpr double kPairingTol = 1e-8;

void require_even_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0 || m.rows() % 2 != 0) {
    throw std::invalid_argument(std::string(what) +
                                " must be a non-empty 2m x 2m matrix");
  }
}

// Symmetrizes in place, rejecting matrices that are not symmetric to begin
// with.
void symmetrize(Matrix& cov) {
  const double scale = std::max(1.0, cov.cwiseAbs().maxCoeff());
  const double asym = (cov - cov.transpose()).cwiseAbs().maxCoeff();
  if (!(asym <= kSymmetryTol * scale)) {
    throw std::invalid_argument("covariance matrix is not symmetric (max |s - s^T| = " +
                                std::to_string(asym) + ")");
  }
  cov = 0.5 * (cov + cov.transpose()).eval();
}

Eigen::Matrix2d reflection(double phi) {
  Eigen::Matrix2d r;
  r << std::cos(phi), std::sin(phi), std::sin(phi), -std::cos(phi);
  return r;
}

}  // namespace

Matrix symplectic_form(int modes) {
  if (modes < 1) throw std::invalid_argument("mode count must be >= 1");
  Matrix omega = Matrix::Zero(2 * modes, 2 * modes);
  for (int k = 0; k < modes; ++k) {
    omega(2 * k, 2 * k + 1) = 1.0;
    omega(2 * k + 1, 2 * k) = -1.0;
  }
  return omega;
}

SymplecticMatrix::SymplecticMatrix(Matrix s) : s_(std::move(s)) {
  require_even_square(s_, "symplectic matrix");
  const Matrix omega = symplectic_form(modes());
  const double scale = std::max(1.0, s_.cwiseAbs().maxCoeff());
  const double err = (s_ * omega * s_.transpose() - omega).cwiseAbs().maxCoeff();
  if (!(err < kSymplecticTol * scale * scale)) {
    throw std::invalid_argument("matrix is not symplectic (max |S W S^T - W| = " +
                                std::to_string(err) + ")");
  }
}

SymplecticMatrix SymplecticMatrix::identity(int modes) {
  if (modes < 1) throw std::invalid_argument("mode count must be >= 1");
  return SymplecticMatrix(Matrix::Identity(2 * modes, 2 * modes));
}

SymplecticMatrix SymplecticMatrix::embed(const SymplecticMatrix& local,
                                         int first_mode, int total_modes) {
  if (first_mode < 0 || first_mode + local.modes() > total_modes) {
    throw std::invalid_argument("embedded transform does not fit in the mode range");
  }
  Matrix s = Matrix::Identity(2 * total_modes, 2 * total_modes);
  s.block(2 * first_mode, 2 * first_mode, local.matrix().rows(),
          local.matrix().cols()) = local.matrix();
  return SymplecticMatrix(std::move(s));
}

SymplecticMatrix SymplecticMatrix::operator*(const SymplecticMatrix& rhs) const {
  if (rhs.modes() != modes()) {
    throw std::invalid_argument("symplectic product of different mode counts");
  }
  return SymplecticMatrix(s_ * rhs.s_);
}

GaussianState::GaussianState(Vector mean, Matrix covariance)
    : mean_(std::move(mean)), cov_(std::move(covariance)) {
  require_even_square(cov_, "covariance matrix");
  if (mean_.size() != cov_.rows()) {
    throw std::invalid_argument("mean vector and covariance matrix sizes differ");
  }
  if (!mean_.allFinite() || !cov_.allFinite()) {
    throw std::invalid_argument("Gaussian state moments must be finite");
  }
  symmetrize(cov_);
}

GaussianState vacuum(int modes) {
  if (modes < 1) throw std::invalid_argument("vacuum needs at least one mode");
  return GaussianState(Vector::Zero(2 * modes), Matrix::Identity(2 * modes, 2 * modes));
}

GaussianState thermal(double mean_photons) {
  if (!(mean_photons >= 0.0) || !std::isfinite(mean_photons)) {
    throw std::invalid_argument("mean photon number must be finite and >= 0");
  }
  return GaussianState(Vector::Zero(2),
                       (2.0 * mean_photons + 1.0) * Matrix::Identity(2, 2));
}

SymplecticMatrix two_mode_squeezer(double r, double phi) {
  if (!(r >= 0.0) || !std::isfinite(r)) {
    throw std::invalid_argument("squeezing magnitude must be finite and >= 0");
  }
  Matrix s(4, 4);
  const Eigen::Matrix2d id = Eigen::Matrix2d::Identity();
  const Eigen::Matrix2d off = std::sinh(r) * reflection(phi);
  s << std::cosh(r) * id, off, off, std::cosh(r) * id;
  return SymplecticMatrix(std::move(s));
}

SymplecticMatrix beam_splitter(double tau) {
  if (!(tau >= 0.0 && tau <= 1.0)) {
    throw std::invalid_argument("beam splitter transmissivity must lie in [0, 1]");
  }
  const double t = std::sqrt(tau);
  const double u = std::sqrt(1.0 - tau);
  const Eigen::Matrix2d id = Eigen::Matrix2d::Identity();
  Matrix s(4, 4);
  s << t * id, u * id, -u * id, t * id;
  return SymplecticMatrix(std::move(s));
}

SymplecticMatrix phase_rotation(double phi) {
  Matrix s(2, 2);
  s << std::cos(phi), std::sin(phi), -std::sin(phi), std::cos(phi);
  return SymplecticMatrix(std::move(s));
}

GaussianState apply_symplectic(const GaussianState& state,
                               const SymplecticMatrix& s) {
  if (s.modes() != state.modes()) {
    throw std::invalid_argument("symplectic transform and state have different mode counts");
  }
  const Matrix& m = s.matrix();
  return GaussianState(m * state.mean(), m * state.covariance() * m.transpose());
}

GaussianState displace(const GaussianState& state, int mode, double theta1,
                       double theta2) {
  if (mode < 0 || mode >= state.modes()) {
    throw std::invalid_argument("displacement mode index out of range");
  }
  Vector d = state.mean();
  d(2 * mode) += theta1;
  d(2 * mode + 1) += theta2;
  return GaussianState(std::move(d), state.covariance());
}

std::vector<double> symplectic_eigenvalues(const Matrix& covariance) {
  require_even_square(covariance, "covariance matrix");
  Matrix cov = covariance;
  symmetrize(cov);
  const int modes = static_cast<int>(cov.rows() / 2);
  // Eigenvalues of Omega sigma are +-i nu_k.
  Eigen::EigenSolver<Matrix> solver(symplectic_form(modes) * cov, false);
  std::vector<double> moduli;
  moduli.reserve(cov.rows());
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    moduli.push_back(std::abs(solver.eigenvalues()(i)));
  }
  std::sort(moduli.begin(), moduli.end());
  std::vector<double> nu;
  nu.reserve(modes);
  for (std::size_t i = 0; i + 1 < moduli.size(); i += 2) {
    const double a = moduli[i];
    const double b = moduli[i + 1];
    if (std::abs(a - b) > kPairingTol * std::max(1.0, b)) {
      throw std::runtime_error("symplectic spectrum does not come in +-i nu pairs");
    }
    nu.push_back(0.5 * (a + b));
  }
  return nu;
}

std::vector<double> symplectic_eigenvalues(const GaussianState& state) {
  return symplectic_eigenvalues(state.covariance());
}

double purity(const GaussianState& state) {
  const double det = state.covariance().determinant();
  if (!(det > 0.0)) {
    throw std::invalid_argument("covariance matrix is not positive definite");
  }
  return 1.0 / std::sqrt(det);
}

double mean_photon_number(const GaussianState& state, int mode) {
  if (mode < 0 || mode >= state.modes()) {
    throw std::invalid_argument("mode index out of range");
  }
  const int q = 2 * mode;
  const int p = q + 1;
  const Matrix& s = state.covariance();
  const Vector& d = state.mean();
  return (s(q, q) + s(p, p) + d(q) * d(q) + d(p) * d(p)) / 4.0 - 0.5;
}

bool check_uncertainty(const Matrix& covariance) {
  // Symplectic moduli alone cannot tell sigma from -sigma.
  if (Eigen::LLT<Matrix>(covariance).info() != Eigen::Success) return false;
  const auto nu = symplectic_eigenvalues(covariance);
  return nu.front() >= 1.0 - kUncertaintyTol;
}

bool check_uncertainty(const GaussianState& state) {
  return check_uncertainty(state.covariance());
}

}  // namespace gaussprec

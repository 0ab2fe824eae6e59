#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>

#include "gaussprec/closed_form.hpp"
#include "gaussprec/errors.hpp"
#include "gaussprec/estimation.hpp"

namespace gaussprec {

namespace {

using cd = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

constexpr double kPinvCut = 1e-10;
constexpr double kCondFloor = 1e-14;
constexpr double kClampTol = 1e-9;
constexpr double kConsistencyTol = 1e-6;

std::string describe(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

// Cholesky of sigma, refusing near-singular covariances.
Eigen::LLT<Matrix> factor_covariance(const Matrix& sigma) {
  Eigen::LLT<Matrix> llt(sigma);
  bool ok = llt.info() == Eigen::Success;
  if (ok) {
    const double rc = llt.rcond();
    ok = std::isfinite(rc) && rc > kCondFloor;
  }
  if (!ok) {
    double nu_min = 0.0;
    try {
      nu_min = symplectic_eigenvalues(sigma).front();
    } catch (const std::exception&) {
      nu_min = std::nan("");
    }
    throw DegeneracyError("covariance matrix is singular (smallest symplectic eigenvalue " +
                              describe(nu_min) + ")",
                          nu_min);
  }
  return llt;
}

// Hermitian pseudo-inverse with a relative cut; reports whether anything was
// dropped.
CMatrix hermitian_pinv(const CMatrix& m, bool* dropped) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m);
  const Eigen::VectorXd& lam = es.eigenvalues();
  const double scale = lam.cwiseAbs().maxCoeff();
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(lam.size());
  bool cut = false;
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    if (std::abs(lam(i)) > kPinvCut * scale) {
      inv(i) = 1.0 / lam(i);
    } else {
      cut = true;
    }
  }
  if (dropped) *dropped = cut;
  return es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().adjoint();
}

Eigen::Matrix2d inverse_2x2(const Eigen::Matrix2d& F, const char* what) {
  const double det = F.determinant();
  const double scale = F.cwiseAbs().maxCoeff();
  if (!(std::abs(det) > kCondFloor * scale * scale) || !std::isfinite(det)) {
    throw DegeneracyError(std::string(what) + " is singular (det " + describe(det) + ")", det);
  }
  return F.inverse();
}

}  // namespace

DisplacementModel make_model(GaussianState state, Matrix D) {
  if (D.rows() != 2 * state.modes() || D.cols() != 2) {
    throw std::invalid_argument("derivative matrix D must be 2m x 2");
  }
  if (!D.allFinite()) throw std::invalid_argument("derivative matrix D must be finite");
  if (D.cwiseAbs().maxCoeff() == 0.0) {
    throw std::invalid_argument("derivative matrix D is identically zero");
  }
  return DisplacementModel{std::move(state), std::move(D)};
}

DisplacementModel displacement_model(const ProbeSpec& probe, const BathParams& bath, double t) {
  const double k = mean_decay(bath, t);
  GaussianState out = evolve(build_probe(probe), bath, t);
  // D is written down directly rather than differenced so that it carries
  // no dependence on the probe mean.
  Matrix D = Matrix::Zero(2 * out.modes(), 2);
  D(0, 0) = k;
  D(1, 1) = k;
  return make_model(std::move(out), std::move(D));
}

QfimReal sld_qfim(const DisplacementModel& model) {
  const auto llt = factor_covariance(model.state.covariance());
  const Matrix x = llt.solve(model.D);
  Eigen::Matrix2d F = 2.0 * model.D.transpose() * x;
  F = 0.5 * (F + F.transpose()).eval();
  return {F};
}

QfimComplex rld_qfim(const DisplacementModel& model) {
  const Matrix& sigma = model.state.covariance();
  const CMatrix m = sigma.cast<cd>() + cd(0.0, 1.0) * symplectic_form(model.state.modes()).cast<cd>();
  bool dropped = false;
  const CMatrix pinv = hermitian_pinv(m, &dropped);
  const CMatrix Dc = model.D.cast<cd>();
  Eigen::Matrix2cd F = 2.0 * Dc.transpose() * pinv * Dc;
  F = 0.5 * (F + F.adjoint()).eval();
  return {F, dropped};
}

Eigen::Matrix2cd rld_inverse(const DisplacementModel& model) {
  const int n = static_cast<int>(model.D.rows());
  // Complete D to a basis T = [D, D_perp]. With N = T^{-1} M T^{-T}, the
  // matrix (D^T M^{-1} D)^{-1} is the Schur complement of N's trailing block.
  Eigen::HouseholderQR<Matrix> qr(model.D);
  const Matrix q = qr.householderQ();
  Matrix T(n, n);
  T << model.D, q.rightCols(n - 2);
  Eigen::FullPivLU<Matrix> lu(T);
  if (lu.rank() < n) {
    throw DegeneracyError("derivative columns are linearly dependent", 0.0);
  }
  const Matrix tinv = lu.inverse();
  const CMatrix m = model.state.covariance().cast<cd>() +
                    cd(0.0, 1.0) * symplectic_form(model.state.modes()).cast<cd>();
  const CMatrix N = tinv.cast<cd>() * m * tinv.transpose().cast<cd>();
  Eigen::Matrix2cd schur = N.topLeftCorner(2, 2);
  if (n > 2) {
    const CMatrix tail = hermitian_pinv(N.bottomRightCorner(n - 2, n - 2), nullptr);
    schur -= N.topRightCorner(2, n - 2) * tail * N.bottomLeftCorner(n - 2, 2);
  }
  Eigen::Matrix2cd out = 0.5 * schur;
  return 0.5 * (out + out.adjoint());
}

Eigen::Matrix2d mean_field_commutation(const DisplacementModel& model) {
  const auto llt = factor_covariance(model.state.covariance());
  const Matrix x = llt.solve(model.D);
  const Matrix omega = symplectic_form(model.state.modes());
  Eigen::Matrix2d U = 2.0 * x.transpose() * omega * x;
  return 0.5 * (U - U.transpose());
}

double b_s(const QfimReal& F) {
  return inverse_2x2(F.F, "SLD information matrix").trace();
}

double b_r_from_inverse(const Eigen::Matrix2cd& F_inverse) {
  const Eigen::Matrix2d re = F_inverse.real();
  const Eigen::Matrix2d im = F_inverse.imag();
  Eigen::JacobiSVD<Eigen::Matrix2d> svd(im);
  return re.trace() + svd.singularValues().sum();
}

double b_r(const QfimComplex& F) {
  const cd det = F.F.determinant();
  const double scale = F.F.cwiseAbs().maxCoeff();
  if (!(std::abs(det) > kCondFloor * scale * scale) || !std::isfinite(std::abs(det))) {
    throw DegeneracyError("RLD information matrix is singular (|det| " +
                              describe(std::abs(det)) + ")",
                          std::abs(det));
  }
  return b_r_from_inverse(F.F.inverse());
}

double quantumness(const QfimReal& F, const Eigen::Matrix2d& U) {
  const Eigen::Matrix2d finv = inverse_2x2(F.F, "SLD information matrix");
  const Eigen::Matrix2cd a = cd(0.0, 1.0) * (finv * U).cast<cd>();
  Eigen::ComplexEigenSolver<Eigen::Matrix2cd> es(a, false);
  double r = es.eigenvalues().cwiseAbs().maxCoeff();
  if (r > 1.0 + kConsistencyTol) {
    throw ConsistencyError("quantumness " + describe(r) + " exceeds 1");
  }
  if (r > 1.0 && r <= 1.0 + kClampTol) r = 1.0;
  return r;
}

BoundSet bound_set(const ProbeSpec& probe, const BathParams& bath, double t,
                   const std::optional<MeasurementSeed>& seed) {
  const DisplacementModel model = displacement_model(probe, bath, t);
  const QfimReal F = sld_qfim(model);
  BoundSet out;
  out.b_s = b_s(F);
  out.b_r = b_r_from_inverse(rld_inverse(model));
  out.r = quantumness(F, mean_field_commutation(model));
  out.b_h_max = (1.0 + out.r) * out.b_s;
  if (seed) {
    seed->validate();
    if (seed->phi.empty()) throw std::invalid_argument("measurement seed has no modes");
    out.b_hd = hd_bound_closed_form(probe, bath, t, seed->phi.front());
  }
  return out;
}

}  // namespace gaussprec

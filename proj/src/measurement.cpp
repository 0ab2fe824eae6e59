#include "gaussprec/measurement.hpp"

#include <cmath>
#include <stdexcept>

#include "gaussprec/errors.hpp"
#include "gaussprec/estimation.hpp"

namespace gaussprec {

namespace {

// Columns: the e^{-2s} direction u and the e^{2s} direction v of mode k.
Eigen::Matrix2d seed_axes(double phi) {
  Eigen::Matrix2d r;
  r << std::cos(phi), std::sin(phi), -std::sin(phi), std::cos(phi);
  return r;
}

// (a, b) with sigma_m = a * seed + b * I.
std::pair<double, double> inefficiency_map(const std::optional<Inefficiency>& ineff) {
  if (!ineff) return {1.0, 0.0};
  const double gt = ineff->gamma * ineff->t;
  return {std::exp(gt), std::expm1(gt)};
}

}  // namespace

void MeasurementSeed::validate() const {
  if (s.empty()) throw std::invalid_argument("measurement seed needs at least one mode");
  if (phi.size() != s.size()) {
    throw std::invalid_argument("measurement seed needs one angle per squeeze value");
  }
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (!(s[k] >= 0.0) || !std::isfinite(s[k])) {
      throw std::invalid_argument("seed squeeze values must be finite and >= 0");
    }
    if (!std::isfinite(phi[k])) throw std::invalid_argument("seed angles must be finite");
  }
  if (inefficiency) {
    if (!(inefficiency->gamma > 0.0) || !std::isfinite(inefficiency->gamma) ||
        !(inefficiency->t >= 0.0) || !std::isfinite(inefficiency->t)) {
      throw std::invalid_argument("inefficiency needs gamma > 0 and t >= 0");
    }
  }
  if (mixing && mixing->modes() != modes()) {
    throw std::invalid_argument("mixing transform and seed have different mode counts");
  }
}

Matrix MeasurementSeed::covariance() const {
  validate();
  const auto [a, b] = inefficiency_map(inefficiency);
  Matrix out = Matrix::Zero(2 * modes(), 2 * modes());
  for (int k = 0; k < modes(); ++k) {
    const Eigen::Matrix2d axes = seed_axes(phi[k]);
    Eigen::Vector2d diag(std::exp(-2.0 * s[k]), std::exp(2.0 * s[k]));
    out.block<2, 2>(2 * k, 2 * k) =
        a * axes * diag.asDiagonal() * axes.transpose() + b * Eigen::Matrix2d::Identity();
  }
  return out;
}

MeasurementSeed MeasurementSeed::heterodyne(int modes) {
  if (modes < 1) throw std::invalid_argument("mode count must be >= 1");
  MeasurementSeed seed;
  seed.s.assign(modes, 0.0);
  seed.phi.assign(modes, 0.0);
  return seed;
}

MeasurementSeed MeasurementSeed::homodyne(std::vector<double> phi, double s) {
  MeasurementSeed seed;
  seed.s.assign(phi.size(), s);
  seed.phi = std::move(phi);
  seed.validate();
  return seed;
}

QfimReal generaldyne_cfim(const DisplacementModel& model, const MeasurementSeed& seed) {
  seed.validate();
  const int m = model.state.modes();
  if (seed.modes() != m) {
    throw std::invalid_argument("measurement seed and state have different mode counts");
  }
  Matrix sigma = model.state.covariance();
  Matrix D = model.D;
  if (seed.mixing) {
    const Matrix& S = seed.mixing->matrix();
    sigma = S * sigma * S.transpose();
    D = S * D;
  }
  const auto [a, b] = inefficiency_map(seed.inefficiency);

  // sigma + sigma_m = W + V C V^T with W holding everything of order one and
  // C = diag(a e^{2 s_k}).
  Matrix W = sigma + b * Matrix::Identity(2 * m, 2 * m);
  Matrix V = Matrix::Zero(2 * m, m);
  Vector cinv(m);
  for (int k = 0; k < m; ++k) {
    const Eigen::Matrix2d axes = seed_axes(seed.phi[k]);
    const Eigen::Vector2d u = axes.col(0);
    W.block<2, 2>(2 * k, 2 * k) += a * std::exp(-2.0 * seed.s[k]) * u * u.transpose();
    V.block<2, 1>(2 * k, k) = axes.col(1);
    cinv(k) = std::exp(-2.0 * seed.s[k]) / a;
  }
  Eigen::LLT<Matrix> wl(W);
  if (wl.info() != Eigen::Success) {
    throw DegeneracyError("general-dyne outcome covariance is not positive definite", 0.0);
  }
  const Matrix wd = wl.solve(D);
  const Matrix wv = wl.solve(V);
  Matrix cap = V.transpose() * wv;
  cap.diagonal() += cinv;
  const Matrix corr = (wv.transpose() * D);
  Matrix info = D.transpose() * wd - corr.transpose() * cap.ldlt().solve(corr);
  info = (info + info.transpose()).eval();  // 2 * symmetric part
  return {Eigen::Matrix2d(info)};
}

}  // namespace gaussprec

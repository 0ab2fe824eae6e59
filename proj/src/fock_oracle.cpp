#include "gaussprec/fock_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>
#include <variant>

#include "gaussprec/errors.hpp"
#include "gaussprec/estimation.hpp"

namespace gaussprec {

namespace {

using cd = std::complex<double>;
constexpr cd kI{0.0, 1.0};

constexpr int kPad = 60;
constexpr double kMaxStep = 0.01;         // gamma * dt
constexpr double kRk4Reach = 2.0;         // |lambda| dt kept below this
constexpr double kTraceDrift = 1e-6;
constexpr double kSldCut = 1e-12;
constexpr double kRldCut = 1e-12;         // relative to the largest eigenvalue
constexpr double kSupportLeak = 1e-3;

void require_cutoff(int cutoff) {
  if (cutoff < 1) throw std::invalid_argument("Fock cutoff must be >= 1");
}

// exp(-i G) for a Hermitian matrix G.
CMatrix unitary_from_generator(const CMatrix& g) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(g);
  const Eigen::VectorXcd phase = (-kI * es.eigenvalues().cast<cd>()).array().exp();
  return es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint();
}

// Truncation of exp(beta a^dag - beta* a) computed in a padded space.
CMatrix single_mode_displacement(cd beta, int cutoff) {
  const int pad = kPad + static_cast<int>(std::ceil(4.0 * std::norm(beta)));
  const int n = cutoff + pad + 1;
  CMatrix g = CMatrix::Zero(n, n);
  for (int k = 0; k + 1 < n; ++k) {
    const double s = std::sqrt(static_cast<double>(k + 1));
    g(k + 1, k) = kI * beta * s;
    g(k, k + 1) = -kI * std::conj(beta) * s;
  }
  return unitary_from_generator(g).topLeftCorner(cutoff + 1, cutoff + 1);
}

// (U x I) rho (U x I)^dag with U acting on mode 0.
CMatrix apply_mode0(const CMatrix& u, const CMatrix& rho, int cutoff) {
  const int b = cutoff + 1;
  const int dim = b * b;
  CMatrix tmp = CMatrix::Zero(dim, dim);
  for (int i = 0; i < b; ++i) {
    for (int j = 0; j < b; ++j) {
      if (u(i, j) != 0.0) tmp.middleRows(i * b, b).noalias() += u(i, j) * rho.middleRows(j * b, b);
    }
  }
  CMatrix out = CMatrix::Zero(dim, dim);
  for (int i = 0; i < b; ++i) {
    for (int j = 0; j < b; ++j) {
      if (u(i, j) != 0.0) {
        out.middleCols(i * b, b).noalias() += std::conj(u(i, j)) * tmp.middleCols(j * b, b);
      }
    }
  }
  return out;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Eigen::VectorXcd coherent_ket(cd alpha, int cutoff) {
  Eigen::VectorXcd c(cutoff + 1);
  c(0) = std::exp(-0.5 * std::norm(alpha));
  for (int n = 1; n <= cutoff; ++n) c(n) = c(n - 1) * alpha / std::sqrt(static_cast<double>(n));
  return c;
}

CMatrix displaced_thermal(cd alpha, double nbar, int cutoff) {
  const auto w = thermal_weights(nbar, cutoff);
  const CMatrix d = single_mode_displacement(alpha, cutoff);
  Eigen::VectorXd wv = Eigen::Map<const Eigen::VectorXd>(w.data(), static_cast<Eigen::Index>(w.size()));
  return d * wv.cast<cd>().asDiagonal() * d.adjoint();
}

// S2 (rho_th x rho_th) S2^dag. The squeezer conserves n1 - n2, so it is
// exponentiated separately on each chain |k + a, k + b>, a - b = delta.
CMatrix squeezed_thermal(double r, double phi, double nbar, int cutoff) {
  const int b = cutoff + 1;
  const auto w = thermal_weights(nbar, cutoff);
  const cd xi = r * std::exp(kI * phi);
  CMatrix rho = CMatrix::Zero(b * b, b * b);
  for (int delta = -cutoff; delta <= cutoff; ++delta) {
    const int a1 = std::max(delta, 0);
    const int a2 = std::max(-delta, 0);
    const int kept = cutoff - std::abs(delta) + 1;
    const int len = kept + kPad;
    CMatrix g = CMatrix::Zero(len, len);
    for (int k = 0; k + 1 < len; ++k) {
      const double s = std::sqrt(static_cast<double>(k + a1 + 1) * (k + a2 + 1));
      g(k + 1, k) = kI * xi * s;
      g(k, k + 1) = -kI * std::conj(xi) * s;
    }
    const CMatrix s = unitary_from_generator(g).topLeftCorner(kept, kept);
    Eigen::VectorXcd weights(kept);
    for (int k = 0; k < kept; ++k) weights(k) = w[k + a1] * w[k + a2];
    const CMatrix block = s * weights.asDiagonal() * s.adjoint();
    for (int k = 0; k < kept; ++k) {
      for (int l = 0; l < kept; ++l) {
        rho((k + a1) * b + (k + a2), (l + a1) * b + (l + a2)) = block(k, l);
      }
    }
  }
  return rho;
}

void check_trace(const FockState& s) {
  const double tr = s.trace();
  if (!(tr >= 1.0 - kTraceTolerance)) {
    std::ostringstream os;
    os.precision(12);
    os << "Fock cutoff " << s.cutoff << " too small: truncated trace " << tr;
    throw CutoffError(os.str(), tr);
  }
}

struct Tables {
  int b = 0;
  std::vector<int> n1, n2;
  std::vector<double> rate;  // sum over modes of (N+1) n + N (a a^dag)
  std::vector<double> sq;    // sqrt(k)
};

Tables make_tables(int cutoff, double nenv) {
  Tables t;
  t.b = cutoff + 1;
  const int dim = t.b * t.b;
  t.n1.resize(dim);
  t.n2.resize(dim);
  t.rate.resize(dim);
  t.sq.resize(t.b + 1);
  for (int k = 0; k <= t.b; ++k) t.sq[k] = std::sqrt(static_cast<double>(k));
  // Truncated a a^dag has a zero at the cutoff, which keeps the trace exact.
  auto aad = [cutoff](int n) { return n < cutoff ? n + 1.0 : 0.0; };
  for (int i = 0; i < dim; ++i) {
    t.n1[i] = i / t.b;
    t.n2[i] = i % t.b;
    t.rate[i] = (nenv + 1.0) * (t.n1[i] + t.n2[i]) + nenv * (aad(t.n1[i]) + aad(t.n2[i]));
  }
  return t;
}

void lindblad_rhs(const Tables& tb, double gamma, double nenv, const CMatrix& rho, CMatrix& out) {
  const int dim = static_cast<int>(rho.rows());
  const int b = tb.b;
  const int last = b - 1;
  const double up = gamma * (nenv + 1.0);
  const double down = gamma * nenv;
  for (int m = 0; m < dim; ++m) {
    const int m1 = tb.n1[m], m2 = tb.n2[m];
    const double rm = tb.rate[m];
    const cd* col = rho.data() + static_cast<std::ptrdiff_t>(m) * dim;
    cd* dst = out.data() + static_cast<std::ptrdiff_t>(m) * dim;
    const cd* col_m1p = (m1 < last) ? col + static_cast<std::ptrdiff_t>(b) * dim : nullptr;
    const cd* col_m2p = (m2 < last) ? col + dim : nullptr;
    const cd* col_m1m = (m1 > 0) ? col - static_cast<std::ptrdiff_t>(b) * dim : nullptr;
    const cd* col_m2m = (m2 > 0) ? col - dim : nullptr;
    for (int n = 0; n < dim; ++n) {
      const int n1 = tb.n1[n], n2 = tb.n2[n];
      cd v = -0.5 * gamma * (tb.rate[n] + rm) * col[n];
      if (col_m1p && n1 < last) v += up * tb.sq[n1 + 1] * tb.sq[m1 + 1] * col_m1p[n + b];
      if (col_m2p && n2 < last) v += up * tb.sq[n2 + 1] * tb.sq[m2 + 1] * col_m2p[n + 1];
      if (col_m1m && n1 > 0) v += down * tb.sq[n1] * tb.sq[m1] * col_m1m[n - b];
      if (col_m2m && n2 > 0) v += down * tb.sq[n2] * tb.sq[m2] * col_m2m[n - 1];
      dst[n] = v;
    }
  }
}

double max_rate(int cutoff, double gamma, double nenv) {
  const Tables tb = make_tables(cutoff, nenv);
  return gamma * *std::max_element(tb.rate.begin(), tb.rate.end());
}

}  // namespace

LindbladConfig LindbladConfig::for_time(const BathParams& bath, double t, int cutoff) {
  validate(bath);
  require_cutoff(cutoff);
  if (bath.m_env != 0.0) {
    throw std::invalid_argument("Fock oracle supports only baths with M_e = 0");
  }
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw std::invalid_argument("evolution time must be finite and >= 0");
  }
  LindbladConfig cfg;
  cfg.gamma = bath.gamma;
  cfg.n_env = bath.n_env;
  cfg.t = t;
  const double by_gamma = std::ceil(bath.gamma * t / kMaxStep - 1e-9);
  const double by_rate = std::ceil(max_rate(cutoff, bath.gamma, bath.n_env) * t / kRk4Reach);
  cfg.steps = static_cast<int>(std::max(by_gamma, by_rate));
  return cfg;
}

std::vector<double> thermal_weights(double nbar, int cutoff) {
  require_cutoff(cutoff);
  if (!(nbar >= 0.0) || !std::isfinite(nbar)) {
    throw std::invalid_argument("mean photon number must be finite and >= 0");
  }
  std::vector<double> w(cutoff + 1);
  const double ratio = nbar / (nbar + 1.0);
  w[0] = 1.0 / (nbar + 1.0);
  for (int k = 1; k <= cutoff; ++k) w[k] = w[k - 1] * ratio;
  return w;
}

FockState fock_probe(const ProbeSpec& spec, int cutoff) {
  validate(spec);
  require_cutoff(cutoff);
  const int b = cutoff + 1;
  FockState out;
  out.cutoff = cutoff;
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, Tmsv>) {
          Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(b * b);
          const cd z = std::exp(kI * p.phi) * std::tanh(p.r);
          cd c = 1.0 / std::cosh(p.r);
          for (int n = 0; n <= cutoff; ++n) {
            psi(n * b + n) = c;
            c *= z;
          }
          out.rho = psi * psi.adjoint();
        } else if constexpr (std::is_same_v<T, Tmdv>) {
          const Eigen::VectorXcd k1 = coherent_ket(p.alpha1, cutoff);
          const Eigen::VectorXcd k2 = coherent_ket(p.alpha2, cutoff);
          Eigen::VectorXcd psi(b * b);
          for (int i = 0; i < b; ++i) psi.segment(i * b, b) = k1(i) * k2;
          out.rho = psi * psi.adjoint();
        } else if constexpr (std::is_same_v<T, Tmst>) {
          out.rho = squeezed_thermal(p.r, p.phi, p.nbar, cutoff);
        } else {
          out.rho = kron(displaced_thermal(p.alpha1, p.nbar, cutoff),
                         displaced_thermal(p.alpha2, p.nbar, cutoff));
        }
      },
      spec);
  check_trace(out);
  return out;
}

FockState lindblad_evolve(const FockState& state, const LindbladConfig& cfg) {
  if (cfg.steps < 0 || !(cfg.t >= 0.0)) throw std::invalid_argument("invalid integrator settings");
  if (cfg.t > 0.0 && cfg.steps == 0) throw std::invalid_argument("integrator needs steps > 0");
  if (cfg.t > 0.0 && cfg.gamma * cfg.t / cfg.steps > kMaxStep * (1.0 + 1e-9)) {
    throw std::invalid_argument("integrator step exceeds gamma dt = 0.01");
  }
  if (cfg.t == 0.0 || cfg.steps == 0) return state;

  const Tables tb = make_tables(state.cutoff, cfg.n_env);
  const double dt = cfg.t / cfg.steps;
  const Eigen::Index dim = state.rho.rows();
  CMatrix rho = state.rho;
  CMatrix k1(dim, dim), k2(dim, dim), k3(dim, dim), k4(dim, dim), tmp(dim, dim);
  for (int s = 0; s < cfg.steps; ++s) {
    lindblad_rhs(tb, cfg.gamma, cfg.n_env, rho, k1);
    tmp = rho + (0.5 * dt) * k1;
    lindblad_rhs(tb, cfg.gamma, cfg.n_env, tmp, k2);
    tmp = rho + (0.5 * dt) * k2;
    lindblad_rhs(tb, cfg.gamma, cfg.n_env, tmp, k3);
    tmp = rho + dt * k3;
    lindblad_rhs(tb, cfg.gamma, cfg.n_env, tmp, k4);
    rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  FockState out{state.cutoff, 0.5 * (rho + rho.adjoint())};
  const double drift = std::abs(out.trace() - state.trace());
  if (!out.rho.allFinite() || !(drift <= kTraceDrift)) {
    std::ostringstream os;
    os << "Lindblad integration unstable (trace drift " << drift << ")";
    throw IntegratorError(os.str());
  }
  return out;
}

FockState displace_mode0(const FockState& state, double theta1, double theta2) {
  const cd beta = cd(theta1, theta2) / std::sqrt(2.0);
  const CMatrix d = single_mode_displacement(beta, state.cutoff);
  return FockState{state.cutoff, apply_mode0(d, state.rho, state.cutoff)};
}

FockMoments fock_moments(const FockState& state) {
  const int b = state.cutoff + 1;
  const int dim = b * b;
  const CMatrix& rho = state.rho;
  const int stride[2] = {b, 1};
  auto count = [b](int idx, int k) { return k == 0 ? idx / b : idx % b; };

  // <a_k>, <a_k a_l>, <a_k^dag a_l> from the lowering action of a on kets.
  cd a1[2] = {0.0, 0.0};
  cd aa[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
  cd ada[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
  for (int n = 0; n < dim; ++n) {
    for (int k = 0; k < 2; ++k) {
      const int nk = count(n, k);
      if (nk == 0) continue;
      const int nl = n - stride[k];
      // Tr(rho a_k) = sum_n sqrt(n_k) rho(n, n - e_k)
      a1[k] += std::sqrt(static_cast<double>(nk)) * rho(n, nl);
      for (int l = 0; l < 2; ++l) {
        const int ml = count(nl, l);
        if (ml == 0) continue;
        const int nll = nl - stride[l];
        aa[k][l] += std::sqrt(static_cast<double>(nk) * ml) * rho(n, nll);
      }
    }
    for (int k = 0; k < 2; ++k) {
      for (int l = 0; l < 2; ++l) {
        // a_k^dag a_l |n> lands on n - e_l + e_k.
        const int nl = count(n, l);
        if (nl == 0) continue;
        const int mid = n - stride[l];
        const int mk = count(mid, k);
        if (mk + 1 > state.cutoff) continue;
        const int tgt = mid + stride[k];
        ada[k][l] += std::sqrt(static_cast<double>(nl) * (mk + 1)) * rho(n, tgt);
      }
    }
  }
  FockMoments m;
  for (int k = 0; k < 2; ++k) {
    m.mean(2 * k) = 2.0 * a1[k].real();
    m.mean(2 * k + 1) = 2.0 * a1[k].imag();
  }
  for (int k = 0; k < 2; ++k) {
    for (int l = 0; l < 2; ++l) {
      const double delta = k == l ? 1.0 : 0.0;
      const cd A = aa[k][l];
      const cd B = ada[k][l];
      m.covariance(2 * k, 2 * l) = 2.0 * (A + B).real() + delta;
      m.covariance(2 * k + 1, 2 * l + 1) = 2.0 * (B - A).real() + delta;
      m.covariance(2 * k, 2 * l + 1) = 2.0 * (A + B).imag();
      m.covariance(2 * l + 1, 2 * k) = m.covariance(2 * k, 2 * l + 1);
    }
  }
  m.covariance -= m.mean * m.mean.transpose();
  return m;
}

NumericQfim qfim_numeric(const ProbeSpec& spec, const BathParams& bath, double t, int cutoff,
                         double h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("step h must be > 0");
  const FockState base = fock_probe(spec, cutoff);
  const LindbladConfig cfg = LindbladConfig::for_time(bath, t, cutoff);
  const CMatrix rho = lindblad_evolve(base, cfg).rho;
  CMatrix d[2];
  for (int mu = 0; mu < 2; ++mu) {
    const double e1 = mu == 0 ? h : 0.0;
    const double e2 = mu == 1 ? h : 0.0;
    const CMatrix plus = lindblad_evolve(displace_mode0(base, e1, e2), cfg).rho;
    const CMatrix minus = lindblad_evolve(displace_mode0(base, -e1, -e2), cfg).rho;
    d[mu] = (plus - minus) / (2.0 * h);
  }

  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho);
  const Eigen::VectorXd& lam = es.eigenvalues();
  const CMatrix& v = es.eigenvectors();
  const Eigen::Index dim = lam.size();
  CMatrix dp[2];
  for (int mu = 0; mu < 2; ++mu) dp[mu] = v.adjoint() * d[mu] * v;

  const double lmax = lam.maxCoeff();
  std::vector<bool> kept(dim);
  for (Eigen::Index k = 0; k < dim; ++k) kept[k] = lam(k) > kRldCut * lmax;

  for (int mu = 0; mu < 2; ++mu) {
    double outside = 0.0;
    for (Eigen::Index k = 0; k < dim; ++k) {
      if (!kept[k]) outside += dp[mu].row(k).squaredNorm();
    }
    const double leak = std::sqrt(outside) / dp[mu].norm();
    if (leak > kSupportLeak) {
      throw DegeneracyError(
          "evolved state is numerically pure on the derivative directions; use t > 0 or nbar > 0",
          leak);
    }
  }

  CMatrix L[2];
  for (int mu = 0; mu < 2; ++mu) {
    L[mu] = CMatrix::Zero(dim, dim);
    for (Eigen::Index l = 0; l < dim; ++l) {
      for (Eigen::Index k = 0; k < dim; ++k) {
        const double s = lam(k) + lam(l);
        if (s > kSldCut) L[mu](k, l) = 2.0 * dp[mu](k, l) / s;
      }
    }
  }

  NumericQfim q;
  for (int mu = 0; mu < 2; ++mu) {
    for (int nu = 0; nu < 2; ++nu) {
      // sum_kl dmu_kl L_nu_lk and sum_kl lam_k L_mu_kl L_nu_lk
      const cd f = (dp[mu].cwiseProduct(L[nu].transpose())).sum();
      const cd u = (lam.cast<cd>().asDiagonal() * L[mu]).cwiseProduct(L[nu].transpose()).sum();
      q.F_S(mu, nu) = f.real();
      q.U(mu, nu) = u.imag();
      cd fr = 0.0;
      for (Eigen::Index k = 0; k < dim; ++k) {
        if (!kept[k]) continue;
        fr += dp[mu].row(k).transpose().cwiseProduct(dp[nu].col(k)).sum() / lam(k);
      }
      q.F_R(mu, nu) = fr;
    }
  }
  q.F_S = 0.5 * (q.F_S + q.F_S.transpose()).eval();
  q.U = 0.5 * (q.U - q.U.transpose()).eval();
  return q;
}

NumericBounds numeric_bounds(const NumericQfim& q) {
  NumericBounds out;
  out.b_s = b_s(QfimReal{q.F_S});
  out.b_r = b_r(QfimComplex{q.F_R, false});
  out.r = quantumness(QfimReal{q.F_S}, q.U);
  return out;
}

}  // namespace gaussprec

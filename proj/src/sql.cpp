#include "gaussprec/sql.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "gaussprec/estimation.hpp"

namespace gaussprec {

namespace {

constexpr double kScanStep = 0.05;
constexpr double kRootTol = 1e-6;
constexpr double kHorizon = 5.0;

}  // namespace

double sql_reference(const BathParams& bath, double t) {
  validate(bath);
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw std::invalid_argument("evolution time must be finite and >= 0");
  }
  const double E = std::exp(bath.gamma * t);
  const double N = bath.n_env;
  return E * (2.0 + 2.0 * N) - 2.0 * N;
}

double crossing_time(const ProbeSpec& probe, const BathParams& bath) {
  validate(bath);
  auto f = [&](double t) { return bound_set(probe, bath, t).b_h_max - sql_reference(bath, t); };
  auto zero = [&](double v, double t) {
    return std::abs(v) <= 1e-12 * (1.0 + sql_reference(bath, t));
  };

  const double stop = kHorizon / bath.gamma;
  const double step = kScanStep / bath.gamma;
  const int n = static_cast<int>(std::lround(stop / step));
  std::vector<double> ts(n + 1), fs(n + 1);
  bool all_zero = true;
  for (int i = 0; i <= n; ++i) {
    ts[i] = (i == n) ? stop : i * step;
    fs[i] = f(ts[i]);
    all_zero = all_zero && zero(fs[i], ts[i]);
  }
  if (all_zero) return std::numeric_limits<double>::infinity();

  for (int i = 0; i < n; ++i) {
    if (fs[i] == 0.0) return ts[i];
    if ((fs[i] < 0.0) == (fs[i + 1] < 0.0) && fs[i + 1] != 0.0) continue;
    double lo = ts[i], hi = ts[i + 1];
    const bool lo_negative = fs[i] < 0.0;
    while (hi - lo > kRootTol) {
      const double mid = 0.5 * (lo + hi);
      const double v = f(mid);
      if ((v < 0.0) == lo_negative) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    return 0.5 * (lo + hi);
  }
  return std::numeric_limits<double>::infinity();
}

}  // namespace gaussprec

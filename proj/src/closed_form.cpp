#include "gaussprec/closed_form.hpp"

#include <cmath>
#include <stdexcept>
#include <variant>

namespace gaussprec {

namespace {

struct Params {
  ProbeFamily family;
  double r = 0.0;  // squeezing, 0 for the displaced families
  double n = 0.0;  // N_e
  double e = 1.0;  // e^{gamma t}
  double em1 = 0.0;  // e^{gamma t} - 1 without cancellation
};

Params prepare(const ProbeSpec& probe, const BathParams& bath, double t) {
  validate(probe);
  validate(bath);
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw std::invalid_argument("evolution time must be finite and >= 0");
  }
  if (bath.m_env != 0.0) {
    throw std::invalid_argument("closed forms assume a bath with M_e = 0");
  }
  Params p;
  p.family = family_of(probe);
  p.n = bath.n_env;
  p.e = std::exp(bath.gamma * t);
  p.em1 = std::expm1(bath.gamma * t);
  if (const auto* s = std::get_if<Tmsv>(&probe)) p.r = s->r;
  if (const auto* s = std::get_if<Tmst>(&probe)) {
    p.r = s->r;
    if (s->nbar != bath.n_env) {
      throw std::invalid_argument("closed forms for the squeezed thermal probe need nbar = N_e");
    }
  }
  if (const auto* s = std::get_if<Tmdt>(&probe)) {
    if (s->nbar != bath.n_env) {
      throw std::invalid_argument("closed forms for the displaced thermal probe need nbar = N_e");
    }
  }
  return p;
}

BoundSet tmsv(const Params& p) {
  const double E = p.e, N = p.n;
  const double c = std::cosh(2.0 * p.r);
  const double s2 = std::pow(std::sinh(2.0 * p.r), 2);
  const double x = (E - 1.0) * (1.0 + 2.0 * N) + c;
  BoundSet b;
  b.b_s = x - s2 / x;
  // Rearranged with sinh^2 2r = (c - 1)(c + 1) so the pure-state value at
  // t = 0 comes out as exactly 0 rather than a difference of O(c) terms:
  //   B_R = 2(E - 1)(1 + N + N (c + 1) / (2(E - 1) N + c - 1)).
  // At r = 0 the quotient term is 2 (its limit as written is 0/0 when N = 0).
  const double sh = std::sinh(p.r);
  const double den = 2.0 * p.em1 * N + 2.0 * sh * sh;
  b.b_r = sh == 0.0 ? 2.0 * p.em1 * (1.0 + N) + 2.0
                    : 2.0 * p.em1 * (1.0 + N + N * (c + 1.0) / den);
  b.r = E / x;
  b.b_h_max = (1.0 + E / x) * (x - s2 / x);
  return b;
}

BoundSet tmdv(const Params& p) {
  const double E = p.e, N = p.n;
  BoundSet b;
  b.b_s = E * (1.0 + 2.0 * N) - 2.0 * N;
  b.b_r = E * (1.0 + 2.0 * N) + E - 2.0 * N;
  b.r = E / (E - 2.0 * N * (1.0 - E));
  b.b_h_max = b.b_r;
  return b;
}

BoundSet tmst(const Params& p) {
  const double E = p.e, N = p.n;
  const double c = std::cosh(2.0 * p.r);
  const double sh2 = std::pow(std::sinh(p.r), 2);
  const double poly = 2.0 - 2.0 * E + E * E + 2.0 * (E - 1.0) * c;
  BoundSet b;
  b.b_s = (1.0 + 2.0 * N) * poly / (c + E - 1.0);
  if (sh2 == 0.0) {
    b.b_r = 2.0 * (1.0 + N) * E;
  } else {
    b.b_r = (2.0 * N * (1.0 + N) * E * E + 2.0 * (E - 1.0) * std::pow(1.0 + 2.0 * N, 2) * sh2) /
            (N * E + (1.0 + 2.0 * N) * sh2);
  }
  b.r = E / ((1.0 + 2.0 * N) * (E + c - 1.0));
  b.b_h_max = poly * (2.0 * E * (1.0 + N) + (2.0 + 4.0 * N) * sh2) / std::pow(E + c - 1.0, 2);
  return b;
}

BoundSet tmdt(const Params& p) {
  const double E = p.e, N = p.n;
  BoundSet b;
  b.b_s = E * (1.0 + 2.0 * N);
  b.b_r = E * (1.0 + 2.0 * N) + E;
  b.r = 1.0 / (1.0 + 2.0 * N);
  b.b_h_max = b.b_r;
  return b;
}

}  // namespace

BoundSet closed_form_bounds(const ProbeSpec& probe, const BathParams& bath, double t,
                            std::optional<double> phi_hd) {
  const Params p = prepare(probe, bath, t);
  BoundSet b;
  switch (p.family) {
    case ProbeFamily::tmsv: b = tmsv(p); break;
    case ProbeFamily::tmdv: b = tmdv(p); break;
    case ProbeFamily::tmst: b = tmst(p); break;
    case ProbeFamily::tmdt: b = tmdt(p); break;
  }
  if (phi_hd) b.b_hd = hd_bound_closed_form(probe, bath, t, *phi_hd);
  return b;
}

double hd_bound_closed_form(const ProbeSpec& probe, const BathParams& bath, double t,
                            double phi) {
  if (!std::isfinite(phi)) throw std::invalid_argument("homodyne angle must be finite");
  const Params p = prepare(probe, bath, t);
  const double E = p.e, N = p.n;
  const double angle = 3.0 + std::cos(2.0 * phi);
  switch (p.family) {
    case ProbeFamily::tmsv: {
      const double c = std::cosh(2.0 * p.r);
      const double s2 = std::pow(std::sinh(2.0 * p.r), 2);
      const double a = 2.0 * N * (E - 1.0) + E * E * (1.0 + std::pow(std::cos(phi), 2));
      return a + c - s2 / (a + c - 1.0);
    }
    case ProbeFamily::tmdv:
      return 2.0 * N * (E - 1.0) + 0.5 * E * E * angle;
    case ProbeFamily::tmst: {
      const double sh2 = std::pow(std::sinh(p.r), 2);
      const double s2 = std::pow(std::sinh(2.0 * p.r), 2);
      return 2.0 * N * E + 0.5 * E * E * angle + (2.0 + 4.0 * N) * sh2 -
             2.0 * std::pow(1.0 + 2.0 * N, 2) * s2 /
                 (4.0 * N * E + E * E * angle + (4.0 + 8.0 * N) * sh2);
    }
    case ProbeFamily::tmdt:
      return 2.0 * N * E + 0.5 * E * E * angle;
  }
  throw std::logic_error("unhandled probe family");
}

double tmst_bh_max_sinh2r_variant(double r, double n_env, double gamma, double t) {
  const Params p = prepare(Tmst{r, 0.0, n_env}, BathParams{gamma, n_env, 0.0}, t);
  const double E = p.e, N = p.n;
  const double c = std::cosh(2.0 * r);
  const double s2 = std::pow(std::sinh(2.0 * r), 2);
  const double poly = 2.0 - 2.0 * E + E * E + 2.0 * (E - 1.0) * c;
  return poly * (2.0 * E * (1.0 + N) + (2.0 + 4.0 * N) * s2) / std::pow(E + c - 1.0, 2);
}

}  // namespace gaussprec

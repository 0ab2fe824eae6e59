#pragma once

// Probe-specific analytic bounds. Independent of the moment pipeline and
// used as its oracle.

#include <optional>

#include "gaussprec/estimation.hpp"

namespace gaussprec {

/// B_S, B_R, R, B_H_max for the four families, and B_HD when phi_hd is set.
/// Requires M_e = 0 and, for the thermal families, nbar = N_e.
/// Where an expression is 0/0 (r = 0 with N_e = 0) its r = 0 restriction is
/// used.
BoundSet closed_form_bounds(const ProbeSpec& probe, const BathParams& bath, double t,
                            std::optional<double> phi_hd = std::nullopt);

/// Homodyne/heterodyne bound B_HD(phi). Not ordered with respect to B_S, B_R.
double hd_bound_closed_form(const ProbeSpec& probe, const BathParams& bath, double t,
                            double phi);

/// TMST upper bound with sinh(2r)^2 where (1 + R) B_S has (2 + 4N) sinh(r)^2.
/// Disagrees with (1 + R) B_S; kept for comparison only.
double tmst_bh_max_sinh2r_variant(double r, double n_env, double gamma, double t);

}  // namespace gaussprec

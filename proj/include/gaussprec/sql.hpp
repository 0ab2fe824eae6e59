#pragma once

#include "gaussprec/probes.hpp"
#include "gaussprec/thermal_channel.hpp"

namespace gaussprec {

/// Standard quantum limit: B_H of a coherent (TMDV) probe,
/// e^{gamma t}(2 + 2 N_e) - 2 N_e.
double sql_reference(const BathParams& bath, double t);

/// Smallest t in [0, 5/gamma] where B_H_max(probe, t) meets the SQL.
/// Sign-change scan at step 0.05/gamma, then bisection to 1e-6.
/// Returns +infinity when there is no crossing, including when the two
/// curves coincide.
double crossing_time(const ProbeSpec& probe, const BathParams& bath);

}  // namespace gaussprec

#pragma once

#include <complex>
#include <string>
#include <string_view>
#include <variant>

#include <json.hpp>

#include "gaussprec/phase_space.hpp"

namespace gaussprec {

// The four two-mode probe families, all reductions of
// S2(xi) D(alpha) (rho_th x rho_th) D(alpha)^dag S2(xi)^dag.

/// Two-mode squeezed vacuum.
struct Tmsv {
  double r = 0.0;
  double phi = 0.0;
  bool operator==(const Tmsv&) const = default;
};

/// Two-mode displaced (coherent) vacuum.
struct Tmdv {
  std::complex<double> alpha1 = 0.0;
  std::complex<double> alpha2 = 0.0;
  bool operator==(const Tmdv&) const = default;
};

/// Two-mode squeezed thermal state.
struct Tmst {
  double r = 0.0;
  double phi = 0.0;
  double nbar = 0.0;
  bool operator==(const Tmst&) const = default;
};

/// Two-mode displaced thermal state.
struct Tmdt {
  std::complex<double> alpha1 = 0.0;
  std::complex<double> alpha2 = 0.0;
  double nbar = 0.0;
  bool operator==(const Tmdt&) const = default;
};

using ProbeSpec = std::variant<Tmsv, Tmdv, Tmst, Tmdt>;

enum class ProbeFamily { tmsv, tmdv, tmst, tmdt };

ProbeFamily family_of(const ProbeSpec& spec);
std::string_view to_string(ProbeFamily family);
/// Accepts "tmsv", "tmdv", "tmst", "tmdt" (case-insensitive).
ProbeFamily parse_family(std::string_view name);

/// r >= 0 and nbar >= 0, all parameters finite.
void validate(const ProbeSpec& spec);

/// Closed-form moments of the probe before any encoding or noise.
GaussianState build_probe(const ProbeSpec& spec);

/// Canonical serialization, e.g.
/// {"family": "tmst", "r": 0.4, "phi": 0.0, "nbar": 0.5} or
/// {"family": "tmdv", "alpha1": [0.5, 0.0], "alpha2": [0.0, 0.0]}.
nlohmann::json to_json(const ProbeSpec& spec);

/// Inverse of to_json. Missing optional fields (phi, alpha2) default to 0.
/// Throws std::invalid_argument naming the offending field.
ProbeSpec probe_from_json(const nlohmann::json& j);

}  // namespace gaussprec

#pragma once

// Scenario files for the command-line front end. JSON, e.g.
//
//   {
//     "probe": {"family": "tmst", "r": 0.4, "nbar": "N_e"},
//     "bath": {"gamma": 1.0, "N_e": 0.5},
//     "t": 0.0,
//     "phi_hd": 0.7853981633974483,
//     "sweep": {"axis": "t", "start": 0, "stop": 2, "points": 201},
//     "outputs": ["B_S", "B_R", "R", "B_H_max", "B_HD", "SQL"]
//   }
//
// "nbar": "N_e" ties the probe's thermal occupation to the bath.

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gaussprec/estimation.hpp"

namespace gaussprec {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& message, std::string field = {}, int line = 0);

  const std::string& field() const noexcept { return field_; }
  int line() const noexcept { return line_; }  // 0 when unknown

 private:
  std::string field_;
  int line_;
};

enum class SweepAxis { t, r, n_env, phi_hd };

std::string_view to_string(SweepAxis axis);
SweepAxis parse_axis(std::string_view name);

struct SweepSpec {
  SweepAxis axis = SweepAxis::t;
  double start = 0.0;
  double stop = 0.0;
  int points = 1;

  /// start + i (stop - start) / (points - 1); a single point is `start`.
  std::vector<double> values() const;
};

enum class Output { b_s, b_r, r, b_h_max, b_hd, sql };

std::string_view column_name(Output o);

struct ScenarioConfig {
  ProbeSpec probe = Tmsv{};
  bool nbar_tracks_env = false;
  BathParams bath;
  double t = 0.0;
  std::optional<double> phi_hd;
  std::optional<SweepSpec> sweep;
  std::vector<Output> outputs;  // in column order
};

/// Parameters of one evaluation point.
struct ScenarioPoint {
  ProbeSpec probe;
  BathParams bath;
  double t = 0.0;
  std::optional<double> phi_hd;
};

/// Throws ConfigError with the offending field and, where it can be located,
/// the line in `text`.
ScenarioConfig parse_scenario(std::string_view text);
ScenarioConfig load_scenario(const std::filesystem::path& path);

/// The fixed point, or the point where the swept axis takes `value`.
ScenarioPoint point_at(const ScenarioConfig& cfg, std::optional<double> value = std::nullopt);

}  // namespace gaussprec

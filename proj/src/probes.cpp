#include "gaussprec/probes.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>
#include <string>

namespace gaussprec {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) {
    throw std::invalid_argument(std::string("probe parameter '") + name + "' must be finite");
  }
}

void require_nonnegative(double v, const char* name) {
  require_finite(v, name);
  if (v < 0.0) {
    throw std::invalid_argument(std::string("probe parameter '") + name + "' must be >= 0");
  }
}

void require_finite(std::complex<double> v, const char* name) {
  require_finite(v.real(), name);
  require_finite(v.imag(), name);
}

Matrix squeezed_vacuum_covariance(double r, double phi) {
  Eigen::Matrix2d rphi;
  rphi << std::cos(phi), std::sin(phi), std::sin(phi), -std::cos(phi);
  const Eigen::Matrix2d diag = std::cosh(2.0 * r) * Eigen::Matrix2d::Identity();
  const Eigen::Matrix2d off = std::sinh(2.0 * r) * rphi;
  Matrix s(4, 4);
  s << diag, off, off, diag;
  return s;
}

Vector coherent_mean(std::complex<double> a1, std::complex<double> a2) {
  Vector d(4);
  d << 2.0 * a1.real(), 2.0 * a1.imag(), 2.0 * a2.real(), 2.0 * a2.imag();
  return d;
}

double number_field(const nlohmann::json& j, const char* key, bool required) {
  if (!j.contains(key)) {
    if (required) throw std::invalid_argument(std::string("probe field '") + key + "' is missing");
    return 0.0;
  }
  const auto& v = j.at(key);
  if (!v.is_number()) {
    throw std::invalid_argument(std::string("probe field '") + key + "' must be a number");
  }
  return v.get<double>();
}

std::complex<double> complex_field(const nlohmann::json& j, const char* key, bool required) {
  if (!j.contains(key)) {
    if (required) throw std::invalid_argument(std::string("probe field '") + key + "' is missing");
    return 0.0;
  }
  const auto& v = j.at(key);
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  throw std::invalid_argument(std::string("probe field '") + key +
                              "' must be a number or a [re, im] pair");
}

nlohmann::json complex_json(std::complex<double> z) {
  return nlohmann::json::array({z.real(), z.imag()});
}

}  // namespace

ProbeFamily family_of(const ProbeSpec& spec) {
  return std::visit(overloaded{[](const Tmsv&) { return ProbeFamily::tmsv; },
                               [](const Tmdv&) { return ProbeFamily::tmdv; },
                               [](const Tmst&) { return ProbeFamily::tmst; },
                               [](const Tmdt&) { return ProbeFamily::tmdt; }},
                    spec);
}

std::string_view to_string(ProbeFamily family) {
  switch (family) {
    case ProbeFamily::tmsv: return "tmsv";
    case ProbeFamily::tmdv: return "tmdv";
    case ProbeFamily::tmst: return "tmst";
    case ProbeFamily::tmdt: return "tmdt";
  }
  return "unknown";
}

ProbeFamily parse_family(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "tmsv") return ProbeFamily::tmsv;
  if (lower == "tmdv") return ProbeFamily::tmdv;
  if (lower == "tmst") return ProbeFamily::tmst;
  if (lower == "tmdt") return ProbeFamily::tmdt;
  throw std::invalid_argument("unknown probe family '" + std::string(name) + "'");
}

void validate(const ProbeSpec& spec) {
  std::visit(overloaded{
                 [](const Tmsv& p) {
                   require_nonnegative(p.r, "r");
                   require_finite(p.phi, "phi");
                 },
                 [](const Tmdv& p) {
                   require_finite(p.alpha1, "alpha1");
                   require_finite(p.alpha2, "alpha2");
                 },
                 [](const Tmst& p) {
                   require_nonnegative(p.r, "r");
                   require_finite(p.phi, "phi");
                   require_nonnegative(p.nbar, "nbar");
                 },
                 [](const Tmdt& p) {
                   require_finite(p.alpha1, "alpha1");
                   require_finite(p.alpha2, "alpha2");
                   require_nonnegative(p.nbar, "nbar");
                 }},
             spec);
}

GaussianState build_probe(const ProbeSpec& spec) {
  validate(spec);
  return std::visit(
      overloaded{
          [](const Tmsv& p) {
            return GaussianState(Vector::Zero(4), squeezed_vacuum_covariance(p.r, p.phi));
          },
          [](const Tmdv& p) {
            return GaussianState(coherent_mean(p.alpha1, p.alpha2), Matrix::Identity(4, 4));
          },
          // The (2 nbar + 1) factor multiplies the whole squeezed block matrix.
          [](const Tmst& p) {
            return GaussianState(Vector::Zero(4), (2.0 * p.nbar + 1.0) *
                                                      squeezed_vacuum_covariance(p.r, p.phi));
          },
          [](const Tmdt& p) {
            return GaussianState(coherent_mean(p.alpha1, p.alpha2),
                                 (2.0 * p.nbar + 1.0) * Matrix::Identity(4, 4));
          }},
      spec);
}

nlohmann::json to_json(const ProbeSpec& spec) {
  return std::visit(
      overloaded{[](const Tmsv& p) {
                   return nlohmann::json{{"family", "tmsv"}, {"r", p.r}, {"phi", p.phi}};
                 },
                 [](const Tmdv& p) {
                   return nlohmann::json{{"family", "tmdv"},
                                         {"alpha1", complex_json(p.alpha1)},
                                         {"alpha2", complex_json(p.alpha2)}};
                 },
                 [](const Tmst& p) {
                   return nlohmann::json{
                       {"family", "tmst"}, {"r", p.r}, {"phi", p.phi}, {"nbar", p.nbar}};
                 },
                 [](const Tmdt& p) {
                   return nlohmann::json{{"family", "tmdt"},
                                         {"alpha1", complex_json(p.alpha1)},
                                         {"alpha2", complex_json(p.alpha2)},
                                         {"nbar", p.nbar}};
                 }},
      spec);
}

ProbeSpec probe_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("probe must be an object");
  if (!j.contains("family") || !j.at("family").is_string()) {
    throw std::invalid_argument("probe field 'family' must be a string");
  }
  ProbeSpec spec;
  switch (parse_family(j.at("family").get<std::string>())) {
    case ProbeFamily::tmsv:
      spec = Tmsv{number_field(j, "r", true), number_field(j, "phi", false)};
      break;
    case ProbeFamily::tmdv:
      spec = Tmdv{complex_field(j, "alpha1", false), complex_field(j, "alpha2", false)};
      break;
    case ProbeFamily::tmst:
      spec = Tmst{number_field(j, "r", true), number_field(j, "phi", false),
                  number_field(j, "nbar", true)};
      break;
    case ProbeFamily::tmdt:
      spec = Tmdt{complex_field(j, "alpha1", false), complex_field(j, "alpha2", false),
                  number_field(j, "nbar", true)};
      break;
  }
  validate(spec);
  return spec;
}

}  // namespace gaussprec

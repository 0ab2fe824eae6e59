#include "gaussprec/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace gaussprec {

namespace {

using nlohmann::json;

std::string format_message(const std::string& message, const std::string& field, int line) {
  std::string out;
  if (line > 0) out += "line " + std::to_string(line) + ": ";
  if (!field.empty()) out += "'" + field + "': ";
  return out + message;
}

int line_of_offset(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + offset, '\n'));
}

// Best effort: the line of the first occurrence of the quoted key.
int line_of_key(std::string_view text, const std::string& key) {
  const std::string quoted = "\"" + key + "\"";
  const auto pos = text.find(quoted);
  return pos == std::string_view::npos ? 0 : line_of_offset(text, pos);
}

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  [[noreturn]] void fail(const std::string& field, const std::string& message) const {
    const auto dot = field.rfind('.');
    const std::string key = dot == std::string::npos ? field : field.substr(dot + 1);
    throw ConfigError(message, field, line_of_key(text_, key));
  }

  double number(const json& j, const std::string& field) const {
    if (!j.is_number()) fail(field, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) fail(field, "must be finite");
    return v;
  }

  std::complex<double> complex(const json& j, const std::string& field) const {
    if (j.is_number()) return {number(j, field), 0.0};
    if (j.is_array() && j.size() == 2) return {number(j[0], field), number(j[1], field)};
    fail(field, "expected a number or a [re, im] pair");
  }

  void only_keys(const json& obj, const std::string& where,
                 std::initializer_list<const char*> keys) const {
    const std::set<std::string> allowed(keys.begin(), keys.end());
    for (const auto& [k, v] : obj.items()) {
      if (!allowed.count(k)) fail(where.empty() ? k : where + "." + k, "unknown key");
    }
  }

 private:
  std::string_view text_;
};

bool is_squeezed(const ProbeSpec& p) {
  return std::holds_alternative<Tmsv>(p) || std::holds_alternative<Tmst>(p);
}

bool is_thermal(const ProbeSpec& p) {
  return std::holds_alternative<Tmst>(p) || std::holds_alternative<Tmdt>(p);
}

void set_nbar(ProbeSpec& p, double nbar) {
  if (auto* s = std::get_if<Tmst>(&p)) s->nbar = nbar;
  if (auto* s = std::get_if<Tmdt>(&p)) s->nbar = nbar;
}

double get_nbar(const ProbeSpec& p) {
  if (const auto* s = std::get_if<Tmst>(&p)) return s->nbar;
  if (const auto* s = std::get_if<Tmdt>(&p)) return s->nbar;
  return 0.0;
}

bool wants(const ScenarioConfig& c, Output o) {
  return std::find(c.outputs.begin(), c.outputs.end(), o) != c.outputs.end();
}

}  // namespace

ConfigError::ConfigError(const std::string& message, std::string field, int line)
    : std::runtime_error(format_message(message, field, line)),
      field_(std::move(field)),
      line_(line) {}

std::string_view to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::t: return "t";
    case SweepAxis::r: return "r";
    case SweepAxis::n_env: return "N_e";
    case SweepAxis::phi_hd: return "phi_hd";
  }
  return "unknown";
}

SweepAxis parse_axis(std::string_view name) {
  if (name == "t") return SweepAxis::t;
  if (name == "r") return SweepAxis::r;
  if (name == "N_e" || name == "n_env") return SweepAxis::n_env;
  if (name == "phi_hd") return SweepAxis::phi_hd;
  throw std::invalid_argument("unknown sweep axis '" + std::string(name) +
                              "' (expected t, r, N_e or phi_hd)");
}

std::vector<double> SweepSpec::values() const {
  std::vector<double> v(points);
  for (int i = 0; i < points; ++i) {
    v[i] = points == 1 ? start : start + (stop - start) * i / (points - 1);
  }
  if (points > 1) v.back() = stop;
  return v;
}

std::string_view column_name(Output o) {
  switch (o) {
    case Output::b_s: return "B_S";
    case Output::b_r: return "B_R";
    case Output::r: return "R";
    case Output::b_h_max: return "B_H_max";
    case Output::b_hd: return "B_HD";
    case Output::sql: return "SQL";
  }
  return "unknown";
}

ScenarioPoint point_at(const ScenarioConfig& cfg, std::optional<double> value) {
  ScenarioPoint p{cfg.probe, cfg.bath, cfg.t, cfg.phi_hd};
  if (value && cfg.sweep) {
    switch (cfg.sweep->axis) {
      case SweepAxis::t: p.t = *value; break;
      case SweepAxis::r:
        if (auto* s = std::get_if<Tmsv>(&p.probe)) s->r = *value;
        if (auto* s = std::get_if<Tmst>(&p.probe)) s->r = *value;
        break;
      case SweepAxis::n_env: p.bath.n_env = *value; break;
      case SweepAxis::phi_hd: p.phi_hd = *value; break;
    }
  }
  if (cfg.nbar_tracks_env) set_nbar(p.probe, p.bath.n_env);
  return p;
}

ScenarioConfig parse_scenario(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError("malformed JSON: " + std::string(e.what()), {},
                      line_of_offset(text, e.byte == 0 ? 0 : e.byte - 1));
  }
  const Reader rd(text);
  if (!doc.is_object()) rd.fail("", "scenario must be a JSON object");
  rd.only_keys(doc, "", {"probe", "bath", "t", "phi_hd", "sweep", "outputs"});

  ScenarioConfig cfg;

  // bath
  if (doc.contains("bath")) {
    const json& b = doc.at("bath");
    if (!b.is_object()) rd.fail("bath", "expected an object");
    rd.only_keys(b, "bath", {"gamma", "N_e", "M_e"});
    if (b.contains("gamma")) cfg.bath.gamma = rd.number(b.at("gamma"), "bath.gamma");
    if (b.contains("N_e")) cfg.bath.n_env = rd.number(b.at("N_e"), "bath.N_e");
    if (b.contains("M_e")) cfg.bath.m_env = rd.complex(b.at("M_e"), "bath.M_e");
  }
  try {
    validate(cfg.bath);
  } catch (const std::invalid_argument& e) {
    rd.fail("bath", e.what());
  }

  // probe
  if (!doc.contains("probe")) rd.fail("probe", "missing");
  json probe = doc.at("probe");
  if (!probe.is_object()) rd.fail("probe", "expected an object");
  rd.only_keys(probe, "probe", {"family", "r", "phi", "nbar", "alpha1", "alpha2"});
  if (probe.contains("nbar") && probe.at("nbar").is_string()) {
    const auto s = probe.at("nbar").get<std::string>();
    if (s != "N_e" && s != "n_env") rd.fail("probe.nbar", "expected a number or \"N_e\"");
    cfg.nbar_tracks_env = true;
    probe["nbar"] = cfg.bath.n_env;
  }
  try {
    cfg.probe = probe_from_json(probe);
  } catch (const std::invalid_argument& e) {
    std::string field = "probe";
    const std::string msg = e.what();
    const auto q1 = msg.find('\'');
    const auto q2 = q1 == std::string::npos ? q1 : msg.find('\'', q1 + 1);
    if (q2 != std::string::npos) field += "." + msg.substr(q1 + 1, q2 - q1 - 1);
    rd.fail(field, msg);
  }
  if (cfg.nbar_tracks_env && !is_thermal(cfg.probe)) {
    rd.fail("probe.nbar", "only thermal probe families take nbar");
  }

  if (doc.contains("t")) {
    cfg.t = rd.number(doc.at("t"), "t");
    if (cfg.t < 0.0) rd.fail("t", "must be >= 0");
  }
  if (doc.contains("phi_hd")) cfg.phi_hd = rd.number(doc.at("phi_hd"), "phi_hd");

  if (doc.contains("sweep")) {
    const json& s = doc.at("sweep");
    if (!s.is_object()) rd.fail("sweep", "expected an object");
    rd.only_keys(s, "sweep", {"axis", "start", "stop", "points"});
    SweepSpec sw;
    if (!s.contains("axis") || !s.at("axis").is_string()) rd.fail("sweep.axis", "expected a string");
    try {
      sw.axis = parse_axis(s.at("axis").get<std::string>());
    } catch (const std::invalid_argument& e) {
      rd.fail("sweep.axis", e.what());
    }
    if (!s.contains("start")) rd.fail("sweep.start", "missing");
    sw.start = rd.number(s.at("start"), "sweep.start");
    sw.stop = s.contains("stop") ? rd.number(s.at("stop"), "sweep.stop") : sw.start;
    if (!s.contains("points") || !s.at("points").is_number_integer()) {
      rd.fail("sweep.points", "expected an integer");
    }
    const auto pts = s.at("points").get<long long>();
    if (pts < 1 || pts > 1000000) rd.fail("sweep.points", "must lie in [1, 1000000]");
    sw.points = static_cast<int>(pts);
    if (sw.axis == SweepAxis::r && !is_squeezed(cfg.probe)) {
      rd.fail("sweep.axis", "an r sweep needs a squeezed probe family");
    }
    const double lo = std::min(sw.start, sw.stop);
    if (sw.axis != SweepAxis::phi_hd && lo < 0.0) {
      rd.fail("sweep.start", "swept " + std::string(to_string(sw.axis)) + " must be >= 0");
    }
    cfg.sweep = sw;
  }

  const bool hd_possible = cfg.phi_hd || (cfg.sweep && cfg.sweep->axis == SweepAxis::phi_hd);
  if (doc.contains("outputs")) {
    const json& o = doc.at("outputs");
    if (!o.is_array() || o.empty()) rd.fail("outputs", "expected a non-empty array of names");
    for (const auto& item : o) {
      if (!item.is_string()) rd.fail("outputs", "expected names");
      const auto name = item.get<std::string>();
      bool found = false;
      for (Output c : {Output::b_s, Output::b_r, Output::r, Output::b_h_max, Output::b_hd,
                       Output::sql}) {
        if (name == column_name(c)) {
          if (std::find(cfg.outputs.begin(), cfg.outputs.end(), c) != cfg.outputs.end()) {
            rd.fail("outputs", "duplicate output '" + name + "'");
          }
          cfg.outputs.push_back(c);
          found = true;
        }
      }
      if (!found) rd.fail("outputs", "unknown output '" + name + "'");
    }
  } else {
    cfg.outputs = {Output::b_s, Output::b_r, Output::r, Output::b_h_max};
    if (hd_possible) cfg.outputs.push_back(Output::b_hd);
    cfg.outputs.push_back(Output::sql);
  }
  if (wants(cfg, Output::b_hd)) {
    if (!hd_possible) rd.fail("outputs", "B_HD needs phi_hd or a phi_hd sweep");
    if (cfg.bath.m_env != 0.0) rd.fail("bath.M_e", "B_HD is only defined for M_e = 0");
    if (is_thermal(cfg.probe) && !cfg.nbar_tracks_env && get_nbar(cfg.probe) != cfg.bath.n_env) {
      rd.fail("probe.nbar", "B_HD needs nbar = N_e (use \"nbar\": \"N_e\")");
    }
    if (is_thermal(cfg.probe) && !cfg.nbar_tracks_env && cfg.sweep &&
        cfg.sweep->axis == SweepAxis::n_env) {
      rd.fail("probe.nbar", "B_HD on an N_e sweep needs \"nbar\": \"N_e\"");
    }
  }

  // Every grid point must be a valid probe and bath.
  std::vector<std::optional<double>> values{std::nullopt};
  if (cfg.sweep) {
    values.clear();
    for (double v : cfg.sweep->values()) values.emplace_back(v);
  }
  for (const auto& v : values) {
    const ScenarioPoint p = point_at(cfg, v);
    try {
      validate(p.probe);
      validate(p.bath);
    } catch (const std::invalid_argument& e) {
      rd.fail(cfg.sweep ? "sweep" : "probe", e.what());
    }
  }
  return cfg;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read scenario file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

}  // namespace gaussprec

#include "gaussprec/commands.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "gaussprec/closed_form.hpp"
#include "gaussprec/errors.hpp"
#include "gaussprec/fock_oracle.hpp"
#include "gaussprec/parallel.hpp"
#include "gaussprec/sql.hpp"

namespace gaussprec {

namespace {

struct PointValues {
  BoundSet bounds;
  double sql = 0.0;
};

bool wants(const ScenarioConfig& c, Output o) {
  return std::find(c.outputs.begin(), c.outputs.end(), o) != c.outputs.end();
}

PointValues evaluate(const ScenarioConfig& cfg, const ScenarioPoint& p) {
  PointValues v;
  v.bounds = bound_set(p.probe, p.bath, p.t);
  if (wants(cfg, Output::b_hd)) {
    v.bounds.b_hd = hd_bound_closed_form(p.probe, p.bath, p.t, p.phi_hd.value());
  }
  v.sql = sql_reference(p.bath, p.t);
  return v;
}

double pick(const PointValues& v, Output o) {
  switch (o) {
    case Output::b_s: return v.bounds.b_s;
    case Output::b_r: return v.bounds.b_r;
    case Output::r: return v.bounds.r;
    case Output::b_h_max: return v.bounds.b_h_max;
    case Output::b_hd: return v.bounds.b_hd.value();
    case Output::sql: return v.sql;
  }
  return std::nan("");
}

std::vector<std::optional<double>> sweep_points(const ScenarioConfig& cfg) {
  std::vector<std::optional<double>> pts;
  if (cfg.sweep) {
    for (double x : cfg.sweep->values()) pts.emplace_back(x);
  } else {
    pts.emplace_back(std::nullopt);
  }
  return pts;
}

double axis_value(const ScenarioConfig& cfg, const std::optional<double>& x) {
  return x ? *x : cfg.t;
}

std::string axis_title(const ScenarioConfig& cfg) {
  return cfg.sweep ? std::string(to_string(cfg.sweep->axis)) : "t";
}

ScenarioConfig load_or_throw(const std::string& path) {
  if (path.empty()) throw ConfigError("--config is required");
  return load_scenario(path);
}

}  // namespace

void cmd_bounds(const ScenarioConfig& cfg, std::ostream& out) {
  const ScenarioPoint p = point_at(cfg);
  const PointValues v = evaluate(cfg, p);
  std::ostringstream os;
  os << "family = " << to_string(family_of(p.probe)) << '\n';
  os << "t = " << format_double(p.t) << '\n';
  for (Output o : cfg.outputs) os << column_name(o) << " = " << format_double(pick(v, o)) << '\n';
  out << os.str();
}

CsvTable sweep_table(const ScenarioConfig& cfg) {
  CsvTable table;
  table.name = "sweep";
  table.header.push_back(axis_title(cfg));
  for (Output o : cfg.outputs) table.header.emplace_back(column_name(o));
  const auto pts = sweep_points(cfg);
  table.rows = parallel_map<std::vector<double>>(pts.size(), [&](std::size_t i) {
    const PointValues v = evaluate(cfg, point_at(cfg, pts[i]));
    std::vector<double> row{axis_value(cfg, pts[i])};
    for (Output o : cfg.outputs) row.push_back(pick(v, o));
    return row;
  });
  return table;
}

void cmd_sweep(const ScenarioConfig& cfg, const std::filesystem::path& out) {
  write_csv(sweep_table(cfg), out);
}

std::vector<std::filesystem::path> cmd_figure(int figure, const std::filesystem::path& out_dir) {
  const auto tables = figure_tables(figure);
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw std::runtime_error("cannot create '" + out_dir.string() + "': " + ec.message());
  std::vector<std::filesystem::path> written;
  for (const auto& t : tables) {
    const auto file = out_dir / (t.name + ".csv");
    write_csv(t, file);
    written.push_back(file);
  }
  return written;
}

int cmd_oracle_check(const ScenarioConfig& cfg, int cutoff, double rel_tol, std::ostream& out) {
  if (!(rel_tol > 0.0)) throw ConfigError("tolerance must be > 0", "--tol");
  if (cutoff < 1) throw ConfigError("cutoff must be >= 1", "--cutoff");
  const auto pts = sweep_points(cfg);
  struct Row {
    double x;
    BoundSet gauss;
    NumericBounds fock;
  };
  const auto rows = parallel_map<Row>(pts.size(), [&](std::size_t i) {
    const ScenarioPoint p = point_at(cfg, pts[i]);
    return Row{axis_value(cfg, pts[i]), bound_set(p.probe, p.bath, p.t),
               numeric_bounds(qfim_numeric(p.probe, p.bath, p.t, cutoff))};
  });

  std::ostringstream os;
  os << "oracle-check  family=" << to_string(family_of(cfg.probe)) << "  cutoff=" << cutoff
     << "  tol=" << rel_tol << '\n';
  os << std::left << std::setw(10) << axis_title(cfg) << std::setw(10) << "quantity"
     << std::setw(22) << "gaussian" << std::setw(22) << "fock" << std::setw(14) << "rel_diff"
     << "status\n";
  bool ok = true;
  for (const Row& r : rows) {
    const std::pair<const char*, std::pair<double, double>> items[] = {
        {"B_S", {r.gauss.b_s, r.fock.b_s}},
        {"B_R", {r.gauss.b_r, r.fock.b_r}},
        {"R", {r.gauss.r, r.fock.r}}};
    for (const auto& [name, vals] : items) {
      const double rel = std::abs(vals.second - vals.first) / std::abs(vals.first);
      const bool pass = rel <= rel_tol;
      ok = ok && pass;
      os << std::setw(10) << std::setprecision(6) << r.x << std::setw(10) << name << std::setprecision(15)
         << std::setw(22) << vals.first << std::setw(22) << vals.second << std::setprecision(3)
         << std::setw(14) << rel << (pass ? "PASS" : "FAIL") << '\n';
    }
  }
  os << (ok ? "PASS" : "FAIL") << '\n';
  out << os.str();
  return ok ? kExitOk : kExitOracleMismatch;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Precision bounds for displacement estimation with Gaussian probes"};
  app.require_subcommand(1);
  std::string config, out_path, fig_dir = ".";
  int cutoff = 30;
  double tol = 1e-3;
  int figure = 0;

  auto* bounds = app.add_subcommand("bounds", "Print the bound set at the scenario point");
  bounds->add_option("--config", config, "Scenario file")->required();
  bounds->add_option("--out", out_path, "Write to this file instead of stdout");

  auto* sweep = app.add_subcommand("sweep", "Evaluate the scenario sweep into a CSV file");
  sweep->add_option("--config", config, "Scenario file")->required();
  sweep->add_option("--out", out_path, "Output CSV")->required();

  auto* fig = app.add_subcommand("figure", "Emit the CSV data of one figure");
  fig->add_option("number", figure, "Figure number (2-6)")->required();
  fig->add_option("--out", fig_dir, "Output directory")->capture_default_str();

  auto* oracle = app.add_subcommand("oracle-check", "Compare with the Fock-space oracle");
  oracle->add_option("--config", config, "Scenario file")->required();
  oracle->add_option("--cutoff", cutoff, "Photon-number cutoff per mode")->default_val(30);
  oracle->add_option("--tol", tol, "Relative tolerance")->default_val(1e-3);
  oracle->add_option("--out", out_path, "Write the report to this file as well");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*bounds) {
      const auto cfg = load_or_throw(config);
      std::ostringstream text;
      cmd_bounds(cfg, text);
      if (out_path.empty()) {
        out << text.str();
      } else {
        std::ofstream f(out_path, std::ios::binary | std::ios::trunc);
        if (!(f << text.str())) throw std::runtime_error("cannot write '" + out_path + "'");
      }
    } else if (*sweep) {
      cmd_sweep(load_or_throw(config), out_path);
    } else if (*fig) {
      if (figure < 2 || figure > 6) throw ConfigError("figure number must be 2..6", "number");
      for (const auto& p : cmd_figure(figure, fig_dir)) out << p.string() << '\n';
    } else if (*oracle) {
      const auto cfg = load_or_throw(config);
      std::ostringstream report;
      const int code = cmd_oracle_check(cfg, cutoff, tol, report);
      out << report.str();
      if (!out_path.empty()) {
        std::ofstream f(out_path, std::ios::binary | std::ios::trunc);
        if (!(f << report.str())) throw std::runtime_error("cannot write '" + out_path + "'");
      }
      return code;
    }
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const CutoffError& e) {
    err << "config error: " << e.what() << " (raise --cutoff)\n";
    return kExitConfig;
  } catch (const DegeneracyError& e) {
    err << "numerical degeneracy: " << e.what() << '\n';
    return kExitDegenerate;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace gaussprec

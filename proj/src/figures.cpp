#include "gaussprec/figures.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <system_error>

#include "gaussprec/closed_form.hpp"
#include "gaussprec/estimation.hpp"
#include "gaussprec/parallel.hpp"
#include "gaussprec/sql.hpp"

namespace gaussprec {

namespace {

constexpr double kNe = 0.5;
constexpr double kR = 0.4;
constexpr double kPhiHd = std::numbers::pi / 4.0;
constexpr int kPoints = 201;
constexpr std::complex<double> kAlpha{0.5, 0.0};

const std::vector<double> kRPanelTimes{0.0, 0.2, 0.4, 0.6};
const std::vector<double> kNePanelTimes{0.0, 0.5, 1.0, 2.0};

std::vector<double> grid(double start, double stop, int points) {
  std::vector<double> v(points);
  for (int i = 0; i < points; ++i) v[i] = start + (stop - start) * i / (points - 1);
  v.back() = stop;
  return v;
}

BathParams bath(double n_env) { return BathParams{1.0, n_env, 0.0}; }

// Probe with nbar following the bath where the family has one.
using ProbeAt = std::function<ProbeSpec(double r, double n_env)>;

ProbeAt family_probe(ProbeFamily f) {
  switch (f) {
    case ProbeFamily::tmsv: return [](double r, double) -> ProbeSpec { return Tmsv{r, 0.0}; };
    case ProbeFamily::tmdv: return [](double, double) -> ProbeSpec { return Tmdv{kAlpha, kAlpha}; };
    case ProbeFamily::tmst: return [](double r, double n) -> ProbeSpec { return Tmst{r, 0.0, n}; };
    case ProbeFamily::tmdt:
      return [](double, double n) -> ProbeSpec { return Tmdt{kAlpha, kAlpha, n}; };
  }
  throw std::logic_error("unhandled probe family");
}

std::string time_label(const std::string& quantity, double t) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, t);  // shortest form
  return quantity + "(t=" + std::string(buf, res.ptr) + ")";
}

CsvTable time_panel(const std::string& name, ProbeFamily f) {
  const auto probe = family_probe(f)(kR, kNe);
  const auto ts = grid(0.0, 2.0, kPoints);
  CsvTable table{name, {"t", "B_S", "B_R", "max_B_S_B_R", "B_H_max", "B_HD"}, {}};
  table.rows = parallel_map<std::vector<double>>(ts.size(), [&](std::size_t i) {
    const BoundSet b = bound_set(probe, bath(kNe), ts[i]);
    const double hd = hd_bound_closed_form(probe, bath(kNe), ts[i], kPhiHd);
    return std::vector<double>{ts[i], b.b_s, b.b_r, std::max(b.b_s, b.b_r), b.b_h_max, hd};
  });
  return table;
}

CsvTable r_panel(const std::string& name, ProbeFamily f) {
  const auto rs = grid(0.0, 2.0, kPoints);
  CsvTable table{name, {"r"}, {}};
  for (double t : kRPanelTimes) table.header.push_back(time_label("B_H_max", t));
  const auto make = family_probe(f);
  table.rows = parallel_map<std::vector<double>>(rs.size(), [&](std::size_t i) {
    std::vector<double> row{rs[i]};
    for (double t : kRPanelTimes) row.push_back(bound_set(make(rs[i], kNe), bath(kNe), t).b_h_max);
    return row;
  });
  return table;
}

CsvTable ne_panel(const std::string& name, ProbeFamily f, const std::string& quantity) {
  const auto ns = grid(0.0, 2.0, kPoints);
  CsvTable table{name, {"N_e"}, {}};
  for (double t : kNePanelTimes) table.header.push_back(time_label(quantity, t));
  const auto make = family_probe(f);
  table.rows = parallel_map<std::vector<double>>(ns.size(), [&](std::size_t i) {
    std::vector<double> row{ns[i]};
    for (double t : kNePanelTimes) row.push_back(bound_set(make(kR, ns[i]), bath(ns[i]), t).b_h_max);
    return row;
  });
  return table;
}

CsvTable comparison_pure() {
  const auto ts = grid(0.0, 2.0, kPoints);
  CsvTable table{"fig6a", {"t", "B_H_max_TMSV", "B_S_TMSV", "SQL"}, {}};
  table.rows = parallel_map<std::vector<double>>(ts.size(), [&](std::size_t i) {
    const BoundSet b = bound_set(Tmsv{kR, 0.0}, bath(kNe), ts[i]);
    return std::vector<double>{ts[i], b.b_h_max, b.b_s, sql_reference(bath(kNe), ts[i])};
  });
  return table;
}

CsvTable comparison_mixed() {
  const auto ts = grid(0.0, 2.0, kPoints);
  CsvTable table{"fig6b", {"t", "B_H_max_TMST", "B_S_TMST", "B_H_TMDT", "SQL"}, {}};
  table.rows = parallel_map<std::vector<double>>(ts.size(), [&](std::size_t i) {
    const BoundSet st = bound_set(Tmst{kR, 0.0, kNe}, bath(kNe), ts[i]);
    const BoundSet dt = bound_set(Tmdt{kAlpha, kAlpha, kNe}, bath(kNe), ts[i]);
    return std::vector<double>{ts[i], st.b_h_max, st.b_s, dt.b_h_max,
                               sql_reference(bath(kNe), ts[i])};
  });
  return table;
}

}  // namespace

std::size_t CsvTable::column(const std::string& title) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == title) return i;
  }
  throw std::out_of_range("no column '" + title + "' in " + name);
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  if (res.ec != std::errc()) throw std::runtime_error("number formatting failed");
  return std::string(buf, res.ptr);
}

std::string to_csv(const CsvTable& table) {
  std::string out;
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (i) out += ',';
    out += table.header[i];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_double(row[i]);
    }
    out += '\n';
  }
  return out;
}

void write_csv(const CsvTable& table, const std::filesystem::path& file) {
  const std::string text = to_csv(table);
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + file.string() + "' for writing");
  out << text;
  out.close();
  if (!out) throw std::runtime_error("failed writing '" + file.string() + "'");
}

std::vector<CsvTable> figure_tables(int figure) {
  switch (figure) {
    case 2:
      return {time_panel("fig2a", ProbeFamily::tmsv), r_panel("fig2b", ProbeFamily::tmsv),
              ne_panel("fig2c", ProbeFamily::tmsv, "B_H_max")};
    case 3:
      return {time_panel("fig3a", ProbeFamily::tmdv), ne_panel("fig3b", ProbeFamily::tmdv, "B_H")};
    case 4:
      return {time_panel("fig4a", ProbeFamily::tmst), r_panel("fig4b", ProbeFamily::tmst),
              ne_panel("fig4c", ProbeFamily::tmst, "B_H_max")};
    case 5:
      return {time_panel("fig5a", ProbeFamily::tmdt), ne_panel("fig5b", ProbeFamily::tmdt, "B_H")};
    case 6:
      return {comparison_pure(), comparison_mixed()};
    default:
      throw std::invalid_argument("figure number must be 2, 3, 4, 5 or 6");
  }
}

}  // namespace gaussprec

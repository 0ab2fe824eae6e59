// End-to-end acceptance checks. One PASS/FAIL line per criterion; the exit
// status is nonzero if any criterion fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "gaussprec/closed_form.hpp"
#include "gaussprec/commands.hpp"
#include "gaussprec/estimation.hpp"
#include "gaussprec/figures.hpp"
#include "gaussprec/fock_oracle.hpp"
#include "gaussprec/sql.hpp"

using namespace gaussprec;

namespace {

// Pinned tolerances.
constexpr double kClosedFormRel = 1e-10;
constexpr double kIdentityTol = 1e-12;
constexpr double kSandwichSlack = 1e-9;
constexpr double kOracleRel = 1e-3;
constexpr double kVarianceTol = 1e-6;
constexpr double kCrossLo = 0.60, kCrossHi = 0.90;
constexpr double kLimit1 = 5.0, kLimit5 = 1.0, kLimit6 = 600.0;

struct Outcome {
  bool pass = true;
  int failures = 0;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
    ++failures;
  }
};

struct GridPoint {
  double t, r, n;
};

std::vector<GridPoint> grid() {
  std::vector<GridPoint> g;
  for (int it = 0; it <= 20; ++it) {
    for (int ir = 0; ir <= 14; ++ir) {
      for (double n : {0.0, 0.5, 1.0, 2.0}) g.push_back({0.1 * it, 0.1 * ir, n});
    }
  }
  return g;
}

const std::complex<double> kAlpha{0.5, 0.0};

std::vector<ProbeSpec> families_at(const GridPoint& p) {
  return {Tmsv{p.r, 0.0}, Tmdv{kAlpha, kAlpha}, Tmst{p.r, 0.0, p.n}, Tmdt{kAlpha, kAlpha, p.n}};
}

BathParams bath_at(const GridPoint& p) { return BathParams{1.0, p.n, 0.0}; }

std::string where(const ProbeSpec& s, const GridPoint& p) {
  std::ostringstream os;
  os << to_string(family_of(s)) << " t=" << p.t << " r=" << p.r << " N_e=" << p.n;
  return os.str();
}

double rel(double got, double want) {
  if (want == 0.0) return std::abs(got);
  return std::abs(got - want) / std::abs(want);
}

bool same(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(1.0, std::abs(b));
}

bool same_set(const BoundSet& a, const BoundSet& b, double tol) {
  return same(a.b_s, b.b_s, tol) && same(a.b_r, b.b_r, tol) && same(a.r, b.r, tol) &&
         same(a.b_h_max, b.b_h_max, tol);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome closed_form_equivalence() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (const auto& p : grid()) {
    for (const auto& s : families_at(p)) {
      const auto got = bound_set(s, bath_at(p), p.t);
      const auto want = closed_form_bounds(s, bath_at(p), p.t);
      const double e = std::max({rel(got.b_s, want.b_s), rel(got.b_r, want.b_r),
                                 rel(got.r, want.r), rel(got.b_h_max, want.b_h_max)});
      worst = std::max(worst, e);
      if (!(e < kClosedFormRel)) o.fail(where(s, p) + " rel err " + std::to_string(e));
    }
  }
  const double dt = seconds_since(t0);
  if (dt >= kLimit1) o.fail("runtime " + std::to_string(dt) + " s");
  if (o.pass) {
    std::ostringstream os;
    os << "worst rel err " << worst << ", " << dt << " s";
    o.detail = os.str();
  }
  return o;
}

Outcome reduction_identities() {
  Outcome o;
  for (const auto& p : grid()) {
    const auto b = bath_at(p);
    if (!same_set(bound_set(Tmst{p.r, 0.0, 0.0}, b, p.t), bound_set(Tmsv{p.r, 0.0}, b, p.t),
                  kIdentityTol)) {
      o.fail("squeezed thermal nbar=0 vs squeezed vacuum at " + where(Tmsv{}, p));
    }
    if (!same_set(bound_set(Tmsv{0.0, 0.0}, b, p.t), bound_set(Tmdv{kAlpha, kAlpha}, b, p.t),
                  kIdentityTol)) {
      o.fail("squeezed vacuum r=0 vs coherent at " + where(Tmsv{}, p));
    }
    if (!same_set(bound_set(Tmdt{kAlpha, kAlpha, 0.0}, b, p.t),
                  bound_set(Tmdv{kAlpha, kAlpha}, b, p.t), kIdentityTol)) {
      o.fail("displaced thermal nbar=0 vs coherent at " + where(Tmdv{}, p));
    }
  }
  if (o.pass) o.detail = "3 identities on 1260 points";
  return o;
}

Outcome d_invariance() {
  Outcome o;
  for (const auto& p : grid()) {
    for (const ProbeSpec& s : {ProbeSpec(Tmdv{kAlpha, kAlpha}), ProbeSpec(Tmdt{kAlpha, kAlpha, p.n})}) {
      const auto b = bound_set(s, bath_at(p), p.t);
      if (!same(b.b_h_max, b.b_r, kIdentityTol)) o.fail(where(s, p));
    }
  }
  if (o.pass) o.detail = "B_H_max = B_R for both displaced families";
  return o;
}

Outcome sandwich() {
  Outcome o;
  for (const auto& p : grid()) {
    for (const auto& s : families_at(p)) {
      const auto b = bound_set(s, bath_at(p), p.t);
      if (!(2.0 * b.b_s >= b.b_h_max - kSandwichSlack)) o.fail(where(s, p) + " upper");
      if (!(b.b_h_max >= std::max(b.b_s, b.b_r) - kSandwichSlack)) o.fail(where(s, p) + " lower");
      if (!(b.r >= 0.0 && b.r <= 1.0 + kSandwichSlack)) o.fail(where(s, p) + " R range");
    }
  }
  if (o.pass) o.detail = "all families, 1260 points";
  return o;
}

Outcome sql_crossing() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const BathParams bath{1.0, 0.5, 0.0};
  const double tc = crossing_time(Tmsv{0.4, 0.0}, bath);
  const double bh0 = bound_set(Tmsv{0.4, 0.0}, bath, 0.0).b_h_max;
  const double sql0 = sql_reference(bath, 0.0);
  const double dt = seconds_since(t0);
  std::ostringstream os;
  os.precision(8);
  os << "t_c = " << tc << ", B_H_max(0) = " << bh0 << ", SQL(0) = " << sql0 << ", " << dt << " s";
  o.detail = os.str();
  if (!(tc >= kCrossLo && tc <= kCrossHi)) o.fail("crossing outside window: " + os.str());
  if (!(std::abs(bh0 - 1.3068) < 1e-4 && bh0 < sql0 && sql0 == 2.0)) o.fail("t=0 values: " + os.str());
  if (dt >= kLimit5) o.fail("runtime: " + os.str());
  return o;
}

Outcome fock_agreement() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const BathParams bath{1.0, 0.5, 0.0};
  const ProbeSpec probes[] = {Tmsv{0.4, 0.0}, Tmdv{kAlpha, kAlpha}, Tmst{0.4, 0.0, 0.5},
                              Tmdt{kAlpha, kAlpha, 0.5}};
  double worst = 0.0;
  for (const auto& s : probes) {
    for (double t : {0.1, 0.2, 0.5}) {
      const auto g = bound_set(s, bath, t);
      NumericBounds f;
      try {
        f = numeric_bounds(qfim_numeric(s, bath, t, 30, 1e-3));
      } catch (const std::exception& e) {
        o.fail(std::string(to_string(family_of(s))) + " t=" + std::to_string(t) + ": " + e.what());
        continue;
      }
      const double e = std::max({rel(f.b_s, g.b_s), rel(f.b_r, g.b_r), rel(f.r, g.r)});
      worst = std::max(worst, e);
      if (!(e <= kOracleRel)) {
        o.fail(std::string(to_string(family_of(s))) + " t=" + std::to_string(t) + " rel " +
               std::to_string(e));
      }
    }
  }
  const double dt = seconds_since(t0);
  if (dt >= kLimit6) o.fail("runtime " + std::to_string(dt) + " s");
  if (o.pass) {
    std::ostringstream os;
    os << "worst rel diff " << worst << ", " << dt << " s";
    o.detail = os.str();
  }
  return o;
}

Outcome channel_moments() {
  Outcome o;
  const BathParams bath{1.0, 0.5, 0.0};
  const double t = std::log(2.0);
  const int cutoff = 20;
  const auto out = lindblad_evolve(fock_probe(Tmdv{}, cutoff), LindbladConfig::for_time(bath, t, cutoff));
  const auto m = fock_moments(out);
  std::ostringstream os;
  os.precision(12);
  os << "var q = " << m.covariance(0, 0) << ", var p = " << m.covariance(1, 1);
  o.detail = os.str();
  for (int k = 0; k < 4; ++k) {
    if (!(std::abs(m.covariance(k, k) - 1.5) <= kVarianceTol)) o.fail(os.str());
  }
  return o;
}

Outcome scale_independence() {
  Outcome o;
  const std::complex<double> alphas[] = {{0.0, 0.0}, {1.0, 0.0}, {3.0, 2.0}};
  for (const auto& p : grid()) {
    if (p.r != 0.0) continue;  // the displaced families do not use r
    const auto b = bath_at(p);
    const auto v0 = bound_set(Tmdv{alphas[0], alphas[0]}, b, p.t);
    const auto d0 = bound_set(Tmdt{alphas[0], alphas[0], p.n}, b, p.t);
    for (const auto& a : alphas) {
      if (!same_set(bound_set(Tmdv{a, a}, b, p.t), v0, kIdentityTol)) o.fail(where(Tmdv{}, p));
      if (!same_set(bound_set(Tmdt{a, a, p.n}, b, p.t), d0, kIdentityTol)) o.fail(where(Tmdt{}, p));
    }
  }
  if (o.pass) o.detail = "alpha in {0, 1, 3+2i}";
  return o;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Column c of `table` must be non-increasing (sign = -1) or non-decreasing
// (sign = +1) down the rows.
bool monotone_down(const CsvTable& table, std::size_t c, int sign) {
  for (std::size_t i = 1; i < table.rows.size(); ++i) {
    const double d = table.rows[i][c] - table.rows[i - 1][c];
    if (sign * d < -kIdentityTol * std::abs(table.rows[i][c])) return false;
  }
  return true;
}

// Along each row, the per-time columns must not decrease.
bool increasing_across(const CsvTable& table) {
  for (const auto& row : table.rows) {
    for (std::size_t c = 2; c < row.size(); ++c) {
      if (row[c] < row[c - 1] * (1.0 - kIdentityTol)) return false;
    }
  }
  return true;
}

Outcome figure_data() {
  Outcome o;
  const auto base = std::filesystem::temp_directory_path() / "gaussprec_acceptance_figs";
  std::filesystem::remove_all(base);
  std::size_t files = 0;
  for (int fig = 2; fig <= 6; ++fig) {
    std::vector<std::filesystem::path> a, b;
    try {
      a = cmd_figure(fig, base / "run1");
      b = cmd_figure(fig, base / "run2");
    } catch (const std::exception& e) {
      o.fail("figure " + std::to_string(fig) + ": " + e.what());
      continue;
    }
    if (a.empty() || a.size() != b.size()) o.fail("figure " + std::to_string(fig) + " file count");
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
      const auto x = slurp(a[i]);
      if (x.empty() || x != slurp(b[i])) o.fail(a[i].filename().string() + " not reproducible");
      ++files;
    }
  }
  std::filesystem::remove_all(base);

  for (int fig : {2, 4}) {
    for (const auto& t : figure_tables(fig)) {
      if (t.name.back() == 'a') continue;
      const bool r_axis = t.header[0] == "r";
      for (std::size_t c = 1; c < t.header.size(); ++c) {
        if (!monotone_down(t, c, r_axis ? -1 : +1)) {
          o.fail(t.name + " column " + t.header[c] + (r_axis ? " not decreasing in r" : " not increasing in N_e"));
        }
      }
      if (!increasing_across(t)) o.fail(t.name + " not increasing in t");
    }
  }
  // caption parameters
  const auto six = figure_tables(6);
  const auto& row0 = six[0].rows.front();
  if (!(std::abs(row0[six[0].column("B_H_max_TMSV")] - 1.3067550859696636) < 1e-12 &&
        row0[six[0].column("SQL")] == 2.0)) {
    o.fail("fig6a t=0 row does not match r=0.4, N_e=0.5");
  }
  if (o.pass) o.detail = std::to_string(files) + " CSVs reproducible, monotonicity holds";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {"closed-form equivalence", closed_form_equivalence},
      {"reduction identities", reduction_identities},
      {"D-invariance", d_invariance},
      {"sandwich property", sandwich},
      {"SQL crossing", sql_crossing},
      {"Fock-oracle agreement", fock_agreement},
      {"channel-moment oracle", channel_moments},
      {"scale independence", scale_independence},
      {"figure data", figure_data},
  };
  int failed = 0;
  int n = 0;
  for (const auto& c : criteria) {
    ++n;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    if (o.failures > 1) o.detail += " (+" + std::to_string(o.failures - 1) + " more)";
    std::printf("%s criterion %d (%s): %s\n", o.pass ? "PASS" : "FAIL", n, c.name, o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  std::printf("%d/%d criteria passed\n", n - failed, n);
  return failed == 0 ? 0 : 1;
}

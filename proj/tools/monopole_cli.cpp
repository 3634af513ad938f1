// Command-line surface for the monopole library: gauge/scalar potential
// profiles, Chern numbers, latitude spectra, vortex maps, and phase scans,
// with deterministic CSV/JSON output (numbers at 12 significant digits).

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "monopole/gauge_field.hpp"
#include "monopole/latitude_spectrum.hpp"
#include "monopole/phase_analysis.hpp"
#include "monopole/tridiagonal.hpp"
#include "monopole/vortex_analysis.hpp"

namespace {

constexpr double kPi = std::numbers::pi;

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

class ConfigError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string num(int x) { return std::to_string(x); }

std::string json_bool(bool b) { return b ? "true" : "false"; }

struct CommonOptions {
  std::optional<int> l1;
  std::optional<int> l2;
  bool gauge_off = false;
  std::string format;
  std::string output;
};

void add_common(CLI::App* cmd, CommonOptions* opt, const std::string& fmt) {
  cmd->add_option("--l1", opt->l1, "first Laguerre index");
  cmd->add_option("--l2", opt->l2, "second Laguerre index");
  cmd->add_flag("--gauge-off", opt->gauge_off,
                "use the disabled gauge (f = 0, W = 0)");
  opt->format = fmt;
  cmd->add_option("--format", opt->format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--output", opt->output, "write to file instead of stdout");
}

monopole::GaugeField make_gauge(const CommonOptions& opt) {
  if (opt.gauge_off) return monopole::GaugeField::disabled();
  if (!opt.l1 || !opt.l2) {
    throw ConfigError("--l1 and --l2 are required unless --gauge-off");
  }
  try {
    return monopole::GaugeField(monopole::LaserModePair(*opt.l1, *opt.l2));
  } catch (const std::invalid_argument& err) {
    throw ConfigError(err.what());
  }
}

void mode_fields(const CommonOptions& opt, std::string& out) {
  out += "\"gauge_off\": " + json_bool(opt.gauge_off) + ", ";
  out += "\"l1\": " + (opt.gauge_off ? "null" : num(*opt.l1)) + ", ";
  out += "\"l2\": " + (opt.gauge_off ? "null" : num(*opt.l2)) + ", ";
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ConfigError("cannot open output file: " + path);
  file.write(text.data(), static_cast<std::streamsize>(text.size()));
}

double geodesic(double ta, double pa, double tb, double pb) {
  const double dot = std::sin(ta) * std::sin(tb) * std::cos(pa - pb) +
                     std::cos(ta) * std::cos(tb);
  return std::acos(std::clamp(dot, -1.0, 1.0));
}

// ---- gauge ----------------------------------------------------------------

int run_gauge(const CommonOptions& opt, int samples) {
  if (samples < 2) throw ConfigError("--samples must be at least 2");
  const monopole::GaugeField gauge = make_gauge(opt);
  const double f0 = opt.gauge_off ? 0.0 : static_cast<double>(opt.l1.value());

  std::string out;
  if (opt.format == "csv") {
    out += "theta,f,a_phi_north,a_phi_south,w_r0sq\n";
  } else {
    out += "[";
  }
  for (int i = 0; i < samples; ++i) {
    const double theta = kPi * i / (samples - 1);
    const double f = gauge.f_profile(theta);
    // Global-coordinate closed form of the patch potentials; coincides with
    // gauge_a_phi on each patch's own domain.
    const double a_north = f - f0;
    const double a_south = -(f - f0);
    const double w = gauge.scalar_w(theta);
    if (opt.format == "csv") {
      out += num(theta) + "," + num(f) + "," + num(a_north) + "," +
             num(a_south) + "," + num(w) + "\n";
    } else {
      out += i == 0 ? "\n" : ",\n";
      out += "  {\"theta\": " + num(theta) + ", \"f\": " + num(f) +
             ", \"a_phi_north\": " + num(a_north) +
             ", \"a_phi_south\": " + num(a_south) +
             ", \"w_r0sq\": " + num(w) + "}";
    }
  }
  if (opt.format != "csv") out += "\n]\n";
  emit(out, opt.output);
  return 0;
}

// ---- chern ----------------------------------------------------------------

int run_chern(const CommonOptions& opt, int quadrature_n) {
  const monopole::GaugeField gauge = make_gauge(opt);
  const int analytic = gauge.chern_analytic();
  const double quad = gauge.chern_quadrature(quadrature_n);

  std::string out = "{";
  mode_fields(opt, out);
  out += "\"cn_analytic\": " + num(analytic) + ", ";
  out += "\"cn_quadrature\": " + num(quad) + ", ";
  out += "\"abs_error\": " + num(std::abs(quad - analytic)) + ", ";
  out += "\"quadrature_n\": " + num(quadrature_n) + "}\n";
  emit(out, opt.output);
  return 0;
}

// ---- spectrum --------------------------------------------------------------

int run_spectrum(const CommonOptions& opt, int m_north, int n_modes,
                 int n_cells) {
  const monopole::GaugeField gauge = make_gauge(opt);
  if (n_modes < 1) throw ConfigError("--modes must be positive");
  const monopole::Sector sector =
      monopole::Sector::make(gauge.chern_analytic(), m_north);

  std::optional<monopole::LatitudeGrid> grid;
  try {
    grid.emplace(n_cells);
  } catch (const std::invalid_argument& err) {
    throw ConfigError(err.what());
  }
  const std::vector<monopole::LatitudeMode> modes =
      monopole::eigen_lowest(monopole::assemble(gauge, sector, *grid), n_modes);

  std::string out;
  if (opt.format == "json") {
    out += "{";
    mode_fields(opt, out);
    out += "\"m_north\": " + num(sector.m_north) + ", ";
    out += "\"m_south\": " + num(sector.m_south) + ", ";
    out += "\"chern\": " + num(sector.chern) + ", ";
    out += "\"n_cells\": " + num(n_cells) + ", ";
    out += "\"eigenvalues\": [";
    for (std::size_t i = 0; i < modes.size(); ++i) {
      if (i) out += ", ";
      out += num(modes[i].lambda);
    }
    out += "]}\n";
  } else {
    out += "z";
    for (std::size_t i = 0; i < modes.size(); ++i) {
      out += ",theta_" + std::to_string(i);
    }
    out += "\n";
    const std::vector<double>& z = grid->nodes();
    for (int i = 0; i < grid->n_cells(); ++i) {
      out += num(z[i]);
      for (const monopole::LatitudeMode& mode : modes) {
        out += "," + num(mode.theta_values[i]);
      }
      out += "\n";
    }
  }
  emit(out, opt.output);
  return 0;
}

// ---- vortex ----------------------------------------------------------------

int run_vortex(const CommonOptions& opt, double chi, double alpha, int n_cells,
               int resolution) {
  const monopole::GaugeField gauge = make_gauge(opt);
  if (gauge.chern_analytic() != 1) {
    throw ConfigError("the Bloch-vortex map is defined for Chern number 1");
  }
  if (!(chi >= 0.0 && chi <= kPi)) {
    throw ConfigError("--chi must lie in [0, pi]");
  }
  const monopole::LatitudeGrid grid(n_cells);
  const monopole::LatitudeMode north =
      monopole::eigen_lowest(
          monopole::assemble(gauge, monopole::Sector::make(1, 1), grid), 1)
          .front();
  const monopole::LatitudeMode south =
      monopole::eigen_lowest(
          monopole::assemble(gauge, monopole::Sector::make(1, 0), grid), 1)
          .front();
  const monopole::SphereWavefunction state =
      monopole::SphereWavefunction::superposition(north, south, {chi, alpha});

  const monopole::VortexRecord rec = monopole::bloch_to_vortex(state);
  const std::vector<monopole::VortexRecord> zeros =
      monopole::find_zeros(state, resolution);
  const monopole::VortexRecord* nearest = nullptr;
  double best = 1e300;
  for (const monopole::VortexRecord& z : zeros) {
    const double d = geodesic(rec.theta, rec.phi, z.theta, z.phi);
    if (d < best) {
      best = d;
      nearest = &z;
    }
  }

  std::string out = "{";
  mode_fields(opt, out);
  out += "\"chi\": " + num(chi) + ", ";
  out += "\"alpha\": " + num(alpha) + ", ";
  out += "\"theta\": " + num(rec.theta) + ", ";
  out += "\"phi\": " + num(rec.phi) + ", ";
  out += "\"at_pole\": " + json_bool(rec.at_pole) + ", ";
  out += "\"winding\": " + num(rec.winding) + ", ";
  out += "\"residual_modulus\": " + num(rec.residual_modulus) + ", ";
  out += "\"grid_theta\": " + (nearest ? num(nearest->theta) : "null") + ", ";
  out += "\"grid_phi\": " + (nearest ? num(nearest->phi) : "null") + ", ";
  out += "\"grid_winding\": " + (nearest ? num(nearest->winding) : "null") +
         ", ";
  out += "\"discrepancy\": " + (nearest ? num(best) : "null") + "}\n";
  emit(out, opt.output);
  return 0;
}

// ---- scan ------------------------------------------------------------------

int run_scan(const CommonOptions& opt, std::optional<int> m_min,
             std::optional<int> m_max, int n_cells) {
  const monopole::GaugeField gauge = make_gauge(opt);
  const auto [lo_default, hi_default] =
      monopole::default_m_range(gauge.chern_analytic());
  const int lo = m_min.value_or(lo_default);
  const int hi = m_max.value_or(hi_default);

  std::optional<monopole::SectorScanTable> table;
  try {
    table = monopole::sector_scan(gauge, lo, hi, monopole::LatitudeGrid(n_cells));
  } catch (const std::invalid_argument& err) {
    throw ConfigError(err.what());
  }
  bool any_ok = false;
  for (const monopole::ScanRow& row : table->rows) any_ok |= !row.failed;
  if (!any_ok) {
    std::cerr << "all scan rows failed\n";
    return kExitNumerical;
  }

  std::string out;
  if (opt.format == "csv") {
    out += "m_north,m_south,lambda0,gap,status\n";
    for (const monopole::ScanRow& row : table->rows) {
      out += num(row.sector.m_north) + "," + num(row.sector.m_south) + ",";
      if (row.failed) {
        out += ",,failed\n";
      } else {
        out += num(row.lambda0) + "," + num(row.gap) + ",ok\n";
      }
    }
  } else {
    const monopole::PhaseReport report = monopole::classify_phase(*table);
    out += "{";
    mode_fields(opt, out);
    out += "\"chern\": " + num(report.chern) + ", ";
    out += std::string("\"phase_label\": ") +
           (report.label == monopole::Phase::Broken ? "\"broken\""
                                                    : "\"symmetric\"") +
           ", ";
    out += "\"rows\": [";
    for (std::size_t i = 0; i < table->rows.size(); ++i) {
      const monopole::ScanRow& row = table->rows[i];
      if (i) out += ", ";
      out += "{\"m_north\": " + num(row.sector.m_north) +
             ", \"m_south\": " + num(row.sector.m_south);
      if (row.failed) {
        out += ", \"failed\": true}";
      } else {
        out += ", \"lambda0\": " + num(row.lambda0) +
               ", \"gap\": " + num(row.gap) + ", \"failed\": false}";
      }
    }
    out += "], \"degenerate_pairs\": [";
    for (std::size_t i = 0; i < report.degenerate_pairs.size(); ++i) {
      if (i) out += ", ";
      const auto& [a, b] = report.degenerate_pairs[i];
      out += "[{\"m_north\": " + num(a.m_north) +
             ", \"m_south\": " + num(a.m_south) + "}, {\"m_north\": " +
             num(b.m_north) + ", \"m_south\": " + num(b.m_south) + "}]";
    }
    out += "], \"order_parameters\": [";
    for (std::size_t i = 0; i < report.winning.size(); ++i) {
      if (i) out += ", ";
      const std::array<double, 3>& r = report.order_parameters[i];
      out += "{\"m_north\": " + num(report.winning[i].m_north) +
             ", \"m_south\": " + num(report.winning[i].m_south) +
             ", \"r\": [" + num(r[0]) + ", " + num(r[1]) + ", " + num(r[2]) +
             "]}";
    }
    out +=
        "], \"note\": \"the control parameter is the integer Chern number, "
        "so this transition has no order: the energy admits no derivative "
        "with respect to a discrete variable\"}\n";
  }
  emit(out, opt.output);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"artificial U(1) monopole for cold atoms on a sphere"};
  app.require_subcommand(1);

  CommonOptions gauge_opt;
  int samples = 181;
  CLI::App* gauge_cmd =
      app.add_subcommand("gauge", "gauge and scalar potential profiles");
  add_common(gauge_cmd, &gauge_opt, "csv");
  gauge_cmd->add_option("--samples", samples, "rows in the theta grid");

  CommonOptions chern_opt;
  int quadrature_n = 1000;
  CLI::App* chern_cmd =
      app.add_subcommand("chern", "Chern number, closed form and quadrature");
  add_common(chern_cmd, &chern_opt, "json");
  chern_cmd->add_option("--quadrature-n", quadrature_n, "quadrature panels");

  CommonOptions spectrum_opt;
  int m_north = 0;
  int n_modes = 4;
  int spectrum_cells = 2048;
  CLI::App* spectrum_cmd =
      app.add_subcommand("spectrum", "latitude eigenvalues and profiles");
  add_common(spectrum_cmd, &spectrum_opt, "json");
  spectrum_cmd->add_option("--mn", m_north, "north winding m_N")->required();
  spectrum_cmd->add_option("--modes", n_modes, "number of eigenpairs");
  spectrum_cmd->add_option("--cells", spectrum_cells, "latitude grid cells");

  CommonOptions vortex_opt;
  double chi = 0.0;
  double alpha = 0.0;
  int vortex_cells = 2048;
  int resolution = 256;
  CLI::App* vortex_cmd =
      app.add_subcommand("vortex", "Bloch point to vortex location (CN = 1)");
  add_common(vortex_cmd, &vortex_opt, "json");
  vortex_cmd->add_option("--chi", chi, "Bloch polar angle in [0, pi]")
      ->required();
  vortex_cmd->add_option("--alpha", alpha, "Bloch azimuthal angle")->required();
  vortex_cmd->add_option("--cells", vortex_cells, "latitude grid cells");
  vortex_cmd->add_option("--resolution", resolution, "zero-scan resolution");

  CommonOptions scan_opt;
  std::optional<int> m_min;
  std::optional<int> m_max;
  int scan_cells = 2048;
  CLI::App* scan_cmd =
      app.add_subcommand("scan", "sector scan and phase classification");
  add_common(scan_cmd, &scan_opt, "json");
  scan_cmd->add_option("--mn-min", m_min, "lowest m_N scanned");
  scan_cmd->add_option("--mn-max", m_max, "highest m_N scanned");
  scan_cmd->add_option("--cells", scan_cells, "latitude grid cells");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    if (err.get_exit_code() == 0) return app.exit(err);  // --help
    app.exit(err);
    return kExitConfig;
  }

  try {
    if (gauge_cmd->parsed()) return run_gauge(gauge_opt, samples);
    if (chern_cmd->parsed()) return run_chern(chern_opt, quadrature_n);
    if (spectrum_cmd->parsed())
      return run_spectrum(spectrum_opt, m_north, n_modes, spectrum_cells);
    if (vortex_cmd->parsed())
      return run_vortex(vortex_opt, chi, alpha, vortex_cells, resolution);
    if (scan_cmd->parsed())
      return run_scan(scan_opt, m_min, m_max, scan_cells);
  } catch (const ConfigError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitConfig;
  } catch (const std::domain_error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& err) {
    std::cerr << "numerical failure: " << err.what() << "\n";
    return kExitNumerical;
  }
  return kExitConfig;
}

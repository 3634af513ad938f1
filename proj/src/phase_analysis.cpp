#include "monopole/phase_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace monopole {

std::pair<int, int> default_m_range(int chern) {
  return {std::min(0, chern) - 2, std::max(0, chern) + 2};
}

SectorScanTable sector_scan(const GaugeField& gauge, int m_min, int m_max,
                            const LatitudeGrid& grid, double tol) {
  const int cn = gauge.chern_analytic();
  if (m_min > std::min(0, cn) || m_max < std::max(0, cn)) {
    throw std::invalid_argument("scan range must contain [0, CN]");
  }

  SectorScanTable table;
  table.degeneracy_tol = tol;
  for (int m = m_min; m <= m_max; ++m) {
    ScanRow row;
    row.sector = Sector::make(cn, m);
    try {
      std::vector<LatitudeMode> modes =
          eigen_lowest(assemble(gauge, row.sector, grid), 2);
      row.lambda0 = modes[0].lambda;
      row.gap = modes[1].lambda - modes[0].lambda;
      row.ground = std::move(modes[0]);
    } catch (const tridiag::ConvergenceError& err) {
      row.failed = true;
      row.error = err.what();
    }
    table.rows.push_back(std::move(row));
  }

  std::stable_sort(table.rows.begin(), table.rows.end(),
                   [](const ScanRow& a, const ScanRow& b) {
                     if (a.failed != b.failed) return !a.failed;
                     if (a.lambda0 != b.lambda0) return a.lambda0 < b.lambda0;
                     return a.sector.m_north < b.sector.m_north;
                   });

  if (!table.rows.empty() && !table.rows.front().failed) {
    const double best = table.rows.front().lambda0;
    for (const ScanRow& row : table.rows) {
      if (row.failed) continue;
      if (row.lambda0 - best <= tol * std::max(1.0, std::abs(best))) {
        table.winning.push_back(row.sector);
      }
    }
  }
  return table;
}

PhaseReport classify_phase(const SectorScanTable& table, double tol) {
  PhaseReport report;
  if (table.rows.empty()) {
    throw std::invalid_argument("cannot classify an empty scan table");
  }
  report.chern = table.rows.front().sector.chern;

  std::vector<Sector> winning;
  const ScanRow* best = nullptr;
  for (const ScanRow& row : table.rows) {
    if (!row.failed) {
      best = &row;
      break;
    }
  }
  if (best == nullptr) {
    throw std::invalid_argument("scan table has no successful rows");
  }
  for (const ScanRow& row : table.rows) {
    if (row.failed) continue;
    if (row.lambda0 - best->lambda0 <=
        tol * std::max(1.0, std::abs(best->lambda0))) {
      winning.push_back(row.sector);
    }
  }

  report.label = winning.size() >= 2 ? Phase::Broken : Phase::Symmetric;
  report.winning = winning;
  for (std::size_t i = 0; i < winning.size(); ++i) {
    for (std::size_t j = i + 1; j < winning.size(); ++j) {
      if (winning[j] == winning[i].mirror()) {
        report.degenerate_pairs.emplace_back(winning[i], winning[j]);
      }
    }
  }
  for (const Sector& sector : winning) {
    for (const ScanRow& row : table.rows) {
      if (!row.failed && row.sector == sector && row.ground.has_value()) {
        report.order_parameters.push_back(order_parameter(*row.ground));
        break;
      }
    }
  }
  return report;
}

namespace {

// Mirror-exact node value, same construction as LatitudeGrid.
double node_z(int i, int n, double h) {
  if (i < n / 2) return -1.0 + (i + 0.5) * h;
  return -(-1.0 + (n - 1 - i + 0.5) * h);
}

}  // namespace

std::array<double, 3> order_parameter(const LatitudeMode& mode) {
  const int n = static_cast<int>(mode.theta_values.size());
  const double h = 2.0 / n;
  double mean_z = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = node_z(i, n, h);
    mean_z += z * mode.theta_values[i] * mode.theta_values[i] * h;
  }
  return {0.0, 0.0, mean_z};
}

std::array<double, 3> order_parameter(const SphereWavefunction& state) {
  if (!state.superposed()) {
    return order_parameter(state.north_mode());
  }
  const BlochPoint bloch = *state.bloch();
  const double c2 = std::cos(0.5 * bloch.chi) * std::cos(0.5 * bloch.chi);
  const double s2 = 1.0 - c2;
  const std::vector<double>& tn = state.north_mode().theta_values;
  const std::vector<double>& ts = state.south_mode().theta_values;
  const int n = static_cast<int>(tn.size());
  const double h = 2.0 / n;

  // The phi integral kills the cross term in <z> and reduces <x> + i<y> to
  // cos(chi/2) sin(chi/2) e^{i alpha} * sum sin(theta) Theta_N Theta_S h.
  double mean_z = 0.0;
  double overlap = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = node_z(i, n, h);
    mean_z += z * (c2 * tn[i] * tn[i] + s2 * ts[i] * ts[i]) * h;
    overlap += std::sqrt(1.0 - z * z) * tn[i] * ts[i] * h;
  }
  const double radial =
      std::cos(0.5 * bloch.chi) * std::sin(0.5 * bloch.chi) * overlap;
  return {radial * std::cos(bloch.alpha), radial * std::sin(bloch.alpha),
          mean_z};
}

}  // namespace monopole

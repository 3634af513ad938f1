#ifndef MONOPOLE_PHASE_ANALYSIS_HPP_
#define MONOPOLE_PHASE_ANALYSIS_HPP_

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "monopole/gauge_field.hpp"
#include "monopole/latitude_spectrum.hpp"
#include "monopole/vortex_analysis.hpp"

namespace monopole {

struct ScanRow {
  Sector sector;
  double lambda0 = 0.0;
  double gap = 0.0;  // first excited minus ground
  bool failed = false;
  std::string error;
  std::optional<LatitudeMode> ground;
};

/// Per-sector ground energies, sorted ascending (ties by m_north), plus the
/// winning set: every sector within the degeneracy tolerance of the minimum.
/// The winning set is closed under the mirror map by construction of the
/// operators.
struct SectorScanTable {
  std::vector<ScanRow> rows;
  std::vector<Sector> winning;
  double degeneracy_tol = 1e-8;
};

enum class Phase { Symmetric, Broken };

struct PhaseReport {
  int chern = 0;
  Phase label = Phase::Symmetric;
  std::vector<Sector> winning;
  std::vector<std::pair<Sector, Sector>> degenerate_pairs;
  /// Landau order parameter <r>/r0 per winning sector, parallel to winning.
  std::vector<std::array<double, 3>> order_parameters;
};

/// Default scan range [min(0, CN) - 2, max(0, CN) + 2].
std::pair<int, int> default_m_range(int chern);

/// Ground energy and gap for every sector with m_north in [m_min, m_max].
/// The range must contain [0, CN]. Eigensolver failures mark the row failed
/// and the scan continues. tol is the degeneracy tolerance
/// (|a - b| <= tol * max(1, |a|)).
SectorScanTable sector_scan(const GaugeField& gauge, int m_min, int m_max,
                            const LatitudeGrid& grid, double tol = 1e-8);

/// Broken phase iff the winning set holds at least two distinct sectors;
/// degenerate mirror partners are listed explicitly.
PhaseReport classify_phase(const SectorScanTable& table, double tol = 1e-8);

/// <r>/r0 for an axisymmetric sector mode: (0, 0, sum z Theta^2 h).
std::array<double, 3> order_parameter(const LatitudeMode& mode);

/// <r>/r0 for a sphere state; superpositions use the exact azimuthal
/// integrals of |psi|^2 reduced to grid sums.
std::array<double, 3> order_parameter(const SphereWavefunction& state);

}  // namespace monopole

#endif  // MONOPOLE_PHASE_ANALYSIS_HPP_

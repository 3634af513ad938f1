// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Every tolerance is pinned in code next to its check.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sys/wait.h>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "monopole/gauge_field.hpp"
#include "monopole/latitude_spectrum.hpp"
#include "monopole/phase_analysis.hpp"
#include "monopole/vortex_analysis.hpp"

namespace {

constexpr double kPi = std::numbers::pi;

using monopole::GaugeField;
using monopole::LaserModePair;
using monopole::LatitudeGrid;
using monopole::LatitudeMode;
using monopole::Phase;
using monopole::Sector;
using monopole::SphereWavefunction;

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Check {
  Outcome& outcome;

  void require(bool condition, const std::string& message) {
    if (!condition) {
      outcome.pass = false;
      if (!outcome.detail.empty()) outcome.detail += "; ";
      outcome.detail += message;
    }
  }
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

GaugeField modes_for(int cn) {
  if (cn == 0) return GaugeField::disabled();
  return GaugeField{LaserModePair(0, cn)};
}

LatitudeMode ground_mode(const GaugeField& gauge, const Sector& sector,
                         int n_cells) {
  return eigen_lowest(assemble(gauge, sector, LatitudeGrid(n_cells)), 1)
      .front();
}

// 1. Legendre oracle: gauge off, n = 2048, m in {0,1,2}: first five
//    eigenvalues match l(l+1) within 1e-3; halving h cuts the error by at
//    least ~4x wherever it sits above the round-off floor. Under 5 s.
Outcome legendre_oracle() {
  Outcome outcome;
  Check check{outcome};
  const auto start = std::chrono::steady_clock::now();
  for (int m = 0; m <= 2; ++m) {
    double max_err_fine = 0.0;
    double max_err_coarse = 0.0;
    for (int n : {1024, 2048}) {
      const std::vector<LatitudeMode> modes = eigen_lowest(
          assemble(GaugeField::disabled(), Sector::make(0, m), LatitudeGrid(n)),
          5);
      double worst = 0.0;
      for (int i = 0; i < 5; ++i) {
        const double expected = monopole::legendre_reference(m + i, m);
        worst = std::max(worst, std::abs(modes[i].lambda - expected));
      }
      (n == 2048 ? max_err_fine : max_err_coarse) = worst;
    }
    check.require(max_err_fine <= 1e-3, "m=" + std::to_string(m) +
                                            " error " + fmt(max_err_fine) +
                                            " above 1e-3");
    if (max_err_coarse > 1e-7) {
      const double ratio = max_err_coarse / max_err_fine;
      check.require(ratio >= 2.5, "m=" + std::to_string(m) +
                                      " halving ratio " + fmt(ratio) +
                                      " below second order");
    }
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  check.require(seconds < 5.0, "runtime " + fmt(seconds) + "s over 5s");
  if (outcome.pass) outcome.detail = "runtime " + fmt(seconds) + "s";
  return outcome;
}

// 2. Chern quantization: all 0 <= l1 < l2 <= 6, |quadrature(1000) - (l2-l1)|
//    <= 1e-9. Under 1 s.
Outcome chern_quantization() {
  Outcome outcome;
  Check check{outcome};
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (int l1 = 0; l1 < 6; ++l1) {
    for (int l2 = l1 + 1; l2 <= 6; ++l2) {
      const GaugeField gauge{LaserModePair(l1, l2)};
      const double err =
          std::abs(gauge.chern_quadrature(1000) - gauge.chern_analytic());
      worst = std::max(worst, err);
    }
  }
  check.require(worst <= 1e-9, "worst quadrature error " + fmt(worst));
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  check.require(seconds < 1.0, "runtime " + fmt(seconds) + "s over 1s");
  if (outcome.pass) outcome.detail = "worst error " + fmt(worst);
  return outcome;
}

// 3. Potential consistency: closed form vs beam-angle definition, relative
//    difference <= 1e-10 over 1000 theta points.
Outcome potential_consistency() {
  Outcome outcome;
  Check check{outcome};
  double worst = 0.0;
  for (const auto& [l1, l2] : std::vector<std::pair<int, int>>{
           {0, 1}, {0, 3}, {1, 2}, {2, 5}}) {
    const GaugeField gauge{LaserModePair(l1, l2)};
    for (int i = 1; i <= 1000; ++i) {
      const double theta = (kPi / 2) * i / 1000.0;
      const double closed = gauge.scalar_w(theta);
      const double defined = gauge.scalar_w_from_definition(theta);
      worst = std::max(worst, std::abs(closed - defined) /
                                  std::max(closed, 1e-12));
    }
  }
  check.require(worst <= 1e-10, "worst relative difference " + fmt(worst));
  if (outcome.pass) outcome.detail = "worst relative difference " + fmt(worst);
  return outcome;
}

// 4. Degeneracy parity: CN in {0..3} with modes (0, CN): broken exactly for
//    odd CN; mirror ground energies within 1e-10; for CN=2 the (1,1) sector
//    wins over (2,0) by more than 1e-3. Under 30 s.
Outcome degeneracy_parity() {
  Outcome outcome;
  Check check{outcome};
  const auto start = std::chrono::steady_clock::now();
  const LatitudeGrid grid(2048);
  for (int cn = 0; cn <= 3; ++cn) {
    const GaugeField gauge = modes_for(cn);
    const auto [lo, hi] = monopole::default_m_range(cn);
    const monopole::SectorScanTable table = sector_scan(gauge, lo, hi, grid);
    const monopole::PhaseReport report = classify_phase(table);
    const bool want_broken = cn % 2 == 1;
    check.require((report.label == Phase::Broken) == want_broken,
                  "CN=" + std::to_string(cn) + " phase label wrong");

    double worst_mirror = 0.0;
    for (const monopole::ScanRow& row : table.rows) {
      if (row.failed || row.sector.m_north < row.sector.m_south) continue;
      for (const monopole::ScanRow& other : table.rows) {
        if (!other.failed && other.sector == row.sector.mirror()) {
          worst_mirror =
              std::max(worst_mirror, std::abs(row.lambda0 - other.lambda0));
        }
      }
    }
    check.require(worst_mirror <= 1e-10,
                  "CN=" + std::to_string(cn) + " mirror energy split " +
                      fmt(worst_mirror));
  }
  const GaugeField cn2 = modes_for(2);
  const double gap = ground_energy(cn2, Sector::make(2, 2), grid) -
                     ground_energy(cn2, Sector::make(2, 1), grid);
  check.require(gap > 1e-3, "CN=2 sector gap " + fmt(gap) + " not above 1e-3");
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  check.require(seconds < 30.0, "runtime " + fmt(seconds) + "s over 30s");
  if (outcome.pass) {
    outcome.detail = "CN=2 gap " + fmt(gap) + ", runtime " + fmt(seconds) + "s";
  }
  return outcome;
}

// 5. Chern's theorem: total winding equals CN for every sector eigenstate
//    with CN <= 3 and for 50 random Bloch superpositions at CN = 1, all
//    residuals below 0.15 (winding_number rejects anything above). Under
//    60 s at resolution 256.
Outcome chern_theorem() {
  Outcome outcome;
  Check check{outcome};
  const auto start = std::chrono::steady_clock::now();
  const int resolution = 256;

  for (int cn = 1; cn <= 3; ++cn) {
    const GaugeField gauge = modes_for(cn);
    const auto [lo, hi] = monopole::default_m_range(cn);
    for (int m = lo; m <= hi; ++m) {
      const SphereWavefunction state = SphereWavefunction::sector_state(
          ground_mode(gauge, Sector::make(cn, m), 1024));
      int winding = 0;
      bool threw = false;
      try {
        winding = total_winding(state, resolution);
      } catch (const std::exception&) {
        threw = true;
      }
      check.require(!threw && winding == cn,
                    "sector (" + std::to_string(m) + "," +
                        std::to_string(cn - m) + ") total winding " +
                        std::to_string(winding) + " != " + std::to_string(cn));
    }
  }

  const GaugeField cn1 = modes_for(1);
  const LatitudeMode north = ground_mode(cn1, Sector::make(1, 1), 1024);
  const LatitudeMode south = ground_mode(cn1, Sector::make(1, 0), 1024);
  std::mt19937 rng(20240817);
  std::uniform_real_distribution<double> ucos(-1.0, 1.0);
  std::uniform_real_distribution<double> ualpha(0.0, 2.0 * kPi);
  for (int i = 0; i < 50; ++i) {
    const double chi = std::acos(ucos(rng));
    const double alpha = ualpha(rng);
    int winding = 0;
    bool threw = false;
    try {
      winding = total_winding(
          SphereWavefunction::superposition(north, south, {chi, alpha}),
          resolution);
    } catch (const std::exception&) {
      threw = true;
    }
    check.require(!threw && winding == 1,
                  "superposition chi=" + fmt(chi) + " alpha=" + fmt(alpha) +
                      " total winding " + std::to_string(winding));
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  check.require(seconds < 60.0, "runtime " + fmt(seconds) + "s over 60s");
  if (outcome.pass) outcome.detail = "runtime " + fmt(seconds) + "s";
  return outcome;
}

// 6. Bloch-vortex bijection: roundtrip within 1e-6 on 100 random Bloch
//    points, strictly monotone ratio on the solved grid, closed-form
//    location within 2 grid cells of the independent grid search.
Outcome bloch_vortex_bijection() {
  Outcome outcome;
  Check check{outcome};
  const GaugeField gauge = modes_for(1);
  const LatitudeMode north = ground_mode(gauge, Sector::make(1, 1), 2048);
  const LatitudeMode south = ground_mode(gauge, Sector::make(1, 0), 2048);

  std::mt19937 rng(555);
  std::uniform_real_distribution<double> uchi(1e-3, kPi - 1e-3);
  std::uniform_real_distribution<double> ualpha(0.0, 2.0 * kPi);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double chi = uchi(rng);
    const double alpha = ualpha(rng);
    const monopole::VortexRecord rec = bloch_to_vortex(
        SphereWavefunction::superposition(north, south, {chi, alpha}));
    const monopole::BlochPoint back = vortex_to_bloch(north, rec.theta, rec.phi);
    worst = std::max(worst, std::abs(back.chi - chi));
    worst = std::max(
        worst, std::abs(std::remainder(back.alpha - alpha, 2.0 * kPi)));
  }
  check.require(worst <= 1e-6, "roundtrip error " + fmt(worst) + " above 1e-6");

  const int n = static_cast<int>(north.theta_values.size());
  bool monotone = true;
  double prev = -1.0;
  for (int i = n - 1; i >= 0; --i) {
    const double ratio = north.theta_values[i] / north.theta_values[n - 1 - i];
    if (!(ratio > prev)) monotone = false;
    prev = ratio;
  }
  check.require(monotone, "chi-theta ratio not strictly monotone");

  const int resolution = 256;
  const double cell = kPi / resolution;
  std::uniform_real_distribution<double> umid(0.4, kPi - 0.4);
  for (int i = 0; i < 8; ++i) {
    const double chi = umid(rng);
    const double alpha = ualpha(rng);
    const SphereWavefunction state =
        SphereWavefunction::superposition(north, south, {chi, alpha});
    const monopole::VortexRecord rec = bloch_to_vortex(state);
    const std::vector<monopole::VortexRecord> zeros =
        find_zeros(state, resolution);
    double nearest = 1e300;
    for (const monopole::VortexRecord& z : zeros) {
      const double cosd = std::sin(rec.theta) * std::sin(z.theta) *
                              std::cos(rec.phi - z.phi) +
                          std::cos(rec.theta) * std::cos(z.theta);
      nearest = std::min(nearest, std::acos(std::clamp(cosd, -1.0, 1.0)));
    }
    check.require(nearest <= 2.0 * cell,
                  "grid search " + fmt(nearest) + " rad away (limit " +
                      fmt(2.0 * cell) + ")");
  }
  if (outcome.pass) outcome.detail = "roundtrip error " + fmt(worst);
  return outcome;
}

// 7. Order parameter: zero (<= 1e-10) for even-CN winning sectors, strictly
//    negative <z> for the CN=1 (1,0) ground, and exact mirror antisymmetry
//    to 1e-10.
Outcome order_parameter_criterion() {
  Outcome outcome;
  Check check{outcome};
  const LatitudeGrid grid(2048);

  const std::array<double, 3> off = monopole::order_parameter(
      eigen_lowest(assemble(GaugeField::disabled(), Sector::make(0, 0), grid), 1)
          .front());
  check.require(std::hypot(off[0], off[1], off[2]) <= 1e-10,
                "CN=0 winning sector has |<r>| " + fmt(std::abs(off[2])));

  const std::array<double, 3> balanced = monopole::order_parameter(
      eigen_lowest(assemble(modes_for(2), Sector::make(2, 1), grid), 1).front());
  check.require(std::hypot(balanced[0], balanced[1], balanced[2]) <= 1e-10,
                "CN=2 winning sector has |<r>| " + fmt(std::abs(balanced[2])));

  const std::array<double, 3> rn = monopole::order_parameter(
      eigen_lowest(assemble(modes_for(1), Sector::make(1, 1), grid), 1).front());
  const std::array<double, 3> rs = monopole::order_parameter(
      eigen_lowest(assemble(modes_for(1), Sector::make(1, 0), grid), 1).front());
  check.require(rn[2] < 0.0, "CN=1 (1,0) <z> " + fmt(rn[2]) + " not negative");
  check.require(std::abs(rn[2] + rs[2]) <= 1e-10,
                "mirror antisymmetry off by " + fmt(std::abs(rn[2] + rs[2])));
  if (outcome.pass) outcome.detail = "<z>(1,0) = " + fmt(rn[2]);
  return outcome;
}

// 8. Determinism: identical CLI invocations produce byte-identical output.
Outcome cli_determinism() {
  Outcome outcome;
  Check check{outcome};
  const std::vector<std::string> commands = {
      "gauge --l1 0 --l2 3 --samples 65",
      "chern --l1 0 --l2 4",
      "spectrum --l1 0 --l2 1 --mn 1 --modes 3 --cells 512",
      "spectrum --l1 0 --l2 2 --mn 1 --cells 256 --format csv",
      "vortex --l1 0 --l2 1 --chi 0.8 --alpha 2.0 --cells 512 --resolution 64",
      "scan --l1 0 --l2 1 --cells 512",
      "scan --gauge-off --cells 256 --format csv",
  };
  for (const std::string& command : commands) {
    std::string first;
    std::string second;
    for (int round = 0; round < 2; ++round) {
      const std::string full =
          std::string(MONOPOLE_CLI_PATH) + " " + command + " 2>/dev/null";
      FILE* pipe = popen(full.c_str(), "r");
      if (pipe == nullptr) {
        check.require(false, "popen failed");
        return outcome;
      }
      std::string captured;
      char buffer[4096];
      std::size_t got;
      while ((got = fread(buffer, 1, sizeof buffer, pipe)) > 0) {
        captured.append(buffer, got);
      }
      const int status = pclose(pipe);
      check.require(WEXITSTATUS(status) == 0,
                    "`" + command + "` exited " +
                        std::to_string(WEXITSTATUS(status)));
      (round == 0 ? first : second) = captured;
    }
    check.require(!first.empty() && first == second,
                  "`" + command + "` output differs between runs");
  }
  if (outcome.pass) {
    outcome.detail = std::to_string(commands.size()) + " commands bit-stable";
  }
  return outcome;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria =
      {
          {"legendre-oracle", legendre_oracle},
          {"chern-quantization", chern_quantization},
          {"potential-consistency", potential_consistency},
          {"degeneracy-parity", degeneracy_parity},
          {"chern-theorem-winding", chern_theorem},
          {"bloch-vortex-bijection", bloch_vortex_bijection},
          {"order-parameter", order_parameter_criterion},
          {"cli-determinism", cli_determinism},
      };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome outcome;
    try {
      outcome = criteria[i].second();
    } catch (const std::exception& err) {
      outcome.pass = false;
      outcome.detail = std::string("exception: ") + err.what();
    }
    if (!outcome.pass) ++failures;
    std::printf("%s  %zu. %s%s%s\n", outcome.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), outcome.detail.empty() ? "" : " — ",
                outcome.detail.c_str());
  }
  if (failures > 0) {
    std::printf("%d of %zu acceptance criteria failed\n", failures,
                criteria.size());
  } else {
    std::printf("all %zu acceptance criteria passed\n", criteria.size());
  }
  return failures == 0 ? 0 : 1;
}

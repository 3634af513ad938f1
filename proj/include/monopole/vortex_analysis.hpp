#ifndef MONOPOLE_VORTEX_ANALYSIS_HPP_
#define MONOPOLE_VORTEX_ANALYSIS_HPP_

#include <complex>
#include <optional>
#include <vector>

#include "monopole/gauge_field.hpp"
#include "monopole/latitude_spectrum.hpp"

namespace monopole {

/// Point on the Bloch sphere of a degenerate ground pair.
struct BlochPoint {
  double chi;    // [0, pi]
  double alpha;  // [0, 2pi)
};

/// Located zero of the wavefunction with its phase winding.
struct VortexRecord {
  double theta;
  double phi;  // canonical 0 at a pole
  bool at_pole;
  int winding;              // nonzero integer
  double residual_modulus;  // |psi| at the located zero
};

/// Raised by winding_number when the phase sum does not settle near an
/// integer (loop through a zero, or too few samples).
class AmbiguousWindingError : public std::runtime_error {
 public:
  AmbiguousWindingError(std::string what, double residual)
      : std::runtime_error(std::move(what)), residual(residual) {}
  double residual;
};

/// Evaluates a latitude profile off-grid. Cubic interpolation through the
/// four nearest cell centers of the smooth factor
/// S = Theta / [(1-z)^{|m_N|/2} (1+z)^{|m_S|/2}]; the pole factor is
/// multiplied back afterwards, so the zero structure at the poles is exact.
class ThetaInterpolant {
 public:
  explicit ThetaInterpolant(const LatitudeMode& mode);

  double at_z(double z) const;
  double at_theta(double theta) const { return at_z(std::cos(theta)); }

 private:
  int n_;
  double h_;
  double alpha_;  // |m_N| / 2
  double beta_;   // |m_S| / 2
  std::vector<double> nodes_;
  std::vector<double> smooth_;
};

/// Full-sphere wavefunction built from sector modes (possibly a Bloch
/// superposition of the CN=1 degenerate ground pair). Values carry the
/// two-patch gauge: e^{i m_N phi} Theta / sqrt(2 pi) on the north patch,
/// e^{-i m_S phi} Theta / sqrt(2 pi) on the south patch.
class SphereWavefunction {
 public:
  /// Pure sector eigenstate.
  static SphereWavefunction sector_state(LatitudeMode mode);

  /// cos(chi/2) psi_N + e^{i alpha} sin(chi/2) psi_S over a mirror pair of
  /// ground modes. Requires mode_south.sector == mode_north.sector.mirror().
  static SphereWavefunction superposition(LatitudeMode mode_north,
                                          LatitudeMode mode_south,
                                          BlochPoint bloch);

  /// Patchwise value; the two patches are glued by e^{i CN phi} across the
  /// equator.
  std::complex<double> evaluate(double theta, double phi) const;

  /// Value continued in a single patch's gauge over the whole sphere
  /// (regular everywhere except that patch's opposite pole). Used for
  /// winding measurement on loops that cross the equator.
  std::complex<double> evaluate_in_gauge(Hemisphere gauge, double theta,
                                         double phi) const;

  /// Squared norm from the grid sums (exactly 1 up to mode normalization:
  /// the superposed pair is orthogonal by azimuthal index).
  double norm_squared() const;

  int chern() const { return chern_; }
  bool superposed() const { return bloch_.has_value(); }
  const std::optional<BlochPoint>& bloch() const { return bloch_; }
  const LatitudeMode& north_mode() const { return modes_.front(); }
  const LatitudeMode& south_mode() const { return modes_.back(); }
  const ThetaInterpolant& north_interpolant() const {
    return interpolants_.front();
  }
  const ThetaInterpolant& south_interpolant() const {
    return interpolants_.back();
  }

 private:
  SphereWavefunction() = default;

  int chern_ = 0;
  std::optional<BlochPoint> bloch_;
  std::vector<LatitudeMode> modes_;             // 1 or 2 entries
  std::vector<ThetaInterpolant> interpolants_;  // parallel to modes_
  std::vector<std::complex<double>> weights_;   // amplitude * phase factor
};

/// Closed-form vortex location of a CN=1 Bloch superposition:
/// phi = alpha - pi (mod 2pi), theta from the monotone ratio equation
/// tan(chi/2) = Theta_N(theta) / Theta_N(pi - theta). Winding is +1.
/// Requires a superposed state over the (1,0)/(0,1) ground pair.
VortexRecord bloch_to_vortex(const SphereWavefunction& state);

/// Inverse map: chi = 2 atan(Theta_N(theta)/Theta_N(pi-theta)),
/// alpha = phi + pi (mod 2pi).
BlochPoint vortex_to_bloch(const LatitudeMode& mode_north, double theta,
                           double phi);

/// Phase winding of psi around a circle of angular radius loop_radius
/// centered at (theta, phi), counterclockwise as seen from outside along
/// the outward normal. Sums wrapped phase increments over n_samples points,
/// divides by 2pi and rounds; throws AmbiguousWindingError when the
/// pre-rounding residual exceeds 0.15.
int winding_number(const SphereWavefunction& state, double center_theta,
                   double center_phi, double loop_radius, int n_samples);

/// Scans |psi| on a resolution x resolution grid plus both poles, refines
/// every local minimum by deterministic pattern search, keeps those below
/// 1e-3 * max|psi| and annotates each with its winding.
std::vector<VortexRecord> find_zeros(const SphereWavefunction& state,
                                     int resolution);

/// Sum of the windings of all located zeros; equals the Chern number
/// (Chern's theorem).
int total_winding(const SphereWavefunction& state, int resolution);

}  // namespace monopole

#endif  // MONOPOLE_VORTEX_ANALYSIS_HPP_

#ifndef MONOPOLE_GAUGE_FIELD_HPP_
#define MONOPOLE_GAUGE_FIELD_HPP_

#include <optional>

namespace monopole {

/// Pair of Laguerre azimuthal indices (l1, l2) of the two driving beams.
/// Everything topological downstream depends only on delta() = l2 - l1.
struct LaserModePair {
  int l1;
  int l2;

  LaserModePair(int l1_in, int l2_in);

  int delta() const { return l2 - l1; }
};

/// Two-patch covering of the sphere: North is theta in [0, pi/2],
/// South is theta in [pi/2, pi].
enum class Hemisphere { North, South };

/// Local beam parameterization at colatitude theta on the north patch.
struct BetaGamma {
  double beta;           // arctan(sin^delta theta)
  double dbeta_dtheta;
  int gamma_slope_1;     // gamma_j(phi) = gamma_slope_j * phi
  int gamma_slope_2;
};

/// Monopole gauge structure induced by a LaserModePair, in the fixed gauge
/// where the dphi coefficient vanishes at each patch's pole.
///
/// All angles are radians; scalar potentials are reported as r0^2 * W so the
/// sphere radius never appears. Instances are immutable and every method is
/// a pure function.
class GaugeField {
 public:
  explicit GaugeField(LaserModePair modes);

  /// Field with f == 0 and W == 0 (no lasers). Used as an oracle hook: the
  /// latitude problem then reduces to the Legendre equation.
  static GaugeField disabled();

  bool enabled() const { return modes_.has_value(); }
  const std::optional<LaserModePair>& modes() const { return modes_; }

  /// f(theta) = [l1 + l2 s^{2d}] / [1 + s^{2d}], s = sin theta, d = delta.
  /// Continuous on [0, pi], symmetric about the equator.
  double f_profile(double theta) const;

  /// Exact derivative df/dtheta = cos(theta) 2 d^2 s^{2d-1} / (1 + s^{2d})^2.
  double f_derivative(double theta) const;

  /// Beam angles on the north patch, theta in [0, pi/2].
  BetaGamma beta_gamma(double theta) const;

  /// Coefficient of dphi of the patch gauge potential:
  /// +[f - f(0)] on North, -[f - f(0)] on South. Throws std::domain_error
  /// when theta lies outside the patch.
  double gauge_a_phi(Hemisphere patch, double theta) const;

  /// r0^2 * W via the closed form d^2 (1+cos^2) s^{2d-2} / (1+s^{2d})^2,
  /// finite on all of [0, pi].
  double scalar_w(double theta) const;

  /// r0^2 * W recomputed from the beam angles (cos^2 b sin^2 b |dg1-dg2|^2 +
  /// |db|^2 with the sphere metric). Independent of scalar_w's closed form;
  /// singular parameterization excludes theta = 0.
  double scalar_w_from_definition(double theta) const;

  /// Chern number l2 - l1 (0 when disabled). Equals twice the equator
  /// transition jump f(pi/2) - f(0).
  int chern_analytic() const;

  /// Curvature flux / 2pi evaluated as 2 * integral of f_derivative over
  /// [0, pi/2], composite Gauss-Legendre panels on a uniform theta grid.
  /// Panel counts below 16 are clamped to 16.
  double chern_quadrature(int n_panels) const;

  // z = cos(theta) parameterization used by the latitude solver. Both are
  // functions of z^2 only, so mirrored nodes evaluate bitwise equal.

  /// g(z) = f(theta) - f(0) = delta * u / (1 + u), u = (1 - z^2)^delta.
  double f_minus_f0_of_z(double z) const;

  /// r0^2 * W as a function of z.
  double scalar_w_of_z(double z) const;

 private:
  GaugeField() = default;

  std::optional<LaserModePair> modes_;
};

}  // namespace monopole

#endif  // MONOPOLE_GAUGE_FIELD_HPP_

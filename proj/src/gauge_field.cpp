#include "monopole/gauge_field.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace monopole {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = 0.5 * std::numbers::pi;

void require_full_range(double theta) {
  if (!(theta >= 0.0 && theta <= kPi)) {
    throw std::domain_error("theta = " + std::to_string(theta) +
                            " outside [0, pi]");
  }
}

}  // namespace

LaserModePair::LaserModePair(int l1_in, int l2_in) : l1(l1_in), l2(l2_in) {
  if (l1 < 0 || l1 >= l2) {
    throw std::invalid_argument("laser modes require 0 <= l1 < l2, got (" +
                                std::to_string(l1) + ", " + std::to_string(l2) +
                                ")");
  }
}

GaugeField::GaugeField(LaserModePair modes) : modes_(modes) {}

GaugeField GaugeField::disabled() { return GaugeField(); }

double GaugeField::f_profile(double theta) const {
  require_full_range(theta);
  if (!enabled()) return 0.0;
  const double s = std::sin(theta);
  const double u = std::pow(s, 2 * modes_->delta());
  return (modes_->l1 + modes_->l2 * u) / (1.0 + u);
}

double GaugeField::f_derivative(double theta) const {
  require_full_range(theta);
  if (!enabled()) return 0.0;
  const int d = modes_->delta();
  const double s = std::sin(theta);
  const double u = std::pow(s, 2 * d);
  const double denom = (1.0 + u) * (1.0 + u);
  return std::cos(theta) * 2.0 * d * d * std::pow(s, 2 * d - 1) / denom;
}

BetaGamma GaugeField::beta_gamma(double theta) const {
  if (!enabled()) {
    throw std::logic_error("beta_gamma is undefined for a disabled gauge");
  }
  if (!(theta >= 0.0 && theta <= kHalfPi)) {
    throw std::domain_error("beta_gamma parameterizes the north patch only");
  }
  const int d = modes_->delta();
  const double s = std::sin(theta);
  const double sd = std::pow(s, d);
  BetaGamma out;
  out.beta = std::atan(sd);
  out.dbeta_dtheta =
      d * std::pow(s, d - 1) * std::cos(theta) / (1.0 + sd * sd);
  out.gamma_slope_1 = -modes_->l1;
  out.gamma_slope_2 = -modes_->l2;
  return out;
}

double GaugeField::gauge_a_phi(Hemisphere patch, double theta) const {
  require_full_range(theta);
  if (patch == Hemisphere::North && theta > kHalfPi) {
    throw std::domain_error("north patch covers theta in [0, pi/2]");
  }
  if (patch == Hemisphere::South && theta < kHalfPi) {
    throw std::domain_error("south patch covers theta in [pi/2, pi]");
  }
  if (!enabled()) return 0.0;
  const double shift = f_profile(theta) - modes_->l1;
  return patch == Hemisphere::North ? shift : -shift;
}

double GaugeField::scalar_w(double theta) const {
  require_full_range(theta);
  if (!enabled()) return 0.0;
  const int d = modes_->delta();
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  const double u = std::pow(s, 2 * d);
  const double denom = (1.0 + u) * (1.0 + u);
  return d * d * (1.0 + c * c) * std::pow(s, 2 * d - 2) / denom;
}

double GaugeField::scalar_w_from_definition(double theta) const {
  if (!enabled()) return 0.0;
  if (!(theta > 0.0 && theta <= kHalfPi)) {
    throw std::domain_error(
        "definition route needs theta in (0, pi/2]: |dphi|^2 is singular at "
        "the pole");
  }
  const BetaGamma bg = beta_gamma(theta);
  const double sb = std::sin(bg.beta);
  const double cb = std::cos(bg.beta);
  const double s = std::sin(theta);
  const double slope_diff = bg.gamma_slope_1 - bg.gamma_slope_2;
  // |d gamma_1 - d gamma_2|^2 = slope_diff^2 / (r0 sin theta)^2,
  // |d beta|^2 = (dbeta/dtheta)^2 / r0^2; both scaled by r0^2 here.
  const double angular = cb * cb * sb * sb * slope_diff * slope_diff / (s * s);
  return angular + bg.dbeta_dtheta * bg.dbeta_dtheta;
}

int GaugeField::chern_analytic() const {
  return enabled() ? modes_->delta() : 0;
}

double GaugeField::chern_quadrature(int n_panels) const {
  const int panels = n_panels < 16 ? 16 : n_panels;
  // 4-point Gauss-Legendre abscissae/weights on [-1, 1].
  const double r1 = std::sqrt(3.0 / 7.0 - 2.0 / 7.0 * std::sqrt(6.0 / 5.0));
  const double r2 = std::sqrt(3.0 / 7.0 + 2.0 / 7.0 * std::sqrt(6.0 / 5.0));
  const double w1 = (18.0 + std::sqrt(30.0)) / 36.0;
  const double w2 = (18.0 - std::sqrt(30.0)) / 36.0;
  const double x[4] = {-r2, -r1, r1, r2};
  const double w[4] = {w2, w1, w1, w2};

  double sum = 0.0;
  for (int i = 0; i < panels; ++i) {
    const double lo = kHalfPi * i / panels;
    const double hi = kHalfPi * (i + 1) / panels;
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    for (int j = 0; j < 4; ++j) {
      sum += half * w[j] * f_derivative(mid + half * x[j]);
    }
  }
  return 2.0 * sum;
}

double GaugeField::f_minus_f0_of_z(double z) const {
  if (!enabled()) return 0.0;
  const int d = modes_->delta();
  const double u = std::pow(1.0 - z * z, d);
  return d * u / (1.0 + u);
}

double GaugeField::scalar_w_of_z(double z) const {
  if (!enabled()) return 0.0;
  const int d = modes_->delta();
  const double s2 = 1.0 - z * z;
  const double u = std::pow(s2, d);
  const double denom = (1.0 + u) * (1.0 + u);
  return d * d * (1.0 + z * z) * std::pow(s2, d - 1) / denom;
}

}  // namespace monopole

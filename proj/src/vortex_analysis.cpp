#include "monopole/vortex_analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace monopole {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kHalfPi = 0.5 * std::numbers::pi;
const double kInvSqrt2Pi = 1.0 / std::sqrt(kTwoPi);

double wrap_two_pi(double angle) {
  double a = std::fmod(angle, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  return a;
}

std::array<double, 3> unit_vector(double theta, double phi) {
  const double s = std::sin(theta);
  return {s * std::cos(phi), s * std::sin(phi), std::cos(theta)};
}

double geodesic_distance(double theta_a, double phi_a, double theta_b,
                         double phi_b) {
  const std::array<double, 3> a = unit_vector(theta_a, phi_a);
  const std::array<double, 3> b = unit_vector(theta_b, phi_b);
  const double dot = a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
  return std::acos(std::clamp(dot, -1.0, 1.0));
}

}  // namespace

ThetaInterpolant::ThetaInterpolant(const LatitudeMode& mode)
    : n_(static_cast<int>(mode.theta_values.size())),
      alpha_(0.5 * std::abs(mode.sector.m_north)),
      beta_(0.5 * std::abs(mode.sector.m_south)) {
  if (n_ < 4) throw std::invalid_argument("interpolation needs >= 4 nodes");
  h_ = 2.0 / n_;
  nodes_.resize(n_);
  smooth_.resize(n_);
  for (int i = 0; i < n_; ++i) {
    const double z = -1.0 + (i + 0.5) * h_;
    nodes_[i] = z;
    const double b =
        std::pow(1.0 - z, alpha_) * std::pow(1.0 + z, beta_);
    smooth_[i] = mode.theta_values[i] / b;
  }
}

double ThetaInterpolant::at_z(double z) const {
  if (!(z >= -1.0 && z <= 1.0)) {
    throw std::domain_error("interpolation needs z in [-1, 1]");
  }
  // Window of the four nearest cell centers (clamped near the poles, where
  // the smooth factor extrapolates and the pole factor enforces the decay).
  int i0 = static_cast<int>(std::floor((z + 1.0) / h_ - 0.5)) - 1;
  i0 = std::clamp(i0, 0, n_ - 4);

  // Lagrange cubic on the uniform window.
  double value = 0.0;
  for (int j = 0; j < 4; ++j) {
    double basis = 1.0;
    for (int m = 0; m < 4; ++m) {
      if (m == j) continue;
      basis *= (z - nodes_[i0 + m]) / (nodes_[i0 + j] - nodes_[i0 + m]);
    }
    value += smooth_[i0 + j] * basis;
  }
  return value * std::pow(1.0 - z, alpha_) * std::pow(1.0 + z, beta_);
}

SphereWavefunction SphereWavefunction::sector_state(LatitudeMode mode) {
  SphereWavefunction state;
  state.chern_ = mode.sector.chern;
  state.interpolants_.emplace_back(mode);
  state.modes_.push_back(std::move(mode));
  state.weights_.push_back(1.0);
  return state;
}

SphereWavefunction SphereWavefunction::superposition(LatitudeMode mode_north,
                                                     LatitudeMode mode_south,
                                                     BlochPoint bloch) {
  if (!(mode_south.sector == mode_north.sector.mirror())) {
    throw std::invalid_argument(
        "superposition needs a mirror pair of sector modes");
  }
  if (!(bloch.chi >= 0.0 && bloch.chi <= kPi)) {
    throw std::invalid_argument("chi must lie in [0, pi]");
  }
  SphereWavefunction state;
  state.chern_ = mode_north.sector.chern;
  state.bloch_ = BlochPoint{bloch.chi, wrap_two_pi(bloch.alpha)};
  state.interpolants_.emplace_back(mode_north);
  state.interpolants_.emplace_back(mode_south);
  state.modes_.push_back(std::move(mode_north));
  state.modes_.push_back(std::move(mode_south));
  const double half = 0.5 * bloch.chi;
  state.weights_.push_back(std::cos(half));
  state.weights_.push_back(std::polar(std::sin(half), state.bloch_->alpha));
  return state;
}

std::complex<double> SphereWavefunction::evaluate_in_gauge(Hemisphere gauge,
                                                           double theta,
                                                           double phi) const {
  if (!(theta >= 0.0 && theta <= kPi)) {
    throw std::domain_error("theta outside [0, pi]");
  }
  const double z = std::cos(theta);
  std::complex<double> value = 0.0;
  for (std::size_t t = 0; t < modes_.size(); ++t) {
    // In the north gauge the azimuthal factor is e^{i m_N phi} on the whole
    // sphere; in the south gauge it is e^{-i m_S phi}. The two differ by the
    // equator transition e^{i CN phi}.
    const double m = gauge == Hemisphere::North
                         ? static_cast<double>(modes_[t].sector.m_north)
                         : static_cast<double>(-modes_[t].sector.m_south);
    value += weights_[t] * std::polar(1.0, m * phi) *
             interpolants_[t].at_z(z);
  }
  return value * kInvSqrt2Pi;
}

std::complex<double> SphereWavefunction::evaluate(double theta,
                                                  double phi) const {
  return evaluate_in_gauge(
      theta <= kHalfPi ? Hemisphere::North : Hemisphere::South, theta, phi);
}

double SphereWavefunction::norm_squared() const {
  // Cross terms integrate to zero: the pair has distinct azimuthal indices.
  double total = 0.0;
  for (std::size_t t = 0; t < modes_.size(); ++t) {
    const double h = 2.0 / static_cast<double>(modes_[t].theta_values.size());
    double sum = 0.0;
    for (double v : modes_[t].theta_values) sum += v * v;
    total += std::norm(weights_[t]) * sum * h;
  }
  return total;
}

VortexRecord bloch_to_vortex(const SphereWavefunction& state) {
  if (!state.superposed() || state.chern() != 1 ||
      state.north_mode().sector.m_north != 1) {
    throw std::invalid_argument(
        "the closed-form vortex map needs the CN=1 (1,0)/(0,1) ground pair");
  }
  const BlochPoint bloch = *state.bloch();
  const ThetaInterpolant& north = state.north_interpolant();
  const ThetaInterpolant& south = state.south_interpolant();

  VortexRecord rec{};
  rec.winding = 1;
  if (bloch.chi == 0.0 || bloch.chi == kPi) {
    rec.theta = bloch.chi == 0.0 ? 0.0 : kPi;
    rec.phi = 0.0;
    rec.at_pole = true;
    rec.residual_modulus = std::abs(state.evaluate(rec.theta, 0.0));
    return rec;
  }

  // Zero condition: cos(chi/2) Theta_N(theta) = sin(chi/2) Theta_S(theta).
  // sign(G) = sign(tan(chi/2) - ratio) flips exactly once because the ratio
  // Theta_N/Theta_S is monotone (checked by the callers' tests).
  const double c = std::cos(0.5 * bloch.chi);
  const double s = std::sin(0.5 * bloch.chi);
  auto g = [&](double theta) {
    return c * north.at_theta(theta) - s * south.at_theta(theta);
  };
  double lo = 0.0, hi = kPi;
  double glo = g(lo);
  if (!(glo <= 0.0 && g(hi) >= 0.0)) {
    throw std::runtime_error(
        "vortex bracketing failed: sector ratio not monotone");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) <= 0.0 ? lo : hi) = mid;
  }
  rec.theta = 0.5 * (lo + hi);
  rec.phi = wrap_two_pi(bloch.alpha + kPi);
  rec.at_pole = false;
  rec.residual_modulus = std::abs(state.evaluate(rec.theta, rec.phi));
  return rec;
}

BlochPoint vortex_to_bloch(const LatitudeMode& mode_north, double theta,
                           double phi) {
  if (mode_north.sector.chern != 1 || mode_north.sector.m_north != 1) {
    throw std::invalid_argument("inverse vortex map needs the (1,0) mode");
  }
  if (!(theta >= 0.0 && theta <= kPi)) {
    throw std::domain_error("theta outside [0, pi]");
  }
  const ThetaInterpolant north(mode_north);
  const double z = std::cos(theta);
  const double chi = 2.0 * std::atan2(north.at_z(z), north.at_z(-z));
  return {chi, wrap_two_pi(phi + kPi)};
}

int winding_number(const SphereWavefunction& state, double center_theta,
                   double center_phi, double loop_radius, int n_samples) {
  if (n_samples < 64) {
    throw std::invalid_argument("winding needs at least 64 samples");
  }
  if (!(loop_radius > 0.0 && loop_radius < kHalfPi)) {
    throw std::invalid_argument("loop radius must lie in (0, pi/2)");
  }
  // Orthonormal frame with u x v = r, so t -> p(t) runs counterclockwise as
  // seen from outside along the outward normal at the center.
  const std::array<double, 3> r = unit_vector(center_theta, center_phi);
  std::array<double, 3> u{};
  if (std::abs(std::sin(center_theta)) < 1e-12) {
    u = {1.0, 0.0, 0.0};
  } else {
    const double inv = 1.0 / std::hypot(r[0], r[1]);
    u = {-r[1] * inv, r[0] * inv, 0.0};
  }
  const std::array<double, 3> v = {r[1] * u[2] - r[2] * u[1],
                                   r[2] * u[0] - r[0] * u[2],
                                   r[0] * u[1] - r[1] * u[0]};

  // A single gauge, regular on the loop's hemisphere, must be used for all
  // samples: the patchwise value jumps by e^{i CN phi} at the equator and
  // would corrupt the phase sum of equator-crossing loops.
  const Hemisphere gauge =
      center_theta <= kHalfPi ? Hemisphere::North : Hemisphere::South;

  const double cr = std::cos(loop_radius);
  const double sr = std::sin(loop_radius);
  double previous = 0.0;
  double first = 0.0;
  double total = 0.0;
  for (int k = 0; k < n_samples; ++k) {
    const double t = kTwoPi * k / n_samples;
    const double ct = std::cos(t);
    const double st = std::sin(t);
    const std::array<double, 3> p = {cr * r[0] + sr * (ct * u[0] + st * v[0]),
                                     cr * r[1] + sr * (ct * u[1] + st * v[1]),
                                     cr * r[2] + sr * (ct * u[2] + st * v[2])};
    const double theta = std::acos(std::clamp(p[2], -1.0, 1.0));
    const double phi = wrap_two_pi(std::atan2(p[1], p[0]));
    const std::complex<double> value = state.evaluate_in_gauge(gauge, theta, phi);
    if (value == std::complex<double>(0.0, 0.0)) {
      throw AmbiguousWindingError("loop passes through a zero", 1.0);
    }
    const double arg = std::arg(value);
    if (k == 0) {
      first = arg;
    } else {
      total += std::remainder(arg - previous, kTwoPi);
    }
    previous = arg;
  }
  total += std::remainder(first - previous, kTwoPi);

  const double turns = total / kTwoPi;
  const int winding = static_cast<int>(std::llround(turns));
  const double residual = std::abs(turns - winding);
  if (residual > 0.15) {
    throw AmbiguousWindingError(
        "phase sum residual " + std::to_string(residual) +
            " too far from an integer (loop too close to a zero or too few "
            "samples)",
        residual);
  }
  return winding;
}

namespace {

struct Candidate {
  double theta;
  double phi;
  double modulus;
  bool at_pole;
};

/// Deterministic compass search on (theta, phi) with geodesic-scaled phi
/// steps; shrinks until the step reaches interpolation scale.
Candidate refine_minimum(const SphereWavefunction& state, double theta,
                         double phi, double step) {
  double best = std::abs(state.evaluate(theta, phi));
  while (step > 1e-13) {
    bool moved = false;
    const double sphi = step / std::max(std::sin(theta), 1e-3);
    const std::array<std::array<double, 2>, 4> moves = {
        {{theta + step, phi},
         {theta - step, phi},
         {theta, phi + sphi},
         {theta, phi - sphi}}};
    for (const std::array<double, 2>& m : moves) {
      const double t = std::clamp(m[0], 0.0, kPi);
      const double p = wrap_two_pi(m[1]);
      const double value = std::abs(state.evaluate(t, p));
      if (value < best) {
        best = value;
        theta = t;
        phi = p;
        moved = true;
      }
    }
    if (!moved) step *= 0.5;
  }
  return {theta, phi, best, false};
}

}  // namespace

std::vector<VortexRecord> find_zeros(const SphereWavefunction& state,
                                     int resolution) {
  if (resolution < 64) {
    throw std::invalid_argument("scan resolution must be >= 64");
  }
  const int res = resolution;
  const double dtheta = kPi / res;

  std::vector<double> amplitude(static_cast<std::size_t>(res) * res);
  auto at = [&](int j, int k) -> double& {
    return amplitude[static_cast<std::size_t>(j) * res + k];
  };
  double max_amp = 0.0;
  for (int j = 0; j < res; ++j) {
    const double theta = dtheta * (j + 0.5);
    for (int k = 0; k < res; ++k) {
      const double phi = kTwoPi * k / res;
      const double a = std::abs(state.evaluate(theta, phi));
      at(j, k) = a;
      max_amp = std::max(max_amp, a);
    }
  }
  const double north_amp = std::abs(state.evaluate(0.0, 0.0));
  const double south_amp = std::abs(state.evaluate(kPi, 0.0));
  max_amp = std::max({max_amp, north_amp, south_amp});
  const double threshold = 1e-3 * max_amp;
  const double merge_distance = 3.0 * dtheta;

  std::vector<Candidate> found;
  if (north_amp <= threshold) found.push_back({0.0, 0.0, north_amp, true});
  if (south_amp <= threshold) found.push_back({kPi, 0.0, south_amp, true});

  for (int j = 0; j < res; ++j) {
    for (int k = 0; k < res; ++k) {
      const double a = at(j, k);
      if (a > 0.5 * max_amp) continue;  // cheap pre-filter for flat states
      bool is_min = true;
      for (int dj = -1; dj <= 1 && is_min; ++dj) {
        for (int dk = -1; dk <= 1; ++dk) {
          if (dj == 0 && dk == 0) continue;
          const int jj = j + dj;
          const int kk = (k + dk + res) % res;
          const double neighbor = jj < 0      ? north_amp
                                  : jj >= res ? south_amp
                                              : at(jj, kk);
          if (neighbor < a) {
            is_min = false;
            break;
          }
        }
      }
      if (!is_min) continue;

      Candidate c = refine_minimum(state, dtheta * (j + 0.5),
                                   kTwoPi * k / res, dtheta);
      if (c.modulus > threshold) continue;
      bool merged = false;
      for (Candidate& existing : found) {
        if (geodesic_distance(c.theta, c.phi, existing.theta, existing.phi) <
            merge_distance) {
          if (!existing.at_pole && c.modulus < existing.modulus) existing = c;
          merged = true;
          break;
        }
      }
      if (!merged) found.push_back(c);
    }
  }

  std::sort(found.begin(), found.end(), [](const Candidate& a, const Candidate& b) {
    return a.theta != b.theta ? a.theta < b.theta : a.phi < b.phi;
  });

  std::vector<VortexRecord> records;
  records.reserve(found.size());
  for (const Candidate& c : found) {
    VortexRecord rec{};
    rec.theta = c.theta;
    rec.phi = c.at_pole ? 0.0 : c.phi;
    rec.at_pole = c.at_pole;
    rec.residual_modulus = c.modulus;
    rec.winding =
        winding_number(state, c.theta, c.phi, merge_distance, 720);
    records.push_back(rec);
  }

  if (state.chern() != 0 && records.empty()) {
    throw std::logic_error(
        "no zeros located for a state with nonzero Chern number");
  }
  return records;
}

int total_winding(const SphereWavefunction& state, int resolution) {
  int total = 0;
  for (const VortexRecord& rec : find_zeros(state, resolution)) {
    total += rec.winding;
  }
  return total;
}

}  // namespace monopole

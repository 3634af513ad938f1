#include "monopole/latitude_spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace monopole {

LatitudeGrid::LatitudeGrid(int n_cells) : n_(n_cells) {
  if (n_cells < 4 || n_cells % 2 != 0) {
    throw std::invalid_argument("grid needs an even cell count >= 4, got " +
                                std::to_string(n_cells));
  }
  h_ = 2.0 / n_cells;
  nodes_.resize(n_cells);
  half_points_.resize(n_cells + 1);
  // Fill the south half and mirror it, so z -> -z is an exact involution of
  // the tables in floating point.
  for (int i = 0; i < n_cells / 2; ++i) {
    const double z = -1.0 + (i + 0.5) * h_;
    nodes_[i] = z;
    nodes_[n_cells - 1 - i] = -z;
  }
  for (int j = 0; j < n_cells / 2; ++j) {
    const double w = -1.0 + j * h_;
    half_points_[j] = w;
    half_points_[n_cells - j] = -w;
  }
  half_points_[n_cells / 2] = 0.0;
}

double LatitudeOperator::inf_norm() const {
  double norm = 0.0;
  const std::size_t n = diag.size();
  for (std::size_t i = 0; i < n; ++i) {
    double row = std::abs(diag[i]);
    if (i > 0) row += std::abs(off[i - 1]);
    if (i + 1 < n) row += std::abs(off[i]);
    norm = std::max(norm, row);
  }
  return norm;
}

double f_cap_profile(const GaugeField& gauge, const Sector& sector, double z) {
  if (sector.m_north + sector.m_south != gauge.chern_analytic()) {
    throw std::invalid_argument(
        "sector windings do not sum to the Chern number; F would jump at the "
        "equator");
  }
  if (!(z > -1.0 && z < 1.0)) {
    throw std::domain_error("f_cap_profile needs z in (-1, 1)");
  }
  const double g = gauge.f_minus_f0_of_z(z);
  if (z > 0.0) return g - sector.m_north;
  if (z < 0.0) return sector.m_south - g;
  // Both branches agree at the equator; g(0) = chern/2.
  return g - sector.m_north;
}

LatitudeOperator assemble(const GaugeField& gauge, const Sector& sector,
                          const LatitudeGrid& grid) {
  if (sector.m_north + sector.m_south != gauge.chern_analytic()) {
    throw std::invalid_argument(
        "sector windings do not sum to the Chern number");
  }
  const int n = grid.n_cells();
  const double h = grid.spacing();
  const double inv_h2 = 1.0 / (h * h);
  const std::vector<double>& z = grid.nodes();
  const std::vector<double>& w = grid.half_points();

  const int a = std::abs(sector.m_north);   // pole exponent at z = +1
  const int b = std::abs(sector.m_south);   // pole exponent at z = -1
  const double alpha = 0.5 * a;
  const double beta = 0.5 * b;

  // Mirror sectors swap (a, b); every expression below pairs the two pole
  // factors commutatively so the assembled matrices come out as bitwise
  // index-reversals of each other.
  std::vector<double> bfac(n);
  for (int i = 0; i < n; ++i) {
    bfac[i] = std::pow(1.0 - z[i], alpha) * std::pow(1.0 + z[i], beta);
  }
  std::vector<double> ph(n + 1, 0.0);  // (1-w^2) * B(w)^2 at cell edges
  for (int j = 1; j < n; ++j) {
    const double poles =
        std::pow(1.0 - w[j], static_cast<double>(a)) *
        std::pow(1.0 + w[j], static_cast<double>(b));
    ph[j] = (1.0 - w[j] * w[j]) * poles;
  }

  LatitudeOperator op{std::vector<double>(n), std::vector<double>(n - 1), grid,
                      sector};
  for (int i = 0; i < n; ++i) {
    const double f_cap = f_cap_profile(gauge, sector, z[i]);
    const double c = (beta - alpha) - (alpha + beta) * z[i];
    // The pole transform turns F^2/(1-z^2) into the bounded remainder
    // (F^2 - c^2)/(1-z^2) + (alpha + beta); F^2 - c^2 vanishes at both
    // poles by construction of the exponents.
    const double q_eff = (f_cap * f_cap - c * c) / (1.0 - z[i] * z[i]) +
                         gauge.scalar_w_of_z(z[i]) + (alpha + beta);
    op.diag[i] = (ph[i] + ph[i + 1]) * inv_h2 / (bfac[i] * bfac[i]) + q_eff;
  }
  for (int i = 0; i + 1 < n; ++i) {
    op.off[i] = -(ph[i + 1] * inv_h2) / (bfac[i] * bfac[i + 1]);
  }
  return op;
}

std::vector<LatitudeMode> eigen_lowest(const LatitudeOperator& op, int k,
                                       double tol) {
  const int n = op.grid.n_cells();
  if (k < 1 || k > n) {
    throw std::invalid_argument("mode count must be in [1, n_cells]");
  }
  tridiag::Options options;
  options.abs_tol = std::max(tol, 1e-12 * op.inf_norm());
  std::vector<tridiag::Eigenpair> pairs =
      tridiag::smallest(op.diag, op.off, k, options);

  const double h = op.grid.spacing();
  std::vector<LatitudeMode> modes;
  modes.reserve(pairs.size());
  for (tridiag::Eigenpair& p : pairs) {
    double sumsq = 0.0;
    for (double v : p.vector) sumsq += v * v;
    const double scale = 1.0 / std::sqrt(sumsq * h);

    // Sign convention: positive at the global maximum of |Theta|.
    std::size_t arg = 0;
    for (std::size_t i = 1; i < p.vector.size(); ++i) {
      if (std::abs(p.vector[i]) > std::abs(p.vector[arg])) arg = i;
    }
    const double signed_scale = p.vector[arg] < 0.0 ? -scale : scale;

    LatitudeMode mode;
    mode.lambda = p.value;
    mode.sector = op.sector;
    mode.theta_values.resize(p.vector.size());
    for (std::size_t i = 0; i < p.vector.size(); ++i) {
      mode.theta_values[i] = p.vector[i] * signed_scale;
    }
    modes.push_back(std::move(mode));
  }
  return modes;
}

double ground_energy(const GaugeField& gauge, const Sector& sector,
                     const LatitudeGrid& grid) {
  return eigen_lowest(assemble(gauge, sector, grid), 1).front().lambda;
}

double legendre_reference(int l, int m) {
  if (l < std::abs(m)) {
    throw std::invalid_argument("legendre_reference needs l >= |m|");
  }
  return static_cast<double>(l) * (l + 1);
}

}  // namespace monopole

#ifndef MONOPOLE_LATITUDE_SPECTRUM_HPP_
#define MONOPOLE_LATITUDE_SPECTRUM_HPP_

#include <vector>

#include "monopole/gauge_field.hpp"
#include "monopole/tridiagonal.hpp"

namespace monopole {

/// One axisymmetric block of the problem: winding m_north at the north
/// pole, m_south at the south pole, constrained by m_north + m_south = chern.
struct Sector {
  int m_north;
  int m_south;
  int chern;

  static Sector make(int chern, int m_north) {
    return {m_north, chern - m_north, chern};
  }

  Sector mirror() const { return {m_south, m_north, chern}; }

  friend bool operator==(const Sector& a, const Sector& b) {
    return a.m_north == b.m_north && a.m_south == b.m_south &&
           a.chern == b.chern;
  }
};

/// Cell-centered uniform grid on z = cos(theta) in [-1, 1]. The node and
/// half-point tables are built mirror-exact: nodes[n-1-i] == -nodes[i]
/// bitwise, so mirror sectors assemble to bitwise-reversed matrices.
/// North pole is z = +1.
class LatitudeGrid {
 public:
  explicit LatitudeGrid(int n_cells);

  int n_cells() const { return n_; }
  double spacing() const { return h_; }
  /// Cell centers z_i = -1 + (i + 1/2) h, i = 0 .. n-1 (south to north).
  const std::vector<double>& nodes() const { return nodes_; }
  /// Cell edges w_j = -1 + j h, j = 0 .. n.
  const std::vector<double>& half_points() const { return half_points_; }

 private:
  int n_;
  double h_;
  std::vector<double> nodes_;
  std::vector<double> half_points_;
};

/// Symmetric tridiagonal discretization of the latitude operator for one
/// sector (see assemble).
struct LatitudeOperator {
  std::vector<double> diag;
  std::vector<double> off;  // size n-1, all <= 0
  LatitudeGrid grid;
  Sector sector;

  double inf_norm() const;
};

/// Eigenpair of the latitude problem: lambda in units of 1/(2 M r0^2),
/// profile Theta on the grid nodes with sum(Theta_i^2) h = 1 and Theta
/// positive at its global maximum.
struct LatitudeMode {
  double lambda;
  std::vector<double> theta_values;
  Sector sector;
};

/// F(z): m_south - [f - f(0)] on the south patch (z < 0),
/// [f - f(0)] - m_north on the north patch (z > 0); continuous at z = 0
/// exactly when the sector is consistent with the gauge's Chern number.
/// z must lie in (-1, 1).
double f_cap_profile(const GaugeField& gauge, const Sector& sector, double z);

/// Conservation-form discretization of
///   -d/dz (1-z^2) d/dz + F^2/(1-z^2) + r0^2 W
/// on the cell-centered grid, with the known pole behavior
/// (1-z)^{|m_N|/2} (1+z)^{|m_S|/2} factored out of the unknown before
/// differencing and the result symmetrized back, so the returned matrix
/// acts directly on Theta at the nodes. Boundary fluxes vanish identically
/// (the weight is zero at z = +-1): no explicit boundary conditions.
/// For m_north = m_south = 0 this reduces to the plain stencil
/// diag_i = (p_{i-1/2}+p_{i+1/2})/h^2 + q(z_i), off_i = -p_{i+1/2}/h^2.
///
/// Throws std::invalid_argument when the sector is inconsistent with the
/// gauge (F would jump at the equator).
LatitudeOperator assemble(const GaugeField& gauge, const Sector& sector,
                          const LatitudeGrid& grid);

/// The k smallest eigenpairs of the operator, ascending, deterministic.
/// Bisection tolerance is max(tol, 1e-12 * ||op||). Throws
/// tridiag::ConvergenceError if an eigenvector stalls.
std::vector<LatitudeMode> eigen_lowest(const LatitudeOperator& op, int k,
                                       double tol = 1e-12);

/// Smallest eigenvalue for the sector.
double ground_energy(const GaugeField& gauge, const Sector& sector,
                     const LatitudeGrid& grid);

/// Legendre spectrum l(l+1), the gauge-off oracle. Requires l >= |m| >= 0.
double legendre_reference(int l, int m);

}  // namespace monopole

#endif  // MONOPOLE_LATITUDE_SPECTRUM_HPP_

#include "monopole/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

namespace monopole::tridiag {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double inf_norm(const std::vector<double>& d, const std::vector<double>& e) {
  const std::size_t n = d.size();
  double norm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = std::abs(d[i]);
    if (i > 0) row += std::abs(e[i - 1]);
    if (i + 1 < n) row += std::abs(e[i]);
    norm = std::max(norm, row);
  }
  return norm;
}

double safe_pivot_floor(const std::vector<double>& e) {
  double max_e2 = 1.0;
  for (double v : e) max_e2 = std::max(max_e2, v * v);
  return std::numeric_limits<double>::min() * max_e2;
}

int count_below(const std::vector<double>& d, const std::vector<double>& e,
                double x, double pivmin) {
  int count = 0;
  double q = d[0] - x;
  if (std::abs(q) < pivmin) q = -pivmin;
  if (q < 0.0) ++count;
  for (std::size_t i = 1; i < d.size(); ++i) {
    q = d[i] - x - e[i - 1] * e[i - 1] / q;
    if (std::abs(q) < pivmin) q = -pivmin;
    if (q < 0.0) ++count;
  }
  return count;
}

/// Bisection for the j-th (0-based) smallest eigenvalue inside [lo, hi],
/// where count(lo) <= j < count(hi).
double bisect_eigenvalue(const std::vector<double>& d,
                         const std::vector<double>& e, int j, double lo,
                         double hi, double atol, double pivmin) {
  while (true) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // interval no longer splits
    if (hi - lo <= atol + 2.0 * kEps * std::max(std::abs(lo), std::abs(hi)))
      break;
    if (count_below(d, e, mid, pivmin) > j) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// LU factorization of (T - sigma I) with partial pivoting, dgttrf-style.
struct TriFactor {
  std::vector<double> dl, dd, du, du2;
  std::vector<unsigned char> swapped;
};

TriFactor factor_shifted(const std::vector<double>& d,
                         const std::vector<double>& e, double sigma) {
  const std::size_t n = d.size();
  TriFactor f;
  f.dd.resize(n);
  f.dl.assign(n > 1 ? n - 1 : 0, 0.0);
  f.du.assign(n > 1 ? n - 1 : 0, 0.0);
  f.du2.assign(n > 2 ? n - 2 : 0, 0.0);
  f.swapped.assign(n > 1 ? n - 1 : 0, 0);
  for (std::size_t i = 0; i < n; ++i) f.dd[i] = d[i] - sigma;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    f.dl[i] = e[i];
    f.du[i] = e[i];
  }
  // Near-singular pivots (the shift sits on an eigenvalue) are floored at
  // eps * scale rather than the denormal range, so back substitution grows
  // the eigenvector direction without overflowing.
  double scale = std::numeric_limits<double>::min();
  for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::abs(f.dd[i]));
  for (double v : e) scale = std::max(scale, std::abs(v));
  const double tiny = kEps * scale;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::abs(f.dd[i]) >= std::abs(f.dl[i])) {
      double piv = f.dd[i];
      if (std::abs(piv) < tiny) piv = piv < 0.0 ? -tiny : tiny;
      const double mult = f.dl[i] / piv;
      f.dl[i] = mult;
      f.dd[i + 1] -= mult * f.du[i];
      if (i + 2 < n) f.du2[i] = 0.0;
    } else {
      const double mult = f.dd[i] / f.dl[i];
      f.dd[i] = f.dl[i];
      f.dl[i] = mult;
      const double tmp = f.du[i];
      f.du[i] = f.dd[i + 1];
      f.dd[i + 1] = tmp - mult * f.dd[i + 1];
      if (i + 2 < n) {
        f.du2[i] = f.du[i + 1];
        f.du[i + 1] = -mult * f.du[i + 1];
      }
      f.swapped[i] = 1;
    }
  }
  if (std::abs(f.dd[n - 1]) < tiny) {
    f.dd[n - 1] = f.dd[n - 1] < 0.0 ? -tiny : tiny;
  }
  return f;
}

void solve_in_place(const TriFactor& f, std::vector<double>& x) {
  const std::size_t n = f.dd.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (f.swapped[i]) std::swap(x[i], x[i + 1]);
    x[i + 1] -= f.dl[i] * x[i];
  }
  x[n - 1] /= f.dd[n - 1];
  if (n >= 2) {
    x[n - 2] = (x[n - 2] - f.du[n - 2] * x[n - 1]) / f.dd[n - 2];
  }
  for (std::size_t ip = n; ip >= 3; --ip) {
    const std::size_t i = ip - 3;
    x[i] = (x[i] - f.du[i] * x[i + 1] - f.du2[i] * x[i + 2]) / f.dd[i];
  }
}

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

void scale(std::vector<double>& v, double a) {
  for (double& x : v) x *= a;
}

/// Cancellation-free Rayleigh quotient: v' T v written as
///   sum_i gamma_i v_i^2 + sum_i |e_i| (v_i -/+ v_{i+1})^2
/// with gamma_i the Gershgorin slack d_i - |e_{i-1}| - |e_i|. All flux terms
/// are nonnegative, so the value carries no 1/h^2-scale cancellation.
double rayleigh_quotient(const std::vector<double>& d,
                         const std::vector<double>& e,
                         const std::vector<double>& v) {
  const std::size_t n = d.size();
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double gamma = d[i];
    if (i > 0) gamma -= std::abs(e[i - 1]);
    if (i + 1 < n) gamma -= std::abs(e[i]);
    num += gamma * v[i] * v[i];
    den += v[i] * v[i];
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double diff = e[i] <= 0.0 ? v[i] - v[i + 1] : v[i] + v[i + 1];
    num += std::abs(e[i]) * diff * diff;
  }
  return num / den;
}

double residual_inf(const std::vector<double>& d, const std::vector<double>& e,
                    double lambda, const std::vector<double>& v) {
  const std::size_t n = d.size();
  double r = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double t = (d[i] - lambda) * v[i];
    if (i > 0) t += e[i - 1] * v[i - 1];
    if (i + 1 < n) t += e[i] * v[i + 1];
    r = std::max(r, std::abs(t));
  }
  return r;
}

/// Fixed-seed xorshift start vector; a constant start can be exactly
/// orthogonal to symmetric/antisymmetric eigenvectors, a pseudo-random one
/// is not.
std::vector<double> start_vector(std::size_t n) {
  std::vector<double> v(n);
  std::uint64_t s = 0x9e3779b97f4a7c15ULL;
  for (std::size_t i = 0; i < n; ++i) {
    s ^= s << 13;
    s ^= s >> 7;
    s ^= s << 17;
    v[i] = static_cast<double>(s >> 11) / 9007199254740992.0 - 0.5;
  }
  return v;
}

std::vector<Eigenpair> smallest_canonical(const std::vector<double>& d,
                                          const std::vector<double>& e, int k,
                                          const Options& opt) {
  const std::size_t n = d.size();
  const double norm = inf_norm(d, e);
  const double pivmin = safe_pivot_floor(e);
  const double atol = std::max(opt.abs_tol, 1e-12 * norm);

  // Gershgorin enclosure of the whole spectrum.
  double lo = d[0];
  double hi = d[0];
  for (std::size_t i = 0; i < n; ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(e[i - 1]);
    if (i + 1 < n) r += std::abs(e[i]);
    lo = std::min(lo, d[i] - r);
    hi = std::max(hi, d[i] + r);
  }
  const double pad = kEps * std::max(std::abs(lo), std::abs(hi)) * n + pivmin;
  lo -= pad;
  hi += pad;

  std::vector<Eigenpair> out;
  out.reserve(k);
  for (int j = 0; j < k; ++j) {
    const double lambda = bisect_eigenvalue(d, e, j, lo, hi, atol, pivmin);

    // Inverse iteration at the bisected shift.
    std::vector<double> v = start_vector(n);
    scale(v, 1.0 / norm2(v));
    const TriFactor lu = factor_shifted(d, e, lambda);
    int used = 0;
    bool settled = false;
    std::vector<double> prev;
    for (int it = 0; it < opt.max_inverse_iterations; ++it) {
      ++used;
      prev = v;
      solve_in_place(lu, v);
      const double nn = norm2(v);
      if (!(nn > 0.0) || !std::isfinite(nn)) {
        v = prev;  // solve blew up; keep the last sane iterate
        break;
      }
      scale(v, 1.0 / nn);
      // Orthogonalize against earlier converged vectors of nearby
      // eigenvalues (the matrices here are unreduced, so clusters are only
      // a numerical possibility, but the guard is cheap).
      for (const Eigenpair& p : out) {
        if (std::abs(p.value - lambda) < 1e3 * atol + 1e-8 * norm) {
          double dot = 0.0;
          for (std::size_t i = 0; i < n; ++i) dot += p.vector[i] * v[i];
          for (std::size_t i = 0; i < n; ++i) v[i] -= dot * p.vector[i];
          const double nv = norm2(v);
          if (nv > 0.0) scale(v, 1.0 / nv);
        }
      }
      double dot = 0.0;
      for (std::size_t i = 0; i < n; ++i) dot += prev[i] * v[i];
      if (dot < 0.0) {
        for (double& x : v) x = -x;
        dot = -dot;
      }
      if (it > 0 && 1.0 - dot < 64.0 * kEps) {
        settled = true;
        break;
      }
    }

    const double refined = rayleigh_quotient(d, e, v);
    // The Rayleigh value is trustworthy only in the bisection bracket.
    const double value =
        std::abs(refined - lambda) <= 4.0 * (atol + kEps * norm)
            ? refined
            : lambda;

    const double res = residual_inf(d, e, value, v);
    if (!settled && res > 1e-8 * std::max(norm, 1.0)) {
      throw ConvergenceError(
          "inverse iteration stalled at eigenvalue index " +
              std::to_string(j) + ": residual " + std::to_string(res) +
              " after " + std::to_string(used) + " iterations",
          used, res);
    }
    out.push_back({value, std::move(v)});
  }

  std::stable_sort(out.begin(), out.end(),
                   [](const Eigenpair& a, const Eigenpair& b) {
                     return a.value < b.value;
                   });
  return out;
}

bool prefer_reversed(const std::vector<double>& d,
                     const std::vector<double>& e) {
  const std::size_t n = d.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double a = d[i];
    const double b = d[n - 1 - i];
    if (a != b) return b < a;
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double a = e[i];
    const double b = e[e.size() - 1 - i];
    if (a != b) return b < a;
  }
  return false;
}

}  // namespace

int sturm_count(const std::vector<double>& diag, const std::vector<double>& off,
                double x) {
  if (diag.empty()) return 0;
  if (off.size() + 1 != diag.size()) {
    throw std::invalid_argument("off-diagonal size must be n - 1");
  }
  return count_below(diag, off, x, safe_pivot_floor(off));
}

std::vector<Eigenpair> smallest(const std::vector<double>& diag,
                                const std::vector<double>& off, int k,
                                const Options& options) {
  const std::size_t n = diag.size();
  if (n == 0 || off.size() + 1 != n) {
    throw std::invalid_argument("bad tridiagonal dimensions");
  }
  if (k < 1 || static_cast<std::size_t>(k) > n) {
    throw std::invalid_argument("eigenpair count out of range");
  }
  if (n == 1) return {{diag[0], {1.0}}};

  if (!prefer_reversed(diag, off)) {
    return smallest_canonical(diag, off, k, options);
  }
  std::vector<double> rd(diag.rbegin(), diag.rend());
  std::vector<double> re(off.rbegin(), off.rend());
  std::vector<Eigenpair> pairs = smallest_canonical(rd, re, k, options);
  for (Eigenpair& p : pairs) {
    std::reverse(p.vector.begin(), p.vector.end());
  }
  return pairs;
}

}  // namespace monopole::tridiag

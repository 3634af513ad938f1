#ifndef MONOPOLE_TRIDIAGONAL_HPP_
#define MONOPOLE_TRIDIAGONAL_HPP_

#include <stdexcept>
#include <string>
#include <vector>

namespace monopole::tridiag {

/// Raised when inverse iteration cannot reach the requested residual.
/// Carries the iteration diagnostics in the message and fields.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(std::string what, int iterations, double residual)
      : std::runtime_error(std::move(what)),
        iterations(iterations),
        residual(residual) {}

  int iterations;
  double residual;
};

struct Eigenpair {
  double value;
  std::vector<double> vector;  // unit 2-norm
};

struct Options {
  double abs_tol = 0.0;           // bisection interval target (0 = machine)
  int max_inverse_iterations = 12;
};

/// Number of eigenvalues of the symmetric tridiagonal (diag, off) strictly
/// below x, by Sturm sequence count.
int sturm_count(const std::vector<double>& diag, const std::vector<double>& off,
                double x);

/// The k algebraically smallest eigenpairs, ascending. Eigenvalues by
/// bisection refined with a cancellation-free Rayleigh quotient,
/// eigenvectors by inverse iteration from a fixed deterministic start.
///
/// Deterministic, and reversal-equivariant: a matrix and its exact
/// index-reversal produce bitwise identical eigenvalues and index-reversed
/// eigenvectors (the solve runs on a canonical orientation).
std::vector<Eigenpair> smallest(const std::vector<double>& diag,
                                const std::vector<double>& off, int k,
                                const Options& options = {});

}  // namespace monopole::tridiag

#endif  // MONOPOLE_TRIDIAGONAL_HPP_

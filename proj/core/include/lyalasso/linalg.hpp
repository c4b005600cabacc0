#pragma once

#include "lyalasso/types.hpp"

namespace lyalasso {

/// Spectral abscissa of a square matrix together with the stability verdict.
/// "Stable" is abscissa < -1e-10; matrices with eigenvalues closer to the
/// imaginary axis are reported unstable because downstream Lyapunov solves
/// degrade there.
struct StabilityReport {
  double abscissa = 0.0;
  bool stable = false;
};

inline constexpr double kStabilityTol = -1e-10;

/// Commutation matrix K^(p,p): K * vec(A) = vec(A^T). An orthogonal
/// involution (0/1 entries).
Matrix commutation_matrix(int p);

/// Max real part of the eigenvalues of M (real Schur based).
StabilityReport stability_margin(const Matrix& m);

/// Solve M*X + X*M^T + C = 0 for symmetric (not necessarily definite) C,
/// e.g. the adjoint equations behind likelihood gradients.
///
/// Uses the dense p^2 x p^2 vectorized system with an LU factorization; the
/// result is symmetrized.  Throws NumericalError for non-stable M
/// ("non-stable drift"), a singular vectorized system (message carries the
/// reciprocal condition estimate), or a residual above the backward-relative
/// tolerance 1e-10 * (1 + max|C| + max|M| max|X|).
Matrix solve_lyapunov_general(const Matrix& m, const Matrix& c);

/// Solve M*Sigma + Sigma*M^T + C = 0 for the equilibrium covariance Sigma.
///
/// solve_lyapunov_general plus a positive-definiteness check of the
/// solution via Cholesky, which fails for volatilities that are not PD.
Matrix solve_lyapunov(const Matrix& m, const Matrix& c);

}  // namespace lyalasso

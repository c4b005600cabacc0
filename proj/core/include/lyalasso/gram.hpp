#pragma once

#include "lyalasso/types.hpp"

namespace lyalasso {

// Linear operator of the continuous Lyapunov equation in vectorized form:
//
//   build_A(sigma) * vec(M) == vec(M * sigma + sigma * M^T)
//
// for every p x p matrix M.  A(sigma) is p^2 x p^2 and generally
// non-symmetric.  Intended for small p; the quadratic-program path below
// never materializes it.
Matrix build_A(const Matrix& sigma);

// Gram matrix A(sigma)^T A(sigma), assembled entrywise in O(p^4) without
// forming A.  With a = (i,j) and b = (k,l) as flat column-stacked indices,
//
//   Gram[a,b] = 2 * (sigma^2)[j,l] * (i == k) + 2 * sigma[j,k] * sigma[i,l]
//
// The result is exactly symmetric.  Requires sigma symmetric.
Matrix build_gram(const Matrix& sigma);

// Linear term -A(sigma)^T vec(c) of the least-squares objective, which for
// symmetric sigma and c reduces to -2 vec(c * sigma).
Vector build_g(const Matrix& sigma, const Matrix& c);

// Frobenius norm of M * sigma + sigma * M^T + c.
double lyapunov_residual(const Matrix& m, const Matrix& sigma,
                         const Matrix& c);

// Quadratic program data for the penalized drift estimator at a fixed
// covariance.  The objective evaluated by penalized_objective is
//
//   0.5 * v' Gram v - g' v + lambda * ||v||_1
//
// which differs from 0.5 * ||M sigma + sigma M' + c||_F^2 + lambda * ||v||_1
// by the constant 0.5 * ||vec(c)||^2 stored in c_norm_sq.
struct GramSystem {
  int p = 0;
  Matrix gram;        // p^2 x p^2, symmetric positive semidefinite
  Vector g;           // p^2
  double c_norm_sq = 0.0;  // ||vec(c)||^2
};

GramSystem make_gram_system(const Matrix& sigma, const Matrix& c);

double penalized_objective(const GramSystem& sys, const Vector& v,
                           double lambda);

}  // namespace lyalasso

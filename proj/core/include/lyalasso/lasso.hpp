#pragma once

#include <memory>
#include <vector>

#include "lyalasso/gram.hpp"

namespace lyalasso {

struct LassoSolution {
  Matrix m_hat;
  double lambda = 0.0;
  double objective = 0.0;
  double kkt_residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Regularization path, solved from the largest lambda down with warm starts.
// failed[k] marks entries whose solve threw; their solution slot holds the
// zero matrix with converged=false and the rest of the path is unaffected.
struct LassoPath {
  Vector lambdas;  // strictly decreasing
  std::vector<LassoSolution> solutions;
  std::vector<unsigned char> failed;
  std::shared_ptr<const GramSystem> gram;
};

// Cyclic coordinate descent for
//
//   min_v  0.5 * v' Gram v - g' v + lambda * ||v||_1
//
// over all p^2 coordinates (diagonal included), visited in flat-index order.
// Stops when the largest coordinate change in a sweep is at most
// tol * (1 + ||v||_inf) and the KKT residual is at most 1e-6 * max(1, lambda),
// with a cap of 10000 sweeps (converged=false when hit).  The objective is
// checked to be non-increasing across sweeps.
//
// Throws NumericalError("degenerate Gram diagonal") if any Gram[k,k] <= 0.
LassoSolution solve_lasso(const GramSystem& gram, double lambda,
                          const Vector* init = nullptr, double tol = 1e-10);

// Max-norm violation of the subgradient optimality conditions:
// |(Gram v - g)_k + lambda * sign(v_k)| where v_k != 0, and
// max(0, |(Gram v - g)_k| - lambda) where v_k == 0.
double kkt_residual(const GramSystem& gram, const Vector& v, double lambda);

// Smallest lambda (within relative tolerance tol_rel) at which the estimate
// has no off-diagonal entries, found by bisection on [0, ||g||_inf] against
// the solver.  When off-diagonals vanish along the entire interval (e.g. a
// diagonal-only model) the bisection runs into its 64-halving floor and the
// floor value is returned.  For p = 1 returns ||g||_inf.
double lambda_max(const GramSystem& gram, double tol_rel = 1e-2);

// Log-equidistant grid of grid_size lambdas from lambda_max down to
// lambda_max/span, each solved with a warm start from its predecessor.
LassoPath fit_path(const GramSystem& gram, int grid_size = 100,
                   double span = 1e4);

}  // namespace lyalasso

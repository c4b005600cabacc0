#pragma once

#include <vector>

#include "lyalasso/types.hpp"

namespace lyalasso {

// Two times the negative Gaussian log-likelihood of a drift matrix at a
// sample covariance, with the volatility fixed at 2I:
//
//   n * [ log det S(m) + tr(sigma_hat * S(m)^{-1}) ],   S(m) = solve_lyapunov(m, 2I)
//
// Throws for non-stable m.
double gaussian_nll(const Matrix& m, const Matrix& sigma_hat, int n);

// Gradient of gaussian_nll with respect to every entry of m, computed by the
// adjoint method: with S the equilibrium covariance and P solving
// m' P + P m = S^{-1} - S^{-1} sigma_hat S^{-1}, the gradient is -2n P S.
// Used to cross-check the finite-difference gradient inside restricted_mle.
Matrix nll_gradient_adjoint(const Matrix& m, const Matrix& sigma_hat, int n);

struct MleResult {
  Matrix m_hat;
  double nll = 0.0;
  double grad_norm = 0.0;  // max-norm of the free-entry gradient at return
  int iterations = 0;
  bool converged = false;
};

// Minimizes gaussian_nll over matrices whose support is contained in the
// given one (which must include the whole diagonal).  BFGS over the free
// entries with central finite-difference gradients (step 1e-6 * (1+|entry|));
// the finite-difference scheme is validated against nll_gradient_adjoint on
// a fixed random instance once per process.  Backtracking line search
// rejects non-stable iterates, so every iterate stays in the stable region.
// init (restricted to the support) seeds the search when it is stable;
// otherwise -I is used.  Non-convergence within the iteration budget returns
// converged=false; a line-search failure with a large gradient throws
// NumericalError with diagnostics.
MleResult restricted_mle(const SupportSet& support, const Matrix& sigma_hat,
                         int n, const Matrix* init = nullptr);

struct EbicResult {
  int selected_index = -1;
  std::vector<double> scores;
  std::vector<double> mle_values;
  SupportSet selected_graph{0, {}};
};

// (|E|+p) ln n + 4 gamma |E| ln p + nll, with |E| the number of
// off-diagonal support pairs.
double ebic_score(int edge_count, int p, int n, double gamma, double nll);

// Scores every candidate graph by restricted maximum likelihood plus the
// complexity penalty above and selects the argmin.  Ties within relative
// 1e-9 go to the smaller edge count, then the smaller index.  inits, when
// given, supplies one warm start per graph (e.g. the lasso estimates whose
// supports generated the candidates).  Graphs whose MLE run throws are
// scored +infinity; if every run throws, a NumericalError is raised.
EbicResult ebic_select(const std::vector<SupportSet>& graphs,
                       const Matrix& sigma_hat, int n, double gamma = 1.0,
                       const std::vector<Matrix>* inits = nullptr);

}  // namespace lyalasso

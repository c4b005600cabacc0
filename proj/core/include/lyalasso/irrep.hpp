#pragma once

#include <optional>

#include "lyalasso/types.hpp"

namespace lyalasso {

// Diagnostics for sign-consistent recovery of a drift matrix at its
// population covariance.  With S the support (as flat indices) and Gram the
// population Gram matrix,
//
//   rho       = || Gram[S^c,S] * Gram[S,S]^{-1} ||_inf          (operator norm)
//   weak_rho  = || Gram[S^c,S] * Gram[S,S]^{-1} * sign_S ||_inf (vector norm)
//
// where sign_S is the sign pattern of the drift on S.  Both are present only
// when Gram[S,S] is numerically invertible (reciprocal condition > 1e-12);
// rcond always reports the estimate.  weak_rho <= rho holds whenever both
// are defined.
struct IrrepReport {
  bool gamma_ss_invertible = false;
  double rcond = 0.0;
  std::optional<double> rho;
  std::optional<double> weak_rho;
  std::optional<double> c_gamma;  // ||Gram[S,S]^{-1}||_inf
  double c_m = 0.0;               // ||vec(M)||_inf
  double c_sigma = 0.0;           // spectral norm of the equilibrium covariance
  double c_c = 0.0;               // ||vec(C)||_2
};

// Evaluates the report at the equilibrium covariance of (m, c).  The support
// defaults to the exact nonzero pattern of m; pass one explicitly to score a
// graph whose support strictly contains the nonzeros (e.g. a diagonal matrix
// inside a larger model).
IrrepReport irrep_constant(const Matrix& m, const Matrix& c,
                           const SupportSet* support = nullptr);

// Same with c = 2I.
IrrepReport irrep_constant(const Matrix& m);

// weak_rho alone; throws NumericalError when Gram[S,S] is singular.
double weak_irrep_value(const Matrix& m, const Matrix& c);

// Closed-form diagnosis of a graph at the diagonal drift -diag(d) with
// c = 2I, whose equilibrium covariance is diag(1/d).  A 2-cycle in the graph
// makes Gram[S,S] exactly singular; otherwise
//
//   rho_tilde = max over edges i -> j (support pairs (j,i), i != j) of d_i/d_j
//
// (0 for an edgeless graph) and ordering_ok says rho_tilde < 1, i.e. d grows
// along every edge.  A directed cycle forces some ratio >= 1, so ordering_ok
// implies the graph is acyclic; is_dag reports acyclicity outright.
struct DiagLocalIrrep {
  std::optional<double> rho_tilde;  // absent iff a 2-cycle makes the block singular
  bool ordering_ok = false;
  bool is_dag = false;
};

DiagLocalIrrep diag_local_irrep(const SupportSet& graph, const Vector& d);

// The Gram matrix of diag(1/d) assembled from its closed form: entries
// 4/d_l^2 at diagonal support positions, 2/d_l^2 at off-diagonal ones, and
// 2/(d_k d_l) coupling transposed positions; zero elsewhere.
Matrix gram_diagonal_closed_form(const Vector& d);

}  // namespace lyalasso

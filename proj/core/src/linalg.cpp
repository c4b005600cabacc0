#include "lyalasso/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <sstream>

namespace lyalasso {

SupportSet support_of(const Matrix& m, double threshold) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("support_of: matrix must be square");
  const int p = static_cast<int>(m.rows());
  std::vector<Pair> pairs;
  for (int j = 0; j < p; ++j)
    for (int i = 0; i < p; ++i)
      if (std::abs(m(i, j)) > threshold) pairs.push_back(Pair{i, j});
  return SupportSet(p, std::move(pairs));
}

Matrix commutation_matrix(int p) {
  Matrix k = Matrix::Zero(p * p, p * p);
  for (int j = 0; j < p; ++j)
    for (int i = 0; i < p; ++i)
      k(flat_index(j, i, p), flat_index(i, j, p)) = 1.0;
  return k;
}

StabilityReport stability_margin(const Matrix& m) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("stability_margin: matrix must be square");
  if (!m.allFinite())
    throw std::invalid_argument("stability_margin: non-finite entries");
  Eigen::EigenSolver<Matrix> es(m, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success)
    throw NumericalError("stability_margin: eigensolver did not converge");
  StabilityReport rep;
  rep.abscissa = es.eigenvalues().real().maxCoeff();
  rep.stable = rep.abscissa < kStabilityTol;
  return rep;
}

Matrix solve_lyapunov_general(const Matrix& m, const Matrix& c) {
  const int p = static_cast<int>(m.rows());
  if (m.cols() != p || c.rows() != p || c.cols() != p)
    throw std::invalid_argument("solve_lyapunov: shape mismatch");
  if (!stability_margin(m).stable)
    throw NumericalError("solve_lyapunov: non-stable drift");

  // vec(M S + S M^T) = (I (x) M + M (x) I) vec(S)
  const Matrix id = Matrix::Identity(p, p);
  Matrix t = Eigen::kroneckerProduct(id, m).eval();
  t += Eigen::kroneckerProduct(m, id);

  Eigen::PartialPivLU<Matrix> lu(t);
  const double rcond = lu.rcond();
  if (!(rcond > 1e-14)) {
    std::ostringstream msg;
    msg << "solve_lyapunov: singular vectorized system, rcond = " << rcond;
    throw NumericalError(msg.str());
  }
  Vector s = lu.solve(-vec(c));
  Matrix sigma = unvec(s, p);
  sigma = 0.5 * (sigma + sigma.transpose()).eval();

  const double residual = (m * sigma + sigma * m.transpose() + c)
                              .cwiseAbs()
                              .maxCoeff();
  // Backward-relative: near-singular systems have large solutions whose
  // honest floating-point residual scales with |M| |Sigma|, not with |C|.
  const double scale = 1.0 + c.cwiseAbs().maxCoeff() +
                       m.cwiseAbs().maxCoeff() * sigma.cwiseAbs().maxCoeff();
  if (!(residual <= 1e-10 * scale)) {
    std::ostringstream msg;
    msg << "solve_lyapunov: residual " << residual
        << " exceeds tolerance, rcond = " << rcond;
    throw NumericalError(msg.str());
  }
  return sigma;
}

Matrix solve_lyapunov(const Matrix& m, const Matrix& c) {
  Matrix sigma = solve_lyapunov_general(m, c);
  Eigen::LLT<Matrix> llt(sigma);
  if (llt.info() != Eigen::Success)
    throw NumericalError("solve_lyapunov: solution not positive definite");
  return sigma;
}

}  // namespace lyalasso

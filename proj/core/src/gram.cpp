#include "lyalasso/gram.hpp"

#include "lyalasso/linalg.hpp"

namespace lyalasso {

namespace {

void check_square(const Matrix& m, const char* who) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument(std::string(who) + ": matrix must be square");
  }
}

}  // namespace

Matrix build_A(const Matrix& sigma) {
  check_square(sigma, "build_A");
  const int p = static_cast<int>(sigma.rows());
  Matrix a = Matrix::Zero(p * p, p * p);
  // Column (k,l) of A is vec(E_kl sigma + sigma E_lk), i.e.
  // A[(i,j),(k,l)] = (i == k) * sigma[l,j] + (j == k) * sigma[i,l].
  for (int l = 0; l < p; ++l) {
    for (int k = 0; k < p; ++k) {
      const int col = flat_index(k, l, p);
      for (int j = 0; j < p; ++j) a(flat_index(k, j, p), col) += sigma(l, j);
      for (int i = 0; i < p; ++i) a(flat_index(i, k, p), col) += sigma(i, l);
    }
  }
  return a;
}

Matrix build_gram(const Matrix& sigma) {
  check_square(sigma, "build_gram");
  const int p = static_cast<int>(sigma.rows());
  Matrix sigma2 = sigma * sigma;
  sigma2 = 0.5 * (sigma2 + sigma2.transpose()).eval();
  Matrix gram(p * p, p * p);
  for (int l = 0; l < p; ++l)
    for (int k = 0; k < p; ++k) {
      const int b = flat_index(k, l, p);
      for (int j = 0; j < p; ++j)
        for (int i = 0; i < p; ++i) {
          double v = 2.0 * sigma(j, k) * sigma(i, l);
          if (i == k) v += 2.0 * sigma2(j, l);
          gram(flat_index(i, j, p), b) = v;
        }
    }
  return gram;
}

Vector build_g(const Matrix& sigma, const Matrix& c) {
  check_square(sigma, "build_g");
  if (c.rows() != sigma.rows() || c.cols() != sigma.cols())
    throw std::invalid_argument("build_g: shape mismatch");
  return -2.0 * vec(c * sigma);
}

double lyapunov_residual(const Matrix& m, const Matrix& sigma,
                         const Matrix& c) {
  return (m * sigma + sigma * m.transpose() + c).norm();
}

GramSystem make_gram_system(const Matrix& sigma, const Matrix& c) {
  GramSystem sys;
  sys.p = static_cast<int>(sigma.rows());
  sys.gram = build_gram(sigma);
  sys.g = build_g(sigma, c);
  sys.c_norm_sq = vec(c).squaredNorm();
  return sys;
}

double penalized_objective(const GramSystem& sys, const Vector& v,
                           double lambda) {
  return 0.5 * v.dot(sys.gram * v) - sys.g.dot(v) +
         lambda * v.lpNorm<1>();
}

}  // namespace lyalasso

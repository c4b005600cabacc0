#include "lyalasso/simulate.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <sstream>

#include "lyalasso/linalg.hpp"

namespace lyalasso {

namespace {

constexpr int kDominantRetries = 100;

}  // namespace

Matrix sample_stable_dominant(int p, double density, RngStream& rng) {
  if (p < 1) throw std::invalid_argument("sample_stable_dominant: p must be >= 1");
  if (!(density >= 0.0 && density <= 1.0))
    throw std::invalid_argument("sample_stable_dominant: density must lie in [0,1]");

  for (int attempt = 0; attempt < kDominantRetries; ++attempt) {
    Matrix m = Matrix::Zero(p, p);
    for (int j = 0; j < p; ++j)
      for (int i = 0; i < p; ++i) {
        if (i == j) continue;
        if (rng.uniform() < density) m(i, j) = rng.normal();
      }
    for (int i = 0; i < p; ++i) {
      double row_sum = 0.0;
      for (int j = 0; j < p; ++j)
        if (j != i) row_sum += std::abs(m(i, j));
      m(i, i) = -row_sum - std::abs(rng.normal());
    }
    if (stability_margin(m).stable) return m;
  }
  throw NumericalError("sample_stable_dominant: repeated stability failures");
}

Matrix sample_stable_dominant(int p, double density, RngSeed seed) {
  RngStream rng(seed);
  return sample_stable_dominant(p, density, rng);
}

UniformDraw sample_stable_uniform(const SupportSet& support, RngStream& rng,
                                  int max_tries) {
  if (max_tries < 1)
    throw std::invalid_argument("sample_stable_uniform: max_tries must be >= 1");
  const int p = support.p();
  Matrix m = Matrix::Zero(p, p);
  for (int t = 1; t <= max_tries; ++t) {
    for (const Pair& pair : support.pairs())
      m(pair.row, pair.col) = rng.uniform(-1.0, 1.0);
    if (stability_margin(m).stable) {
      return UniformDraw{m, t};
    }
  }
  std::ostringstream msg;
  msg << "sample_stable_uniform: no stable draw in " << max_tries
      << " tries (acceptance rate below " << 1.0 / max_tries << ")";
  throw NumericalError(msg.str());
}

UniformDraw sample_stable_uniform(const SupportSet& support, RngSeed seed,
                                  int max_tries) {
  RngStream rng(seed);
  return sample_stable_uniform(support, rng, max_tries);
}

VolatilityScheme parse_volatility_scheme(const std::string& name) {
  if (name == "identity") return VolatilityScheme::kIdentity;
  if (name == "random_diag") return VolatilityScheme::kRandomDiag;
  if (name == "random_min_diag") return VolatilityScheme::kRandomMinDiag;
  if (name == "random_full") return VolatilityScheme::kRandomFull;
  throw std::invalid_argument("unknown volatility scheme: " + name);
}

std::string volatility_scheme_name(VolatilityScheme scheme) {
  switch (scheme) {
    case VolatilityScheme::kIdentity: return "identity";
    case VolatilityScheme::kRandomDiag: return "random_diag";
    case VolatilityScheme::kRandomMinDiag: return "random_min_diag";
    case VolatilityScheme::kRandomFull: return "random_full";
  }
  throw std::invalid_argument("unknown volatility scheme value");
}

Matrix sample_volatility(VolatilityScheme scheme, int p, RngStream& rng) {
  if (p < 1) throw std::invalid_argument("sample_volatility: p must be >= 1");
  switch (scheme) {
    case VolatilityScheme::kIdentity:
      return 2.0 * Matrix::Identity(p, p);
    case VolatilityScheme::kRandomDiag: {
      Matrix c = Matrix::Zero(p, p);
      for (int i = 0; i < p; ++i) c(i, i) = rng.uniform(0.5, 4.0);
      return c;
    }
    case VolatilityScheme::kRandomMinDiag: {
      Matrix c = Matrix::Zero(p, p);
      for (int i = 0; i < p; ++i) c(i, i) = rng.uniform(2.0, 4.0);
      return c;
    }
    case VolatilityScheme::kRandomFull: {
      const double edge_prob = 2.0 / p;
      Matrix tilde = Matrix::Zero(p, p);
      for (int j = 0; j < p; ++j)
        for (int i = 0; i < p; ++i) {
          if (i == j) continue;
          if (rng.uniform() < edge_prob) tilde(i, j) = rng.normal();
        }
      Matrix c = tilde + tilde.transpose();
      for (int i = 0; i < p; ++i) {
        c(i, i) = 0.0;
        double row_sum = 0.0;
        for (int j = 0; j < p; ++j)
          if (j != i) row_sum += std::abs(c(i, j));
        c(i, i) = row_sum + std::abs(rng.normal()) + 0.5;
      }
      return c;
    }
  }
  throw std::invalid_argument("unknown volatility scheme value");
}

Matrix sample_volatility(VolatilityScheme scheme, int p, RngSeed seed) {
  RngStream rng(seed);
  return sample_volatility(scheme, p, rng);
}

Dataset sample_gaussian(const Matrix& sigma, int n, RngStream& rng) {
  if (n < 1) throw std::invalid_argument("sample_gaussian: n must be >= 1");
  if (sigma.rows() != sigma.cols())
    throw std::invalid_argument("sample_gaussian: covariance must be square");
  const int p = static_cast<int>(sigma.rows());

  Eigen::LLT<Matrix> llt(sigma);
  if (llt.info() != Eigen::Success)
    throw NumericalError("non-PD covariance");
  const Matrix l = llt.matrixL();

  Dataset data;
  data.n = n;
  data.p = p;
  data.rows.resize(n, p);
  Vector z(p);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < p; ++k) z[k] = rng.normal();
    data.rows.row(i) = (l * z).transpose();
  }
  return data;
}

Dataset sample_gaussian(const Matrix& sigma, int n, RngSeed seed) {
  RngStream rng(seed);
  return sample_gaussian(sigma, n, rng);
}

Matrix sample_covariance(const Dataset& data) {
  if (data.n < 1)
    throw std::invalid_argument("sample_covariance: need at least one row");
  return (data.rows.transpose() * data.rows) / static_cast<double>(data.n);
}

}  // namespace lyalasso

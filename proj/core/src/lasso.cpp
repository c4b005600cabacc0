#include "lyalasso/lasso.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lyalasso {

namespace {

constexpr int kMaxSweeps = 10000;
constexpr int kMaxHalvings = 64;

double soft_threshold(double z, double lambda) {
  if (z > lambda) return z - lambda;
  if (z < -lambda) return z + lambda;
  return 0.0;
}

bool has_offdiagonal_entry(const Matrix& m) {
  const int p = static_cast<int>(m.rows());
  for (int j = 0; j < p; ++j)
    for (int i = 0; i < p; ++i)
      if (i != j && m(i, j) != 0.0) return true;
  return false;
}

}  // namespace

double kkt_residual(const GramSystem& gram, const Vector& v, double lambda) {
  if (v.size() != gram.g.size())
    throw std::invalid_argument("kkt_residual: size mismatch");
  const Vector grad = gram.gram * v - gram.g;
  double worst = 0.0;
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    double violation;
    if (v[k] != 0.0) {
      violation = std::abs(grad[k] + lambda * (v[k] > 0.0 ? 1.0 : -1.0));
    } else {
      violation = std::max(0.0, std::abs(grad[k]) - lambda);
    }
    worst = std::max(worst, violation);
  }
  return worst;
}

LassoSolution solve_lasso(const GramSystem& gram, double lambda,
                          const Vector* init, double tol) {
  if (!(lambda > 0.0))
    throw std::invalid_argument("solve_lasso: lambda must be positive");
  if (!(tol > 0.0)) throw std::invalid_argument("solve_lasso: tol must be positive");
  const Eigen::Index n = gram.g.size();
  const Vector diag = gram.gram.diagonal();
  for (Eigen::Index k = 0; k < n; ++k) {
    if (!(diag[k] > 0.0)) throw NumericalError("degenerate Gram diagonal");
  }

  Vector v;
  if (init != nullptr) {
    if (init->size() != n)
      throw std::invalid_argument("solve_lasso: init size mismatch");
    v = *init;
  } else {
    v = Vector::Zero(n);
  }

  const double kkt_tol = 1e-6 * std::max(1.0, lambda);
  Vector q = gram.gram * v;
  double prev_objective =
      0.5 * v.dot(q) - gram.g.dot(v) + lambda * v.lpNorm<1>();

  LassoSolution sol;
  sol.lambda = lambda;
  int sweep = 0;
  for (; sweep < kMaxSweeps; ++sweep) {
    double max_change = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) {
      const double old = v[k];
      const double z = gram.g[k] - (q[k] - diag[k] * old);
      const double next = soft_threshold(z, lambda) / diag[k];
      if (next != old) {
        q += (next - old) * gram.gram.col(k);
        v[k] = next;
        max_change = std::max(max_change, std::abs(next - old));
      }
    }

    q = gram.gram * v;
    const double objective =
        0.5 * v.dot(q) - gram.g.dot(v) + lambda * v.lpNorm<1>();
    if (objective > prev_objective + 1e-10 * (1.0 + std::abs(prev_objective))) {
      std::ostringstream msg;
      msg << "solve_lasso: objective increased across a sweep (" << prev_objective
          << " -> " << objective << ")";
      throw NumericalError(msg.str());
    }
    prev_objective = objective;

    if (max_change <= tol * (1.0 + v.lpNorm<Eigen::Infinity>())) {
      if (kkt_residual(gram, v, lambda) <= kkt_tol) {
        sol.converged = true;
        ++sweep;
        break;
      }
    }
  }

  sol.iterations = sweep;
  sol.m_hat = unvec(v, gram.p);
  sol.objective = prev_objective;
  sol.kkt_residual = kkt_residual(gram, v, lambda);
  return sol;
}

double lambda_max(const GramSystem& gram, double tol_rel) {
  if (!(tol_rel > 0.0))
    throw std::invalid_argument("lambda_max: tol_rel must be positive");
  const double g_inf = gram.g.lpNorm<Eigen::Infinity>();
  if (gram.p == 1) return g_inf;
  if (g_inf == 0.0) return 0.0;

  double lo = 0.0;
  double hi = g_inf;
  Vector warm = Vector::Zero(gram.g.size());
  for (int iter = 0; iter < kMaxHalvings && hi - lo > tol_rel * hi; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const LassoSolution sol = solve_lasso(gram, mid, &warm);
    warm = vec(sol.m_hat);
    if (has_offdiagonal_entry(sol.m_hat)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

LassoPath fit_path(const GramSystem& gram, int grid_size, double span) {
  if (grid_size < 2)
    throw std::invalid_argument("fit_path: grid_size must be at least 2");
  if (!(span > 1.0)) throw std::invalid_argument("fit_path: span must exceed 1");

  LassoPath path;
  path.gram = std::make_shared<GramSystem>(gram);
  const double top = lambda_max(gram);
  if (!(top > 0.0))
    throw NumericalError("fit_path: lambda_max is not positive");
  const double ratio = std::pow(1.0 / span, 1.0 / (grid_size - 1));

  path.lambdas.resize(grid_size);
  path.solutions.reserve(grid_size);
  path.failed.assign(grid_size, 0);

  Vector warm = Vector::Zero(gram.g.size());
  double lambda = top;
  for (int k = 0; k < grid_size; ++k, lambda *= ratio) {
    path.lambdas[k] = lambda;
    try {
      LassoSolution sol = solve_lasso(gram, lambda, &warm);
      warm = vec(sol.m_hat);
      path.solutions.push_back(std::move(sol));
    } catch (const NumericalError&) {
      LassoSolution placeholder;
      placeholder.lambda = lambda;
      placeholder.m_hat = Matrix::Zero(gram.p, gram.p);
      path.solutions.push_back(std::move(placeholder));
      path.failed[k] = 1;
    }
  }
  return path;
}

}  // namespace lyalasso

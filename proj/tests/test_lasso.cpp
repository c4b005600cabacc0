#include <cmath>
#include <memory>

#include "doctest.h"
#include "lyalasso/lasso.hpp"
#include "lyalasso/linalg.hpp"
#include "lyalasso/rng.hpp"

using namespace lyalasso;

namespace {

Matrix random_pd(int p, RngStream& rng) {
  Matrix b(p, p);
  for (int j = 0; j < p; ++j)
    for (int i = 0; i < p; ++i) b(i, j) = rng.normal();
  return Matrix(b * b.transpose()) / p + 0.5 * Matrix::Identity(p, p);
}

GramSystem random_system(int p, RngStream& rng) {
  return make_gram_system(random_pd(p, rng), random_pd(p, rng));
}

// Proximal-gradient (ISTA) reference solver: provably monotone, shares no
// code with the coordinate-descent implementation under test.
Vector prox_grad_reference(const GramSystem& sys, double lambda,
                           int max_iters = 400000) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(sys.gram);
  const double step = 1.0 / es.eigenvalues().maxCoeff();
  Vector v = Vector::Zero(sys.g.size());
  for (int it = 0; it < max_iters; ++it) {
    const Vector z = v - step * (sys.gram * v - sys.g);
    Vector next(z.size());
    for (Eigen::Index k = 0; k < z.size(); ++k) {
      const double t = lambda * step;
      next[k] = z[k] > t ? z[k] - t : (z[k] < -t ? z[k] + t : 0.0);
    }
    const double change = (next - v).lpNorm<Eigen::Infinity>();
    v = next;
    if (change <= 1e-14 * (1.0 + v.lpNorm<Eigen::Infinity>())) break;
  }
  return v;
}

GramSystem scalar_system() {
  // p=1, sigma=1, c=2: gram = 4, g = -4.
  return make_gram_system(Matrix::Identity(1, 1),
                          2.0 * Matrix::Identity(1, 1));
}

}  // namespace

TEST_CASE("scalar soft-threshold oracle") {
  const GramSystem sys = scalar_system();
  CHECK(sys.gram(0, 0) == doctest::Approx(4.0));
  CHECK(sys.g[0] == doctest::Approx(-4.0));
  const LassoSolution sol = solve_lasso(sys, 1.0);
  CHECK(sol.m_hat(0, 0) == doctest::Approx(-0.75).epsilon(1e-12));
  CHECK(sol.converged);
  CHECK(sol.kkt_residual <= 1e-6);
}

TEST_CASE("large penalty gives the zero estimate") {
  RngStream rng(RngSeed{31, 0});
  const GramSystem sys = random_system(3, rng);
  const double g_inf = sys.g.lpNorm<Eigen::Infinity>();
  const LassoSolution sol = solve_lasso(sys, g_inf * 1.000001);
  CHECK(sol.m_hat.lpNorm<Eigen::Infinity>() == 0.0);
  CHECK(sol.converged);
}

TEST_CASE("vanishing penalty solves the normal equations") {
  // The Gram matrix has a skew-symmetric kernel for p >= 2, so the
  // unpenalized minimizer is an affine set; what is pinned down is the
  // normal-equations residual and the objective value.
  RngStream rng(RngSeed{32, 0});
  const GramSystem sys = random_system(3, rng);
  const LassoSolution sol = solve_lasso(sys, 1e-9);
  const double residual =
      (sys.gram * vec(sol.m_hat) - sys.g).lpNorm<Eigen::Infinity>();
  CHECK(residual <= 2e-6);
  const Vector least_squares =
      sys.gram.completeOrthogonalDecomposition().solve(sys.g);
  CHECK(penalized_objective(sys, vec(sol.m_hat), 0.0) <=
        penalized_objective(sys, least_squares, 0.0) + 1e-8);
}

TEST_CASE("coordinate descent agrees with the proximal-gradient reference") {
  RngStream rng(RngSeed{33, 0});
  for (int rep = 0; rep < 10; ++rep) {
    const int p = 2 + static_cast<int>(rng.uniform() * 3.0);
    const GramSystem sys = random_system(p, rng);
    const double lambda =
        sys.g.lpNorm<Eigen::Infinity>() * (0.02 + 0.5 * rng.uniform());
    const LassoSolution sol = solve_lasso(sys, lambda);
    const Vector ref = prox_grad_reference(sys, lambda);
    CHECK((vec(sol.m_hat) - ref).lpNorm<Eigen::Infinity>() < 1e-5);
    CHECK(penalized_objective(sys, vec(sol.m_hat), lambda) <=
          penalized_objective(sys, ref, lambda) + 1e-6);
  }
}

TEST_CASE("kkt residual flags suboptimal points") {
  const GramSystem sys = scalar_system();
  CHECK(kkt_residual(sys, Vector::Zero(1), 1.0) ==
        doctest::Approx(3.0));  // |g| - lambda at the origin
  Vector opt(1);
  opt << -0.75;
  CHECK(kkt_residual(sys, opt, 1.0) < 1e-12);
  CHECK_THROWS_AS(kkt_residual(sys, Vector::Zero(2), 1.0),
                  std::invalid_argument);
}

TEST_CASE("solver input validation") {
  const GramSystem sys = scalar_system();
  CHECK_THROWS_AS(solve_lasso(sys, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(solve_lasso(sys, -1.0), std::invalid_argument);

  GramSystem degenerate = sys;
  degenerate.gram(0, 0) = 0.0;
  CHECK_THROWS_WITH_AS(solve_lasso(degenerate, 1.0),
                       "degenerate Gram diagonal", NumericalError);
}

TEST_CASE("lambda_max brackets the off-diagonal death point") {
  RngStream rng(RngSeed{34, 0});
  for (int rep = 0; rep < 5; ++rep) {
    const GramSystem sys = random_system(3, rng);
    const double top = lambda_max(sys);
    CHECK(top > 0.0);
    CHECK(top <= sys.g.lpNorm<Eigen::Infinity>() * (1.0 + 1e-12));

    const Matrix at_top = solve_lasso(sys, top).m_hat;
    Matrix off = at_top;
    off.diagonal().setZero();
    CHECK(off.lpNorm<Eigen::Infinity>() == 0.0);
  }
}

TEST_CASE("lambda_max in the scalar case is the gradient magnitude") {
  const GramSystem sys = scalar_system();
  CHECK(lambda_max(sys) == doctest::Approx(4.0));
}

TEST_CASE("path grid is log-equidistant over the span") {
  RngStream rng(RngSeed{35, 0});
  const GramSystem sys = random_system(3, rng);
  const LassoPath path = fit_path(sys);
  REQUIRE(path.lambdas.size() == 100);
  REQUIRE(path.solutions.size() == 100);
  const double ratio = std::pow(1e-4, 1.0 / 99.0);
  for (int k = 1; k < 100; ++k) {
    CHECK(path.lambdas[k] / path.lambdas[k - 1] ==
          doctest::Approx(ratio).epsilon(1e-12));
  }
  CHECK(path.lambdas[99] / path.lambdas[0] ==
        doctest::Approx(1e-4).epsilon(1e-10));

  for (int k = 0; k < 100; ++k) {
    CHECK(!path.failed[k]);
    CHECK(path.solutions[k].converged);
    CHECK(path.solutions[k].kkt_residual <=
          1e-6 * std::max(1.0, path.lambdas[k]));
  }
}

TEST_CASE("path rejects degenerate grids") {
  RngStream rng(RngSeed{36, 0});
  const GramSystem sys = random_system(2, rng);
  CHECK_THROWS_AS(fit_path(sys, 1), std::invalid_argument);
  CHECK_THROWS_AS(fit_path(sys, 100, 1.0), std::invalid_argument);

  const GramSystem zero =
      make_gram_system(Matrix::Identity(2, 2), Matrix::Zero(2, 2));
  CHECK_THROWS_AS(fit_path(zero), NumericalError);
}

#include <cmath>

#include "doctest.h"
#include "lyalasso/linalg.hpp"
#include "lyalasso/rng.hpp"

using namespace lyalasso;

TEST_CASE("flat indexing is column stacking") {
  CHECK(flat_index(0, 0, 3) == 0);
  CHECK(flat_index(2, 0, 3) == 2);
  CHECK(flat_index(0, 1, 3) == 3);
  CHECK(flat_index(2, 2, 3) == 8);
  for (int f = 0; f < 9; ++f) {
    CHECK(flat_index(flat_row(f, 3), flat_col(f, 3), 3) == f);
  }
}

TEST_CASE("vec and unvec round trip") {
  Matrix m(2, 2);
  m << 1.0, 2.0, 3.0, 4.0;
  const Vector v = vec(m);
  CHECK(v[0] == 1.0);
  CHECK(v[1] == 3.0);
  CHECK(v[2] == 2.0);
  CHECK(v[3] == 4.0);
  CHECK(unvec(v, 2) == m);
}

TEST_CASE("support set normalizes, deduplicates, and range-checks") {
  SupportSet s(3, {{2, 1}, {0, 0}, {2, 1}, {1, 2}});
  CHECK(s.size() == 3);
  CHECK(s.contains(0, 0));
  CHECK(s.contains(2, 1));
  CHECK(!s.contains(1, 1));
  CHECK(s.edge_count() == 2);
  CHECK(!s.has_full_diagonal());
  CHECK(s.with_diagonal().has_full_diagonal());
  CHECK(s.with_diagonal().edge_count() == 2);
  CHECK(s.offdiagonal_pairs().size() == 2);

  const std::vector<int> flats = s.flat_indices();
  CHECK(std::is_sorted(flats.begin(), flats.end()));
  const std::vector<int> comp = s.complement_indices();
  CHECK(flats.size() + comp.size() == 9);

  CHECK_THROWS_AS(SupportSet(2, {{2, 0}}), std::invalid_argument);
}

TEST_CASE("support_of respects the threshold") {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = -1.0;
  m(1, 0) = 0.05;
  CHECK(support_of(m).size() == 2);
  CHECK(support_of(m, 0.1).size() == 1);
  CHECK(support_of(m, 0.1).contains(0, 0));
}

TEST_CASE("commutation matrix transposes under vec") {
  RngStream rng(RngSeed{11, 0});
  for (int p : {1, 2, 3, 5}) {
    Matrix a(p, p);
    for (int j = 0; j < p; ++j)
      for (int i = 0; i < p; ++i) a(i, j) = rng.normal();
    const Matrix k = commutation_matrix(p);
    CHECK((k * vec(a) - vec(Matrix(a.transpose()))).lpNorm<Eigen::Infinity>() ==
          0.0);
    CHECK((k * k - Matrix::Identity(p * p, p * p)).lpNorm<Eigen::Infinity>() ==
          0.0);
  }
}

TEST_CASE("stability margin reports the spectral abscissa") {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = -1.0;
  m(1, 1) = -2.0;
  const StabilityReport r = stability_margin(m);
  CHECK(r.abscissa == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(r.stable);

  m(0, 0) = 0.5;
  CHECK(!stability_margin(m).stable);
}

TEST_CASE("lyapunov solve matches the hand-computed 2x2 oracle") {
  Matrix m(2, 2);
  m << -1.0, 0.0, 1.0, -2.0;
  const Matrix sigma = solve_lyapunov(m, 2.0 * Matrix::Identity(2, 2));
  Matrix expected(2, 2);
  expected << 1.0, 1.0 / 3.0, 1.0 / 3.0, 2.0 / 3.0;
  CHECK((sigma - expected).lpNorm<Eigen::Infinity>() < 1e-12);
}

TEST_CASE("lyapunov solve rejects bad inputs") {
  Matrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  CHECK_THROWS_WITH_AS(solve_lyapunov(m, Matrix::Identity(2, 2)),
                       "solve_lyapunov: non-stable drift", NumericalError);

  m << -1.0, 0.0, 1.0, -2.0;
  CHECK_THROWS_AS(solve_lyapunov(m, -2.0 * Matrix::Identity(2, 2)),
                  NumericalError);
  CHECK_THROWS_AS(solve_lyapunov(m, Matrix::Identity(3, 3)),
                  std::invalid_argument);
}

TEST_CASE("equilibrium covariance is scale invariant") {
  RngStream rng(RngSeed{12, 0});
  Matrix m(3, 3);
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < 3; ++i) m(i, j) = 0.3 * rng.normal();
  m.diagonal().array() -= 3.0;
  Matrix c = Matrix::Identity(3, 3) * 2.0;
  c(0, 1) = c(1, 0) = 0.4;

  const Matrix base = solve_lyapunov(m, c);
  for (double gamma : {0.5, 2.0, 10.0}) {
    const Matrix scaled = solve_lyapunov(gamma * m, gamma * c);
    CHECK((scaled - base).lpNorm<Eigen::Infinity>() < 1e-10);
  }
}

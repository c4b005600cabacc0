#include <cmath>

#include "doctest.h"
#include "lyalasso/gram.hpp"
#include "lyalasso/irrep.hpp"
#include "lyalasso/linalg.hpp"
#include "lyalasso/rng.hpp"

using namespace lyalasso;

namespace {

// Sparse 4-node benchmark drift whose weak-irrepresentability value sits
// just below 1 while its 2-digit rounding sits just above.
Matrix golden_drift() {
  Matrix m(4, 4);
  m << -0.0444620792, -0.5733500496, 0.0, 0.0,
       0.0, -0.0153532191, 0.0054622865, 0.0,
       0.8317033453, 0.0, -0.8824298000, 0.0,
       0.0, 0.0, 0.0, -0.3405775614;
  return m;
}

Matrix five_path_drift() {
  Matrix m = Matrix::Zero(5, 5);
  m.diagonal() << -2.0, -3.0, -4.0, -5.0, -6.0;
  for (int i = 0; i < 4; ++i) m(i + 1, i) = 0.65;
  return m;
}

Matrix chain_drift(const Vector& d, double e) {
  const int p = static_cast<int>(d.size());
  Matrix m = Matrix::Zero(p, p);
  for (int i = 0; i < p; ++i) m(i, i) = -d[i];
  for (int i = 0; i + 1 < p; ++i) m(i + 1, i) = e;
  return m;
}

SupportSet chain_support(int p) {
  std::vector<Pair> pairs;
  for (int i = 0; i < p; ++i) pairs.push_back(Pair{i, i});
  for (int i = 0; i + 1 < p; ++i) pairs.push_back(Pair{i + 1, i});
  return SupportSet(p, std::move(pairs));
}

}  // namespace

TEST_CASE("weak irrepresentability golden values") {
  const Matrix m = golden_drift();
  CHECK(weak_irrep_value(m, 2.0 * Matrix::Identity(4, 4)) ==
        doctest::Approx(0.9960339).epsilon(1e-4));

  const Matrix rounded = (m * 100.0).array().round() / 100.0;
  CHECK(weak_irrep_value(rounded, 2.0 * Matrix::Identity(4, 4)) ==
        doctest::Approx(1.011801).epsilon(1e-4));
}

TEST_CASE("weak value never exceeds the strong constant") {
  RngStream rng(RngSeed{41, 0});
  for (int rep = 0; rep < 20; ++rep) {
    Matrix m(4, 4);
    for (int j = 0; j < 4; ++j)
      for (int i = 0; i < 4; ++i)
        m(i, j) = rng.uniform() < 0.5 ? 0.4 * rng.normal() : 0.0;
    m.diagonal().array() = -3.0;
    const IrrepReport r = irrep_constant(m, 2.0 * Matrix::Identity(4, 4));
    if (!r.gamma_ss_invertible) continue;
    CHECK(*r.weak_rho <= *r.rho + 1e-12);
    CHECK(*r.rho >= 0.0);
    CHECK(r.c_m == doctest::Approx(m.lpNorm<Eigen::Infinity>()));
    CHECK(r.c_c == doctest::Approx(vec(2.0 * Matrix::Identity(4, 4)).norm()));
  }
}

TEST_CASE("empty complement leaves a zero constant") {
  // Scalar model: the support is everything, so the complement block is
  // empty and both norms are maxima over no rows.
  Matrix m(1, 1);
  m << -2.0;
  const IrrepReport r = irrep_constant(m, 2.0 * Matrix::Identity(1, 1));
  REQUIRE(r.gamma_ss_invertible);
  CHECK(*r.rho == 0.0);
  CHECK(*r.weak_rho == 0.0);
}

TEST_CASE("full support degenerates the gram for two or more nodes") {
  // M -> M Sigma + Sigma M' kills every M with M Sigma skew-symmetric, a
  // p(p-1)/2-dimensional kernel, so the unrestricted Gram block is singular.
  Matrix m(2, 2);
  m << -2.0, 0.3, 0.4, -3.0;
  const IrrepReport r = irrep_constant(m, 2.0 * Matrix::Identity(2, 2));
  CHECK(!r.gamma_ss_invertible);
  CHECK(!r.rho.has_value());
}

TEST_CASE("three-node chain matches the frozen numeric values") {
  Vector d_fwd(3), d_rev(3);
  d_fwd << 0.5, 1.0, 1.5;
  d_rev << 1.5, 1.0, 0.5;
  const SupportSet support = chain_support(3);
  const Matrix c2 = 2.0 * Matrix::Identity(3, 3);

  const IrrepReport fwd =
      irrep_constant(chain_drift(d_fwd, 0.01), c2, &support);
  REQUIRE(fwd.gamma_ss_invertible);
  CHECK(*fwd.rho == doctest::Approx(0.674493).epsilon(1e-4));

  const IrrepReport rev =
      irrep_constant(chain_drift(d_rev, 0.01), c2, &support);
  REQUIRE(rev.gamma_ss_invertible);
  CHECK(*rev.rho == doctest::Approx(2.013406).epsilon(1e-4));
}

TEST_CASE("five-node path and completed cycle frozen constants") {
  const Matrix c2 = 2.0 * Matrix::Identity(5, 5);
  const Matrix path = five_path_drift();
  const IrrepReport rp = irrep_constant(path, c2);
  REQUIRE(rp.gamma_ss_invertible);
  CHECK(*rp.rho == doctest::Approx(0.9732).epsilon(2e-3));
  CHECK(*rp.weak_rho == doctest::Approx(0.8226).epsilon(2e-3));

  Matrix cycle = path;
  cycle(0, 4) = 0.65;
  const IrrepReport rc = irrep_constant(cycle, c2);
  REQUIRE(rc.gamma_ss_invertible);
  CHECK(*rc.rho == doctest::Approx(3.1798).epsilon(2e-3));
  CHECK(*rc.weak_rho == doctest::Approx(3.0016).epsilon(2e-3));
  CHECK(*rc.rho > 1.0);
  CHECK(*rp.rho < 1.0);
}

TEST_CASE("diagonal gram closed form matches the generic builder") {
  RngStream rng(RngSeed{42, 0});
  for (int p : {1, 2, 3, 4}) {
    Vector d(p);
    for (int i = 0; i < p; ++i) d[i] = rng.uniform(0.4, 3.0);
    const Matrix closed = gram_diagonal_closed_form(d);
    const Matrix generic =
        build_gram(Matrix(d.cwiseInverse().asDiagonal()));
    CHECK((closed - generic).lpNorm<Eigen::Infinity>() < 1e-12);
  }
}

TEST_CASE("unit diagonal gives 2I + 2K") {
  for (int p : {2, 3}) {
    const Matrix closed = gram_diagonal_closed_form(Vector::Ones(p));
    const Matrix expected =
        2.0 * Matrix::Identity(p * p, p * p) + 2.0 * commutation_matrix(p);
    CHECK((closed - expected).lpNorm<Eigen::Infinity>() < 1e-14);
  }
}

TEST_CASE("two-cycle support degenerates the diagonal gram") {
  Vector d(2);
  d << 1.0, 2.0;
  const SupportSet two_cycle(2, {{0, 0}, {1, 1}, {0, 1}, {1, 0}});
  const Matrix m0 = Matrix((-d).asDiagonal());
  const IrrepReport r =
      irrep_constant(m0, 2.0 * Matrix::Identity(2, 2), &two_cycle);
  CHECK(!r.gamma_ss_invertible);
  CHECK(r.rcond <= 1e-12);
  CHECK(!r.rho.has_value());

  const DiagLocalIrrep local = diag_local_irrep(two_cycle, d);
  CHECK(!local.ordering_ok);
  CHECK(!local.rho_tilde.has_value());
  CHECK(!local.is_dag);
}

TEST_CASE("local diagonal criterion follows the edge ratios") {
  Vector d(3);
  d << 0.5, 1.0, 1.5;
  const DiagLocalIrrep fwd = diag_local_irrep(chain_support(3), d);
  REQUIRE(fwd.rho_tilde.has_value());
  CHECK(*fwd.rho_tilde == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(fwd.ordering_ok);
  CHECK(fwd.is_dag);

  Vector rev(3);
  rev << 1.5, 1.0, 0.5;
  const DiagLocalIrrep bad = diag_local_irrep(chain_support(3), rev);
  REQUIRE(bad.rho_tilde.has_value());
  CHECK(*bad.rho_tilde == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(!bad.ordering_ok);
}

TEST_CASE("local criterion certifies the numeric constant at the vertex") {
  Vector d(4);
  d << 0.7, 1.1, 1.9, 3.1;
  const SupportSet support(4, {{0, 0}, {1, 1}, {2, 2}, {3, 3},
                               {1, 0}, {2, 1}, {3, 0}});
  const DiagLocalIrrep local = diag_local_irrep(support, d);
  REQUIRE(local.rho_tilde.has_value());

  const Matrix m0 = Matrix((-d).asDiagonal());
  const IrrepReport numeric =
      irrep_constant(m0, 2.0 * Matrix::Identity(4, 4), &support);
  REQUIRE(numeric.gamma_ss_invertible);
  CHECK(*numeric.rho == doctest::Approx(*local.rho_tilde).epsilon(1e-10));
}

TEST_CASE("weak value throws on singular restricted gram") {
  Matrix m0 = Matrix::Zero(2, 2);
  m0.diagonal() << -1.0, -2.0;
  Matrix with_cycle = m0;
  with_cycle(0, 1) = 1e-18;
  with_cycle(1, 0) = 1e-18;
  CHECK_THROWS_AS(weak_irrep_value(with_cycle, 2.0 * Matrix::Identity(2, 2)),
                  NumericalError);
}

#include <cmath>

#include "doctest.h"
#include "lyalasso/linalg.hpp"
#include "lyalasso/simulate.hpp"

using namespace lyalasso;

TEST_CASE("dominant sampler produces stable matrices with negative diagonal") {
  for (int rep = 0; rep < 10; ++rep) {
    const Matrix m =
        sample_stable_dominant(6, 0.4, RngSeed{100 + rep, 0});
    CHECK(stability_margin(m).stable);
    for (int i = 0; i < 6; ++i) {
      CHECK(m(i, i) < 0.0);
      double row_off = 0.0;
      for (int j = 0; j < 6; ++j)
        if (j != i) row_off += std::abs(m(i, j));
      CHECK(-m(i, i) >= row_off);
    }
  }
}

TEST_CASE("dominant sampler density endpoints") {
  const Matrix empty = sample_stable_dominant(5, 0.0, RngSeed{1, 0});
  Matrix off = empty;
  off.diagonal().setZero();
  CHECK(off.lpNorm<Eigen::Infinity>() == 0.0);

  const Matrix full = sample_stable_dominant(5, 1.0, RngSeed{1, 1});
  int zeros = 0;
  for (int j = 0; j < 5; ++j)
    for (int i = 0; i < 5; ++i)
      if (i != j && full(i, j) == 0.0) ++zeros;
  CHECK(zeros == 0);

  CHECK_THROWS_AS(sample_stable_dominant(5, 1.5, RngSeed{1, 2}),
                  std::invalid_argument);
  CHECK_THROWS_AS(sample_stable_dominant(0, 0.5, RngSeed{1, 3}),
                  std::invalid_argument);
}

TEST_CASE("uniform sampler respects the support and entry range") {
  const SupportSet support(3, {{0, 0}, {1, 1}, {2, 2}, {1, 0}, {2, 1}});
  const UniformDraw draw = sample_stable_uniform(support, RngSeed{5, 0});
  CHECK(draw.tries >= 1);
  CHECK(stability_margin(draw.m).stable);
  for (int j = 0; j < 3; ++j) {
    for (int i = 0; i < 3; ++i) {
      if (support.contains(i, j)) {
        CHECK(std::abs(draw.m(i, j)) <= 1.0);
      } else {
        CHECK(draw.m(i, j) == 0.0);
      }
    }
  }

  const UniformDraw again = sample_stable_uniform(support, RngSeed{5, 0});
  CHECK((draw.m - again.m).lpNorm<Eigen::Infinity>() == 0.0);
  CHECK(draw.tries == again.tries);
}

TEST_CASE("uniform sampler reports an acceptance failure") {
  // p=1 with m_11 ~ U[-1,1]: roughly half the draws are unstable, so a
  // budget of one try fails quickly for some seed.
  const SupportSet scalar_support(1, {{0, 0}});
  bool threw = false;
  for (int s = 0; s < 16 && !threw; ++s) {
    try {
      (void)sample_stable_uniform(scalar_support,
                                  RngSeed{static_cast<std::uint64_t>(s), 0}, 1);
    } catch (const NumericalError& e) {
      threw = true;
      CHECK(std::string(e.what()).find("acceptance") != std::string::npos);
    }
  }
  CHECK(threw);
}

TEST_CASE("volatility schemes have the documented shapes") {
  RngStream rng(RngSeed{9, 0});
  const int p = 6;

  const Matrix ident = sample_volatility(VolatilityScheme::kIdentity, p, rng);
  CHECK((ident - 2.0 * Matrix::Identity(p, p)).lpNorm<Eigen::Infinity>() ==
        0.0);

  const Matrix diag = sample_volatility(VolatilityScheme::kRandomDiag, p, rng);
  for (int i = 0; i < p; ++i) {
    CHECK(diag(i, i) >= 0.5);
    CHECK(diag(i, i) <= 4.0);
  }
  Matrix off = diag;
  off.diagonal().setZero();
  CHECK(off.lpNorm<Eigen::Infinity>() == 0.0);

  const Matrix min_diag =
      sample_volatility(VolatilityScheme::kRandomMinDiag, p, rng);
  for (int i = 0; i < p; ++i) {
    CHECK(min_diag(i, i) >= 2.0);
    CHECK(min_diag(i, i) <= 4.0);
  }

  const Matrix full = sample_volatility(VolatilityScheme::kRandomFull, p, rng);
  CHECK((full - Matrix(full.transpose())).lpNorm<Eigen::Infinity>() == 0.0);
  for (int i = 0; i < p; ++i) {
    double row_off = 0.0;
    for (int j = 0; j < p; ++j)
      if (j != i) row_off += std::abs(full(i, j));
    CHECK(full(i, i) >= row_off + 0.5 - 1e-12);
  }
  CHECK(Eigen::LLT<Matrix>(full).info() == Eigen::Success);
}

TEST_CASE("volatility scheme names round trip") {
  for (VolatilityScheme s :
       {VolatilityScheme::kIdentity, VolatilityScheme::kRandomDiag,
        VolatilityScheme::kRandomMinDiag, VolatilityScheme::kRandomFull}) {
    CHECK(parse_volatility_scheme(volatility_scheme_name(s)) == s);
  }
  CHECK_THROWS_AS(parse_volatility_scheme("bogus"), std::invalid_argument);
}

TEST_CASE("gaussian sampler reproduces the covariance") {
  Matrix sigma(2, 2);
  sigma << 2.0, 0.8, 0.8, 1.0;
  const Dataset data = sample_gaussian(sigma, 60000, RngSeed{10, 0});
  CHECK(data.n == 60000);
  CHECK(data.p == 2);
  const Matrix hat = sample_covariance(data);
  CHECK((hat - sigma).lpNorm<Eigen::Infinity>() < 0.05);
}

TEST_CASE("sample covariance is the uncentered second moment") {
  Dataset data;
  data.n = 2;
  data.p = 2;
  data.rows.resize(2, 2);
  data.rows << 1.0, 0.0, 1.0, 2.0;
  const Matrix hat = sample_covariance(data);
  CHECK(hat(0, 0) == doctest::Approx(1.0));
  CHECK(hat(0, 1) == doctest::Approx(1.0));
  CHECK(hat(1, 1) == doctest::Approx(2.0));

  CHECK_THROWS_AS(sample_gaussian(-Matrix::Identity(2, 2), 10, RngSeed{1, 0}),
                  NumericalError);
}

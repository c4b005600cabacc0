#include <cmath>

#include "doctest.h"
#include "lyalasso/rng.hpp"

using namespace lyalasso;

TEST_CASE("streams are deterministic per seed") {
  RngStream a(RngSeed{123, 4});
  RngStream b(RngSeed{123, 4});
  for (int i = 0; i < 100; ++i) {
    CHECK(a.next_u64() == b.next_u64());
  }
  CHECK(a.uniform() == b.uniform());
  CHECK(a.normal() == b.normal());
}

TEST_CASE("distinct stream ids decorrelate") {
  RngStream a(RngSeed{123, 0});
  RngStream b(RngSeed{123, 1});
  int agree = 0;
  for (int i = 0; i < 64; ++i) agree += (a.next_u64() == b.next_u64());
  CHECK(agree == 0);
}

TEST_CASE("base seed changes the stream") {
  RngStream a(RngSeed{1, 0});
  RngStream b(RngSeed{2, 0});
  int agree = 0;
  for (int i = 0; i < 64; ++i) agree += (a.next_u64() == b.next_u64());
  CHECK(agree == 0);
}

TEST_CASE("uniform lies in the half-open unit interval") {
  RngStream rng(RngSeed{7, 7});
  double lo = 1.0, hi = 0.0;
  for (int i = 0; i < 20000; ++i) {
    const double u = rng.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    lo = std::min(lo, u);
    hi = std::max(hi, u);
  }
  CHECK(lo < 0.01);
  CHECK(hi > 0.99);

  for (int i = 0; i < 1000; ++i) {
    const double u = rng.uniform(-2.0, 5.0);
    CHECK(u >= -2.0);
    CHECK(u < 5.0);
  }
}

TEST_CASE("normal moments are sane") {
  RngStream rng(RngSeed{8, 0});
  const int n = 200000;
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    sum += z;
    sum_sq += z * z;
  }
  const double mean = sum / n;
  const double var = sum_sq / n - mean * mean;
  CHECK(std::abs(mean) < 0.01);
  CHECK(std::abs(var - 1.0) < 0.02);
}

TEST_CASE("algorithm tag is pinned for metadata") {
  CHECK(std::string(kRngAlgorithm).find("mt19937_64") != std::string::npos);
}

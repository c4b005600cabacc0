#pragma once

#include <string>

#include "lyalasso/rng.hpp"
#include "lyalasso/types.hpp"

namespace lyalasso {

// Centered observations, one per row.
struct Dataset {
  int n = 0;
  int p = 0;
  Matrix rows;  // n x p
};

// Diagonally dominant stable matrix: off-diagonal M_ij = w_ij * e_ij with
// w ~ Bernoulli(density) and e ~ N(0,1); diagonal
// M_ii = -sum_{j != i} |M_ij| - |e_ii|.  Strict dominance with a negative
// diagonal keeps every Gershgorin disc in the open left half-plane; the
// stability margin is still asserted and the draw repeated in the
// measure-zero event of failure.
Matrix sample_stable_dominant(int p, double density, RngStream& rng);
Matrix sample_stable_dominant(int p, double density, RngSeed seed);

struct UniformDraw {
  Matrix m;
  int tries = 0;  // total proposals including the accepted one
};

// Uniform distribution on the stable matrices with the given support:
// entries on the support i.i.d. Unif[-1,1], zero elsewhere, rejected until
// stable.  Throws NumericalError with the observed acceptance rate if
// max_tries proposals are all rejected.
UniformDraw sample_stable_uniform(const SupportSet& support, RngStream& rng,
                                  int max_tries = 1000000);
UniformDraw sample_stable_uniform(const SupportSet& support, RngSeed seed,
                                  int max_tries = 1000000);

enum class VolatilityScheme {
  kIdentity,      // 2 I_p
  kRandomDiag,    // diag(u), u_ii ~ Unif[0.5, 4]
  kRandomMinDiag, // diag(u), u_ii ~ Unif[2, 4]
  kRandomFull,    // dominant symmetric with random off-diagonal fill
};

// Names used by the command line: identity, random_diag, random_min_diag,
// random_full.
VolatilityScheme parse_volatility_scheme(const std::string& name);
std::string volatility_scheme_name(VolatilityScheme scheme);

// The four volatility choices.  random_full builds CT_ij = w_ij * e_ij with
// w ~ Bernoulli(2/p), symmetrizes the off-diagonal part as CT + CT', and sets
// C_ii = sum_{j != i} |C_ij| + |e_ii| + 0.5, which makes C strictly
// diagonally dominant and hence positive definite.
Matrix sample_volatility(VolatilityScheme scheme, int p, RngStream& rng);
Matrix sample_volatility(VolatilityScheme scheme, int p, RngSeed seed);

// n i.i.d. rows from N(0, sigma) via the Cholesky factor.  Throws
// NumericalError("non-PD covariance") if sigma has no Cholesky factor.
Dataset sample_gaussian(const Matrix& sigma, int n, RngStream& rng);
Dataset sample_gaussian(const Matrix& sigma, int n, RngSeed seed);

// (1/n) sum_i x_i x_i', with no mean-centering and no n-1 correction: the
// model assumes centered observations.
Matrix sample_covariance(const Dataset& data);

}  // namespace lyalasso

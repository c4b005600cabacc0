#pragma once

#include <cstdint>
#include <random>

namespace lyalasso {

// Seed plus stream index.  Equal (base_seed, stream_id) pairs reproduce
// draws bitwise; distinct stream_ids give statistically independent streams,
// which is how replications are parallelized.
struct RngSeed {
  std::uint64_t base_seed = 0;
  std::uint64_t stream_id = 0;
};

// Pinned in experiment metadata so outputs can be replayed exactly.
inline constexpr const char* kRngAlgorithm =
    "splitmix64(base_seed,stream_id)-seeded mt19937_64; "
    "uniform = 53-bit mantissa; normal = Marsaglia polar";

// All randomness in the library flows through this class.  The standard
// distributions are avoided on purpose: their algorithms are
// implementation-defined, while mt19937_64 itself and the two generators
// below are fully specified.
class RngStream {
 public:
  explicit RngStream(RngSeed seed);

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 random mantissa bits.
  double uniform();
  double uniform(double lo, double hi);

  // Standard normal via the Marsaglia polar method.
  double normal();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace lyalasso

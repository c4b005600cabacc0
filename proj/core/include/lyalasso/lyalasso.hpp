#pragma once

// Umbrella header pulling in the whole public interface.

#include "lyalasso/experiments.hpp"
#include "lyalasso/gram.hpp"
#include "lyalasso/graphs.hpp"
#include "lyalasso/io.hpp"
#include "lyalasso/irrep.hpp"
#include "lyalasso/lasso.hpp"
#include "lyalasso/likelihood.hpp"
#include "lyalasso/linalg.hpp"
#include "lyalasso/metrics.hpp"
#include "lyalasso/rng.hpp"
#include "lyalasso/simulate.hpp"
#include "lyalasso/types.hpp"

#pragma once

#include "latllt/asllt.hpp"
#include "latllt/bernoulli_part.hpp"
#include "latllt/convolve.hpp"
#include "latllt/correlation.hpp"
#include "latllt/error.hpp"
#include "latllt/lattice.hpp"
#include "latllt/llt.hpp"
#include "latllt/pmf_io.hpp"
#include "latllt/rng.hpp"
#include "latllt/tail_bounds.hpp"

namespace latllt {

inline constexpr const char* version = "0.1.0";

} // namespace latllt

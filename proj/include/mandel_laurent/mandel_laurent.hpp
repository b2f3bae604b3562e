#pragma once

// Umbrella header.

#include "combinatorics.hpp"
#include "dyadic.hpp"
#include "hypothesis_series.hpp"
#include "mandelbrot.hpp"
#include "order.hpp"
#include "parallel.hpp"
#include "reversion.hpp"
#include "serialization.hpp"
#include "series.hpp"
#include "verifier.hpp"

namespace ml {

inline constexpr const char *version = "1.0.0";

} // namespace ml
